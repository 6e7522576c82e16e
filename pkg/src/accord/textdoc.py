"""Line-oriented document helpers.

Sessions, participants, rankings and results all travel as plain-text
documents: ``key: value`` lines grouped under ``[section]`` headers, numeric
rows as whitespace- or comma-separated tokens, ``#`` for comments.  Numbers
are written with ``repr`` so a store/load round trip is exact.
"""

from __future__ import annotations

from .errors import ValidationFailed
from .matrix import Direction, PerformanceMatrix, build_matrix


def fmt_num(x: float) -> str:
    return repr(float(x))


def fmt_nums(xs) -> str:
    return " ".join(fmt_num(x) for x in xs)


def tokens(line: str) -> list[str]:
    return line.replace(",", " ").split()


def parse_floats(line: str, context: str) -> list[float]:
    out = []
    for tok in tokens(line):
        try:
            out.append(float(tok))
        except ValueError:
            raise ValidationFailed(f"{context}: {tok!r} is not a number") from None
    return out


def content_lines(text: str) -> list[str]:
    """Strip comments and blanks, keep everything else verbatim."""
    kept = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            kept.append(stripped)
    return kept


def split_sections(text: str) -> tuple[list[str], list[tuple[str, list[str]]]]:
    """Split a document into preamble lines and named sections, in order."""
    preamble: list[str] = []
    sections: list[tuple[str, list[str]]] = []
    current = preamble
    for line in content_lines(text):
        if line.startswith("[") and line.endswith("]"):
            sections.append((line[1:-1], []))
            current = sections[-1][1]
        else:
            current.append(line)
    return preamble, sections


def parse_kv(lines, context: str) -> dict[str, str]:
    out = {}
    for line in lines:
        if ":" not in line:
            raise ValidationFailed(f"{context}: expected 'key: value', got {line!r}")
        key, _, value = line.partition(":")
        out[key.strip()] = value.strip()
    return out


# ---------------------------------------------------------------------------
# performance-matrix format: a header of NAME:max|min tokens, then one row
# per action starting with its label


def matrix_lines(matrix: PerformanceMatrix) -> list[str]:
    header = " ".join(f"{c.name}:{c.direction.value}" for c in matrix.criteria)
    lines = [header]
    for action, row in zip(matrix.actions, matrix.values):
        lines.append(f"{action.label} {fmt_nums(row)}")
    return lines


def parse_matrix_lines(lines) -> PerformanceMatrix:
    if not lines:
        raise ValidationFailed("matrix: empty document")
    criteria = []
    for tok in tokens(lines[0]):
        name, sep, direction = tok.partition(":")
        if not sep or direction not in (Direction.MAXIMIZE.value, Direction.MINIMIZE.value):
            raise ValidationFailed(
                f"matrix header: criterion {tok!r} needs an explicit :max or :min suffix"
            )
        criteria.append((name, direction))
    labels, rows = [], []
    for line in lines[1:]:
        parts = tokens(line)
        if len(parts) != len(criteria) + 1:
            raise ValidationFailed(
                f"matrix row {parts[0] if parts else '?'}: expected a label and "
                f"{len(criteria)} values"
            )
        labels.append(parts[0])
        rows.append(parse_floats(" ".join(parts[1:]), f"matrix row {parts[0]}"))
    return build_matrix(labels, criteria, rows)


def parse_matrix_text(text: str) -> PerformanceMatrix:
    return parse_matrix_lines(content_lines(text))
