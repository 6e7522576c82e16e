"""Importers for the original line-oriented decider files.

Both shapes start with three identity lines (name, surname, profile) and
continue with labeled parameter lines:

* pairwise-judgment files: a ``Saaty_Critères`` line holding the row-major
  upper triangle of the criteria matrix, then one ``Saaty_ActionN`` line per
  criterion with the upper triangle of that criterion's action matrix;
* threshold files: ``Préférence`` (preference thresholds), ``Indéférence``
  (indifference thresholds) and ``Poids`` (criterion weights), one value per
  criterion.

Labels are trusted over line positions: files in the wild sometimes carry
the weights on the ``Préférence`` line, and mapping by label makes the
mistake visible immediately, as the importer warns whenever an indifference
threshold reaches its preference threshold.  Parsing never enforces the
full parameter invariants; registration does.
"""

from __future__ import annotations

import logging
import unicodedata
from dataclasses import dataclass
from typing import Union

from .errors import MalformedLine, TokenCountMismatch, UnknownShape, ValidationFailed
from .textdoc import fmt_nums, parse_floats


def _floats_on_line(rest: str, label: str, lineno: int) -> tuple[float, ...]:
    try:
        return tuple(parse_floats(rest, label))
    except ValidationFailed as exc:
        raise MalformedLine(lineno, str(exc)) from None

log = logging.getLogger(__name__)

CRITERIA_LABEL = "Saaty_Critères"
ACTION_LABEL = "Saaty_Action"
PREFERENCE_LABEL = "Préférence"
INDIFFERENCE_LABEL = "Indéférence"
WEIGHTS_LABEL = "Poids"

_PREFERENCE_KEYS = {"preference"}
_INDIFFERENCE_KEYS = {"indeference", "indifference"}
_WEIGHT_KEYS = {"poids"}


def _fold(label: str) -> str:
    decomposed = unicodedata.normalize("NFKD", label.lower())
    return "".join(c for c in decomposed if not unicodedata.combining(c))


@dataclass(frozen=True)
class Identity:
    name: str
    surname: str
    profile: str


@dataclass(frozen=True)
class ThresholdFile:
    """Raw threshold-file payload, exactly as parsed."""

    weights: tuple[float, ...]
    indifference: tuple[float, ...]
    preference: tuple[float, ...]


@dataclass(frozen=True)
class JudgmentFile:
    """Raw judgment-file payload: upper triangles in file order."""

    criteria_upper: tuple[float, ...]
    action_uppers: tuple[tuple[float, ...], ...]


LegacyParams = Union[ThresholdFile, JudgmentFile]


def parse_legacy_decider(text: str) -> tuple[Identity, LegacyParams]:
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    for lineno in (1, 2, 3):
        if len(lines) < lineno or ":" in lines[lineno - 1] or _looks_labeled(lines[lineno - 1]):
            raise MalformedLine(lineno, f"identity line {lineno} is missing or malformed")
    identity = Identity(lines[0], lines[1], lines[2])
    body = lines[3:]
    if not body:
        raise UnknownShape("no parameter lines after the identity header")
    first_label = _fold(body[0].split()[0])
    if first_label.startswith("saaty_"):
        return identity, _parse_judgments(body)
    if first_label in _PREFERENCE_KEYS | _INDIFFERENCE_KEYS | _WEIGHT_KEYS:
        return identity, _parse_thresholds(body)
    raise UnknownShape(f"unrecognized parameter label {body[0].split()[0]!r}")


def _looks_labeled(line: str) -> bool:
    head = _fold(line.split()[0])
    return head.startswith("saaty_") or head in _PREFERENCE_KEYS | _INDIFFERENCE_KEYS | _WEIGHT_KEYS


def _parse_thresholds(body) -> ThresholdFile:
    rows: dict[str, tuple[float, ...]] = {}
    for offset, line in enumerate(body):
        label, _, rest = line.partition(" ")
        key = _fold(label)
        if key in _PREFERENCE_KEYS:
            slot = "preference"
        elif key in _INDIFFERENCE_KEYS:
            slot = "indifference"
        elif key in _WEIGHT_KEYS:
            slot = "weights"
        else:
            raise MalformedLine(4 + offset, f"unexpected label {label!r}")
        if slot in rows:
            raise MalformedLine(4 + offset, f"duplicate {label!r} line")
        rows[slot] = _floats_on_line(rest, label, 4 + offset)
    missing = {"preference", "indifference", "weights"} - rows.keys()
    if missing:
        raise UnknownShape(f"threshold file lacks lines for: {', '.join(sorted(missing))}")
    counts = {len(v) for v in rows.values()}
    if len(counts) != 1:
        raise TokenCountMismatch(f"threshold lines disagree on criterion count: {sorted(counts)}")
    parsed = ThresholdFile(rows["weights"], rows["indifference"], rows["preference"])
    for j, (q, p) in enumerate(zip(parsed.indifference, parsed.preference)):
        if q >= p and not (q == 0.0 and p == 0.0):
            log.warning(
                "criterion %d: indifference %s >= preference %s; "
                "the file may have its lines mislabeled", j, q, p)
    return parsed


def _triangle_order(count: int) -> int:
    n = 2
    while n * (n - 1) // 2 < count:
        n += 1
    if n * (n - 1) // 2 != count:
        raise TokenCountMismatch(f"{count} values do not form an upper triangle")
    return n


def _parse_judgments(body) -> JudgmentFile:
    label, _, rest = body[0].partition(" ")
    if not _fold(label).startswith("saaty_crit"):
        raise UnknownShape(f"judgment file must start with {CRITERIA_LABEL!r}, got {label!r}")
    criteria_upper = _floats_on_line(rest, label, 4)
    n_criteria = _triangle_order(len(criteria_upper))
    action_uppers = []
    for offset, line in enumerate(body[1:]):
        label, _, rest = line.partition(" ")
        folded = _fold(label)
        expected = f"saaty_action{offset + 1}"
        if folded != expected:
            raise MalformedLine(5 + offset, f"expected {ACTION_LABEL}{offset + 1}, got {label!r}")
        action_uppers.append(_floats_on_line(rest, label, 5 + offset))
    if len(action_uppers) != n_criteria:
        raise TokenCountMismatch(
            f"{n_criteria} criteria need {n_criteria} action-judgment lines, "
            f"got {len(action_uppers)}"
        )
    sizes = {len(u) for u in action_uppers}
    if len(sizes) != 1:
        raise TokenCountMismatch(f"action-judgment lines disagree in size: {sorted(sizes)}")
    _triangle_order(next(iter(sizes)))
    return JudgmentFile(criteria_upper, tuple(action_uppers))


def format_legacy_decider(identity: Identity, params: LegacyParams) -> str:
    """Inverse of :func:`parse_legacy_decider`."""
    lines = [identity.name, identity.surname, identity.profile]
    if isinstance(params, ThresholdFile):
        lines.append(f"{PREFERENCE_LABEL} {fmt_nums(params.preference)}")
        lines.append(f"{INDIFFERENCE_LABEL} {fmt_nums(params.indifference)}")
        lines.append(f"{WEIGHTS_LABEL} {fmt_nums(params.weights)}")
    else:
        lines.append(f"{CRITERIA_LABEL} {fmt_nums(params.criteria_upper)}")
        for k, upper in enumerate(params.action_uppers, start=1):
            lines.append(f"{ACTION_LABEL}{k} {fmt_nums(upper)}")
    return "\n".join(lines) + "\n"
