"""Command-line front door.

Subcommands: ``rank`` (one decider, one method), ``negotiate`` (full
protocol over a session bundle), ``demo`` (replay the bundled case study),
``serve`` (HTTP service) and ``import-legacy`` (convert old decider files).
Exit codes: 0 on success, 1 on validation errors, 2 on I/O errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import casestudy, service, store
from .ahp import SaatyJudgments, ahp_scores, consistency_ratio, pairwise_from_upper
from .errors import DecisionError, MethodMismatch, ParamDimensionMismatch, ValidationFailed
from .legacy import Identity, JudgmentFile, ThresholdFile, parse_legacy_decider
from .promethee import PrometheeParams, flows, net_flow_ranking
from .protocol import (
    MethodPolicy,
    NegotiationConfig,
    collect_rankings,
    run_negotiation,
    serialize_trace,
)
from .ranking import rank_by
from .textdoc import fmt_nums, parse_matrix_lines, parse_matrix_text, split_sections

DEFAULT_PORT = 8787
DATA_DIR_ENV = "ACCORD_DATA_DIR"


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except DecisionError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        name = exc.filename or ""
        print(f"i/o error: {name}: {exc.strerror or exc}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="accord", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_rank = sub.add_parser("rank", help="rank actions for one decider")
    p_rank.add_argument("--method", choices=["ahp", "promethee"], required=True)
    p_rank.add_argument("--matrix", required=True, help="performance-matrix file")
    p_rank.add_argument("--params", required=True, help="decider parameter file (legacy format)")
    p_rank.add_argument("--out", help="also write the table to this path")
    p_rank.set_defaults(handler=cmd_rank)

    p_neg = sub.add_parser("negotiate", help="run the protocol over a session bundle")
    p_neg.add_argument("--session", required=True, help="bundle file: config, matrix, participants")
    p_neg.add_argument("--threshold", type=float, help="override the bundle threshold")
    p_neg.add_argument("--method", choices=[m.value for m in MethodPolicy],
                       help="override the bundle method policy")
    p_neg.add_argument("--trace", help="write the serialized trace to this path")
    p_neg.set_defaults(handler=cmd_negotiate)

    p_demo = sub.add_parser("demo", help="replay the bundled case study end to end")
    p_demo.set_defaults(handler=cmd_demo)

    p_serve = sub.add_parser("serve", help="run the HTTP session service")
    p_serve.add_argument("--port", type=int, default=DEFAULT_PORT)
    p_serve.add_argument("--data-dir", default=None,
                         help=f"session directory (default ./accord-data or ${DATA_DIR_ENV})")
    p_serve.set_defaults(handler=cmd_serve)

    p_imp = sub.add_parser("import-legacy", help="convert legacy decider files")
    p_imp.add_argument("paths", nargs="+", metavar="PATH")
    p_imp.add_argument("--out-dir", help="write .participant files here instead of stdout")
    p_imp.set_defaults(handler=cmd_import_legacy)
    return parser


# ---------------------------------------------------------------------------
# rank


def cmd_rank(args) -> int:
    matrix = parse_matrix_text(Path(args.matrix).read_text(encoding="utf-8"))
    _, params = parse_legacy_decider(Path(args.params).read_text(encoding="utf-8"))
    if args.method == "promethee":
        if not isinstance(params, ThresholdFile):
            raise MethodMismatch(f"{args.params} holds pairwise judgments, not thresholds")
        text = _promethee_report(matrix, PrometheeParams(
            params.weights, params.indifference, params.preference))
    else:
        if not isinstance(params, JudgmentFile):
            raise MethodMismatch(f"{args.params} holds thresholds, not pairwise judgments")
        judgments = SaatyJudgments(
            pairwise_from_upper(params.criteria_upper),
            tuple(pairwise_from_upper(u) for u in params.action_uppers),
        )
        if judgments.n_criteria != matrix.n_criteria or judgments.n_actions != matrix.n_actions:
            raise ParamDimensionMismatch(
                f"judgments are {judgments.n_criteria} criteria x {judgments.n_actions} actions, "
                f"matrix is {matrix.n_criteria} x {matrix.n_actions}"
            )
        text = _ahp_report(matrix, judgments)
    print(text, end="")
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    return 0


def _fmt6(x: float) -> str:
    return format(x, ".6g")


def _table(headers, rows) -> str:
    cells = [list(headers)] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    out = []
    for row in cells:
        first = row[0].ljust(widths[0])
        rest = [row[i].rjust(widths[i]) for i in range(1, len(row))]
        out.append("  ".join([first] + rest).rstrip())
    return "\n".join(out) + "\n"


def _promethee_report(matrix, params) -> str:
    table = flows(matrix, params)
    ranking = net_flow_ranking(table)
    rows = [
        (
            matrix.label_of(a),
            _fmt6(table.plus[a]),
            _fmt6(table.minus[a]),
            _fmt6(table.net[a]),
            ranking.rank_of(a),
        )
        for a in ranking.best_first()
    ]
    return _table(("action", "phi+", "phi-", "phi", "rank"), rows)


def _ahp_report(matrix, judgments) -> str:
    scores = ahp_scores(judgments)
    ranking = rank_by(len(scores), key=lambda a: (-scores[a], a))
    rows = [
        (matrix.label_of(a), _fmt6(scores[a]), ranking.rank_of(a)) for a in ranking.best_first()
    ]
    cr = consistency_ratio(judgments.criteria)
    return _table(("action", "score", "rank"), rows) + (
        f"consistency ratio (criteria matrix, diagnostic): {_fmt6(cr)}\n"
    )


# ---------------------------------------------------------------------------
# negotiate


def _parse_bundle(text: str):
    _, sections = split_sections(text)
    matrix = None
    config = None
    participants = []
    for name, lines in sections:
        if name == "matrix":
            matrix = parse_matrix_lines(lines)
        elif name == "config":
            config = store.parse_config_lines(lines)
        elif name == "participant":
            pid = None
            if not any(line.split(":")[0].strip() == "id" for line in lines):
                pid = f"p{len(participants) + 1}"
            participants.append(store.parse_participant_lines(lines, pid=pid))
    if matrix is None:
        raise ValidationFailed("bundle: missing [matrix] section")
    if not participants:
        raise ValidationFailed("bundle: needs at least one [participant] section")
    return matrix, config, participants


def cmd_negotiate(args) -> int:
    text = Path(args.session).read_text(encoding="utf-8")
    matrix, config, participants = _parse_bundle(text)
    threshold = args.threshold if args.threshold is not None else (
        config.threshold if config is not None else None)
    if threshold is None:
        raise ValidationFailed("no threshold: pass --threshold or add a [config] section")
    method = MethodPolicy(args.method) if args.method else (
        config.method if config is not None else MethodPolicy.AUTO)
    max_rounds = config.max_rounds if config is not None else None
    config = NegotiationConfig(threshold, method, max_rounds)

    states = collect_rankings(matrix, [p.spec() for p in participants], config)
    outcome = run_negotiation(matrix, states, config)
    print("\n".join(store.outcome_lines(matrix, outcome)))
    if args.trace:
        Path(args.trace).write_text(serialize_trace(outcome.trace), encoding="utf-8")
    return 0


# ---------------------------------------------------------------------------
# demo


def cmd_demo(args) -> int:
    print("habitat-site case study: 18 actions x 7 criteria, 4 deciders")
    print("all criteria are treated as maximize (the data set states no directions)")
    print()

    matrix = casestudy.performance_matrix()
    config = NegotiationConfig(0.5, MethodPolicy.PROMETHEE)
    specs = casestudy.promethee_specs()
    print("=== promethee pipeline (threshold 0.5) ===")
    for spec in specs:
        print(f"\ndecider {spec.id} (weight {_fmt6(spec.weight)}):")
        print(_promethee_report(matrix, spec.promethee), end="")
    _demo_negotiation(matrix, specs, config)

    sub = casestudy.ahp_matrix()
    config = NegotiationConfig(0.5, MethodPolicy.AHP)
    specs = casestudy.ahp_specs()
    print()
    print("=== ahp pipeline (first 4 actions, first 4 criteria, threshold 0.5) ===")
    for spec in specs:
        print(f"\ndecider {spec.id} (weight {_fmt6(spec.weight)}):")
        print(_ahp_report(sub, spec.saaty), end="")
    _demo_negotiation(sub, specs, config)
    return 0


def _demo_negotiation(matrix, specs, config):
    states = collect_rankings(matrix, specs, config)
    outcome = run_negotiation(matrix, states, config)
    print("\n--- negotiation trace ---")
    print(serialize_trace(outcome.trace), end="")
    print("--- result ---")
    print("\n".join(store.outcome_lines(matrix, outcome)))


# ---------------------------------------------------------------------------
# serve / import


def cmd_serve(args) -> int:
    data_dir = args.data_dir or os.environ.get(DATA_DIR_ENV) or "./accord-data"
    service.serve(data_dir, args.port)
    return 0


def _participant_doc(identity: Identity, params) -> str:
    lines = [
        f"name: {identity.name}",
        f"surname: {identity.surname}",
        f"profile: {identity.profile}",
        "weight: 1.0",
    ]
    if isinstance(params, ThresholdFile):
        lines.append(f"promethee-weights: {fmt_nums(params.weights)}")
        lines.append(f"promethee-indifference: {fmt_nums(params.indifference)}")
        lines.append(f"promethee-preference: {fmt_nums(params.preference)}")
    else:
        lines.append(f"saaty-criteria: {fmt_nums(params.criteria_upper)}")
        for k, upper in enumerate(params.action_uppers, start=1):
            lines.append(f"saaty-action-{k}: {fmt_nums(upper)}")
    return "\n".join(lines) + "\n"


def cmd_import_legacy(args) -> int:
    for path in args.paths:
        raw = Path(path).read_text(encoding="utf-8")
        identity, params = parse_legacy_decider(raw)
        doc = _participant_doc(identity, params)
        if args.out_dir:
            out_dir = Path(args.out_dir)
            out_dir.mkdir(parents=True, exist_ok=True)
            target = out_dir / (Path(path).stem + ".participant")
            target.write_text(doc, encoding="utf-8")
            print(f"wrote {target}")
        else:
            print(f"# from {path}")
            print(doc, end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())
