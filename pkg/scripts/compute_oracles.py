#!/usr/bin/env python3
"""Print the reference values for the bundled case study.

Runs the independent implementations in tests/oracles.py over the raw case
study data and prints every value the unit tests freeze.  Re-run after any
change to the fixtures and re-paste the affected constants.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import oracles  # noqa: E402
from accord import casestudy  # noqa: E402


def show(label, values):
    if isinstance(values, (list, tuple)):
        body = ", ".join(repr(float(v)) for v in values)
        print(f"{label} = ({body})")
    else:
        print(f"{label} = {values!r}")


def main():
    directions = [1.0] * len(casestudy.CRITERIA)
    values = [list(row) for row in casestudy.PERFORMANCE]

    print("# promethee flows per decider (plus / minus / net), then ranking")
    rankings = []
    for k, (w, q, p) in enumerate(casestudy.PROMETHEE_RAW, start=1):
        plus, minus, net = oracles.outranking_flows_ref(values, directions, w, q, p)
        ranks = oracles.ranks_from_flows(plus, net)
        rankings.append(ranks)
        show(f"D{k}_PLUS", plus)
        show(f"D{k}_MINUS", minus)
        show(f"D{k}_NET", net)
        print(f"D{k}_RANKS = {tuple(ranks)}")
        print(f"# sum(net) = {sum(net)!r}")

    print("\n# preference index, decider 1, first two actions")
    w, q, p = casestudy.PROMETHEE_RAW[0]
    total = sum(w)
    for a, b in ((0, 1), (1, 0)):
        acc = 0.0
        for j in range(len(w)):
            d = values[a][j] - values[b][j]
            acc += w[j] * oracles.intensity_ref(d, q[j], p[j])
        print(f"PI_{a}_{b} = {acc / total!r}")

    print("\n# ahp per decider: criteria priorities, consistency ratio, scores, ranking")
    for k in range(4):
        crit = oracles.upper_to_full(casestudy.SAATY_CRITERIA_UPPER[k])
        cw = oracles.colnorm_priorities(crit)
        ew = oracles.power_priorities(crit)
        cr = oracles.consistency_ratio_ref(crit)
        scores = oracles.ahp_scores_ref(
            casestudy.SAATY_CRITERIA_UPPER[k], casestudy.SAATY_ACTION_UPPERS[k]
        )
        ranks = oracles.ranks_from_scores(scores)
        show(f"D{k + 1}_CRIT_PRIORITIES", cw)
        show(f"D{k + 1}_CRIT_EIGEN", ew)
        print(f"D{k + 1}_CRIT_CR = {cr!r}")
        print(f"D{k + 1}_CRIT_ARGSORT_MATCH = "
              f"{oracles.argsort_best_first(cw) == oracles.argsort_best_first(ew)}")
        show(f"D{k + 1}_AHP_SCORES", scores)
        print(f"D{k + 1}_AHP_RANKS = {tuple(ranks)}")
        for c in range(4):
            act = oracles.upper_to_full(casestudy.SAATY_ACTION_UPPERS[k][c])
            a_cn = oracles.argsort_best_first(oracles.colnorm_priorities(act))
            a_ev = oracles.argsort_best_first(oracles.power_priorities(act))
            print(f"#   action matrix {c}: argsort match = {a_cn == a_ev}")

    print("\n# negotiation scores over the four promethee rankings, weights (1,1,1,1)")
    weights = [1.0, 1.0, 1.0, 1.0]
    scores = oracles.weighted_rank_scores(rankings, weights)
    show("GROUP_SCORES", scores)
    order = sorted(range(len(scores)), key=lambda a: (scores[a], a))
    print(f"PROPOSAL_ORDER = {tuple(order)}")

    print("\n# full protocol at several thresholds")
    pids = ["p1", "p2", "p3", "p4"]
    for tau in (0.25, 0.5, 0.75, 1.0):
        text, kind, action, rounds = oracles.simulate(pids, weights, rankings, tau)
        label = casestudy.ACTION_LABELS[action]
        print(f"TAU={tau}: kind={kind} action={action} ({label}) rounds={rounds} "
              f"trace_lines={len(text.splitlines())}")

    print("\n# reversed-preferences hand case, n=3, tau=1")
    text, kind, action, rounds = oracles.simulate(
        ["p1", "p2"], [1.0, 1.0], [[1, 2, 3], [3, 2, 1]], 1.0
    )
    print(f"kind={kind} action={action} rounds={rounds}")
    print(text)


if __name__ == "__main__":
    main()
