"""Bundled case study: choosing a housing site among 18 candidate zones.

The data set is a real land-management evaluation grid (18 actions scored on
7 criteria) together with the subjective parameters of four decision makers:
PROMETHEE weights/thresholds for the full problem, and Saaty pairwise
judgments for a reduced 4-action / 4-criterion variant used with AHP.

All criteria are treated as maximize; the original data set does not state
directions, and this assumption is recorded here so that every derived value
in the test suite is unambiguous.
"""

from __future__ import annotations

from .ahp import SaatyJudgments, pairwise_from_upper
from .legacy import Identity, JudgmentFile, ThresholdFile, format_legacy_decider
from .matrix import PerformanceMatrix, build_matrix
from .promethee import PrometheeParams
from .protocol import ParticipantSpec

CRITERIA = ("NUISANCES", "BRUIT", "IMPACTS", "GEOTECHNIQ", "EQUIPEMENT", "ACCESSIBIL", "CLIMAT")

ACTION_LABELS = (
    "729", "732", "737", "740", "743", "745", "748",
    "1030", "1033", "1038", "1045", "1046",
    "1233", "1236", "1239", "1321", "1324", "1326",
)

# rows follow ACTION_LABELS, columns follow CRITERIA
PERFORMANCE = (
    (1.00, 0.99, 2.0, 6.0, 1867.0, 10.0, 0.68),
    (1.00, 0.98, 2.0, 6.0, 1957.0, 10.0, 0.71),
    (1.00, 0.97, 2.0, 6.0, 2047.0, 10.0, 0.70),
    (1.00, 0.97, 2.0, 6.0, 2147.0, 10.0, 0.69),
    (1.00, 0.93, 2.0, 6.0, 2233.0, 9.0, 0.67),
    (1.00, 0.96, 2.0, 6.0, 2185.0, 12.0, 0.84),
    (1.00, 0.67, 2.0, 6.0, 2220.0, 9.0, 0.68),
    (1.00, 0.15, 4.0, 6.0, 1832.0, 11.0, 0.71),
    (0.99, 0.55, 4.0, 6.0, 1906.0, 10.0, 0.74),
    (0.98, 0.27, 4.0, 6.0, 2037.0, 10.0, 0.75),
    (1.00, 0.96, 4.0, 6.0, 2232.0, 13.0, 0.86),
    (1.00, 0.69, 4.0, 6.0, 2186.0, 5.0, 0.78),
    (1.00, 0.62, 6.0, 3.0, 1911.0, 10.0, 0.70),
    (1.00, 1.00, 6.0, 3.0, 2070.0, 6.0, 0.85),
    (1.00, 1.00, 6.0, 3.0, 2142.0, 6.0, 0.85),
    (1.00, 0.98, 6.0, 6.0, 1648.0, 10.0, 0.84),
    (1.00, 0.98, 6.0, 6.0, 1756.0, 10.0, 0.68),
    (1.00, 0.98, 6.0, 6.0, 1821.0, 10.0, 0.83),
)

DECIDER_IDS = ("decideur1", "decideur2", "decideur3", "decideur4")

# per decider: (weights, indifference thresholds, preference thresholds),
# one value per criterion.  decideur1 scores IMPACTS with q = p = 0, i.e. a
# strict step: any positive difference is full preference.
PROMETHEE_RAW = (
    (
        (7.51, 13.63, 13.63, 13.63, 17.2, 17.2, 17.2),
        (0.3, 0.3, 0.0, 55.0, 5.0, 0.3, 0.3),
        (0.6, 0.6, 0.0, 110.0, 10.0, 0.6, 0.6),
    ),
    (
        (4.51, 7.08, 17.31, 18.63, 18.93, 17.52, 15.27),
        (0.35, 0.35, 0.3, 5.0, 4.0, 0.5, 0.35),
        (0.7, 0.7, 0.6, 110.0, 8.0, 1.0, 0.7),
    ),
    (
        (6.15, 19.57, 13.79, 13.79, 13.79, 16.45, 16.45),
        (0.2, 0.2, 0.1, 30.0, 2.0, 0.15, 0.2),
        (0.4, 0.4, 0.2, 60.0, 4.0, 0.6, 0.4),
    ),
    (
        (17.38, 29.4, 6.16, 6.16, 6.16, 17.38, 17.38),
        (0.25, 0.3, 0.15, 45.0, 3.0, 0.25, 0.25),
        (0.5, 0.6, 0.3, 90.0, 6.0, 0.5, 0.5),
    ),
)

# The AHP variant of the problem keeps only the first 4 actions and the
# first 4 criteria; each decider supplied one criteria-vs-criteria matrix
# and one action-vs-action matrix per kept criterion.  Matrices are stored
# as row-major upper triangles (a01 a02 a03 a12 a13 a23); the lower
# triangle is reconstructed by exact reciprocity, which is how the source
# files store them and avoids the rounded reciprocals of the printed grids.
AHP_ACTION_COUNT = 4
AHP_CRITERIA_COUNT = 4

SAATY_CRITERIA_UPPER = (
    (0.33, 0.14, 0.14, 0.33, 5.0, 3.0),
    (5.0, 0.14, 3.0, 0.11, 5.0, 0.14),
    (0.33, 7.0, 5.0, 3.0, 5.0, 9.0),
    (0.33, 7.0, 5.0, 7.0, 5.0, 0.2),
)

SAATY_ACTION_UPPERS = (
    (
        (7.0, 7.0, 0.33, 7.0, 5.0, 0.33),
        (7.0, 3.0, 7.0, 3.0, 5.0, 5.0),
        (0.14, 0.2, 0.11, 7.0, 9.0, 5.0),
        (5.0, 1.0, 3.0, 7.0, 0.33, 0.11),
    ),
    (
        (0.2, 0.11, 9.0, 0.33, 5.0, 9.0),
        (5.0, 3.0, 7.0, 3.0, 0.14, 0.14),
        (0.2, 7.0, 0.11, 7.0, 0.33, 5.0),
        (5.0, 1.0, 3.0, 7.0, 7.0, 0.11),
    ),
    (
        (0.11, 0.11, 0.2, 0.2, 5.0, 9.0),
        (0.2, 0.2, 7.0, 3.0, 0.14, 0.11),
        (3.0, 5.0, 0.11, 0.14, 0.33, 0.2),
        (5.0, 7.0, 5.0, 0.11, 9.0, 0.11),
    ),
    (
        (0.11, 3.0, 0.2, 7.0, 0.14, 9.0),
        (3.0, 0.2, 7.0, 7.0, 5.0, 0.11),
        (3.0, 5.0, 0.11, 0.14, 0.14, 0.2),
        (0.33, 0.33, 5.0, 0.33, 9.0, 0.11),
    ),
)


def performance_matrix() -> PerformanceMatrix:
    return build_matrix(ACTION_LABELS, [(name, "max") for name in CRITERIA], PERFORMANCE)


def ahp_matrix() -> PerformanceMatrix:
    """The reduced grid the pairwise judgments were given for."""
    labels = ACTION_LABELS[:AHP_ACTION_COUNT]
    criteria = [(name, "max") for name in CRITERIA[:AHP_CRITERIA_COUNT]]
    rows = [row[:AHP_CRITERIA_COUNT] for row in PERFORMANCE[:AHP_ACTION_COUNT]]
    return build_matrix(labels, criteria, rows)


def promethee_params(decider: int) -> PrometheeParams:
    weights, indifference, preference = PROMETHEE_RAW[decider]
    return PrometheeParams(weights, indifference, preference)


def saaty_judgments(decider: int) -> SaatyJudgments:
    criteria = pairwise_from_upper(SAATY_CRITERIA_UPPER[decider])
    actions = tuple(pairwise_from_upper(u) for u in SAATY_ACTION_UPPERS[decider])
    return SaatyJudgments(criteria, actions)


def identity(decider: int) -> Identity:
    return Identity(DECIDER_IDS[decider], "-", "-")


def promethee_specs() -> list[ParticipantSpec]:
    return [
        ParticipantSpec(f"p{k + 1}", 1.0, promethee=promethee_params(k)) for k in range(4)
    ]


def ahp_specs() -> list[ParticipantSpec]:
    return [ParticipantSpec(f"p{k + 1}", 1.0, saaty=saaty_judgments(k)) for k in range(4)]


def legacy_threshold_text(decider: int) -> str:
    weights, indifference, preference = PROMETHEE_RAW[decider]
    return format_legacy_decider(
        identity(decider), ThresholdFile(weights, indifference, preference)
    )


def legacy_judgment_text(decider: int) -> str:
    return format_legacy_decider(
        identity(decider),
        JudgmentFile(SAATY_CRITERIA_UPPER[decider], SAATY_ACTION_UPPERS[decider]),
    )
