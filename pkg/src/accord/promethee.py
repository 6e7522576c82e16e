"""Outranking flows (PROMETHEE II).

Per criterion the preference intensity of ``a`` over ``b`` is a linear ramp
on the direction-adjusted difference d:

    p(d) = 0             if d <= q
    p(d) = (d-q)/(p-q)   if q < d <= p
    p(d) = 1             otherwise

The pairwise index pi(a, b) averages intensities with the criterion weights;
positive/negative flows sum the index over every other action (raw sums, no
1/(n-1) scaling), and actions are ordered by descending net flow.

q = p = 0 denotes the degenerate ramp: a strict step that grants full
preference to any positive difference.  It is accepted (the bundled case
study uses it) but logged, since it usually indicates a file written with
thresholds swapped.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .errors import ThresholdOrderViolation, ValidationFailed
from .matrix import Direction, PerformanceMatrix
from .ranking import RankingVector, rank_by

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrometheeParams:
    """Per-criterion weight plus indifference/preference thresholds."""

    weights: tuple[float, ...]
    indifference: tuple[float, ...]
    preference: tuple[float, ...]

    def __post_init__(self):
        if not (len(self.weights) == len(self.indifference) == len(self.preference)):
            raise ValidationFailed("weights, indifference and preference must align")
        if not self.weights:
            raise ValidationFailed("at least one criterion required")
        for j, w in enumerate(self.weights):
            if not w > 0.0:
                raise ValidationFailed(f"criterion {j}: weight must be positive, got {w}")
        for j, (q, p) in enumerate(zip(self.indifference, self.preference)):
            if q == 0.0 and p == 0.0:
                log.warning("criterion %d: q = p = 0, using a strict step preference", j)
                continue
            if not 0.0 <= q < p:
                raise ThresholdOrderViolation(
                    f"criterion {j}: need 0 <= q < p, got q={q}, p={p}"
                )

    @property
    def n_criteria(self) -> int:
        return len(self.weights)


def preference(d: float, q: float, p: float) -> float:
    """Preference intensity in [0, 1] for a direction-adjusted difference."""
    if q == 0.0 and p == 0.0:
        return 1.0 if d > 0.0 else 0.0
    if q >= p:
        raise ThresholdOrderViolation(f"need q < p, got q={q}, p={p}")
    if d <= q:
        return 0.0
    if d <= p:
        return (d - q) / (p - q)
    return 1.0


def preference_index(a: int, b: int, matrix: PerformanceMatrix, params: PrometheeParams) -> float:
    """Weighted mean preference intensity of action ``a`` over ``b``."""
    if a == b:
        raise ValidationFailed("preference index needs two distinct actions")
    _check_dims(matrix, params)
    total = sum(params.weights)
    acc = 0.0
    for j, crit in enumerate(matrix.criteria):
        d = matrix.value(a, j) - matrix.value(b, j)
        if crit.direction is Direction.MINIMIZE:
            d = -d
        acc += params.weights[j] * preference(d, params.indifference[j], params.preference[j])
    return acc / total


@dataclass(frozen=True)
class FlowTable:
    plus: tuple[float, ...]
    minus: tuple[float, ...]
    net: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.net)


def flows(matrix: PerformanceMatrix, params: PrometheeParams) -> FlowTable:
    """Positive, negative and net outranking flows for every action."""
    _check_dims(matrix, params)
    n = matrix.n_actions
    index = [[0.0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if a != b:
                index[a][b] = preference_index(a, b, matrix, params)
    plus = tuple(sum(index[a][x] for x in range(n) if x != a) for a in range(n))
    minus = tuple(sum(index[x][a] for x in range(n) if x != a) for a in range(n))
    net = tuple(plus[a] - minus[a] for a in range(n))
    return FlowTable(plus, minus, net)


def net_flow_ranking(table: FlowTable) -> RankingVector:
    """Descending net flow; ties fall to the higher positive flow, then lower index."""
    return rank_by(len(table), key=lambda a: (-table.net[a], -table.plus[a], a))


def _check_dims(matrix: PerformanceMatrix, params: PrometheeParams):
    if params.n_criteria != matrix.n_criteria:
        raise ValidationFailed(
            f"params cover {params.n_criteria} criteria, matrix has {matrix.n_criteria}"
        )
