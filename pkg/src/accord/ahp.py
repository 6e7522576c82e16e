"""Pairwise-comparison ranking (AHP).

Judgments come in as reciprocal Saaty matrices: criteria are compared
against each other, and actions are compared per criterion.  Priorities are
derived by column normalization (each column scaled to sum 1, then averaged
across columns per row); a power-iteration eigenvector and a consistency
ratio are available as diagnostics.

Ingest is tolerant of the rounded reciprocals found in hand-written tables
(0.14 for 1/7, 0.11 for 1/9): a raw grid is accepted when every pair
multiplies to 1 within 5%, and the canonical form keeps the upper triangle
verbatim while rebuilding the lower triangle as exact reciprocals.  The same
5% slack applies at the 1/9 and 9 scale bounds, since a stored 0.11 is
slightly below 1/9 and its exact reciprocal slightly above 9.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    NonPositiveEntry,
    NonSquare,
    OrderOutOfRange,
    OutOfSaatyRange,
    ReciprocityViolation,
    ValidationFailed,
)
from .ranking import RankingVector, rank_by

RECIPROCITY_TOLERANCE = 0.05
SAATY_LOW = (1.0 / 9.0) * (1.0 - RECIPROCITY_TOLERANCE)
SAATY_HIGH = 9.0 * (1.0 + RECIPROCITY_TOLERANCE)

#: Saaty's random inconsistency indices, orders 2..10.
RANDOM_INDEX = {2: 0.0, 3: 0.58, 4: 0.90, 5: 1.12, 6: 1.24, 7: 1.32, 8: 1.41, 9: 1.45, 10: 1.49}


@dataclass(frozen=True)
class PairwiseMatrix:
    """Canonical reciprocal comparison matrix.

    Diagonal is exactly 1 and ``entries[j][i] == 1 / entries[i][j]`` bit for
    bit; build instances through :func:`canonicalize_pairwise` or
    :func:`pairwise_from_upper`.
    """

    entries: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n < 2 or any(len(row) != n for row in self.entries):
            raise NonSquare("pairwise matrix must be square with order >= 2")
        for i in range(n):
            if self.entries[i][i] != 1.0:
                raise ValidationFailed("canonical diagonal must be exactly 1")
            for j in range(i + 1, n):
                if self.entries[j][i] != 1.0 / self.entries[i][j]:
                    raise ValidationFailed("canonical lower triangle must mirror the upper")

    @property
    def order(self) -> int:
        return len(self.entries)

    def upper_triangle(self) -> tuple[float, ...]:
        n = self.order
        return tuple(self.entries[i][j] for i in range(n) for j in range(i + 1, n))


@dataclass(frozen=True)
class PriorityVector:
    weights: tuple[float, ...]

    def __post_init__(self):
        if any(w < 0.0 for w in self.weights):
            raise ValidationFailed("priorities must be non-negative")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise ValidationFailed("priorities must sum to 1")

    def __len__(self) -> int:
        return len(self.weights)


def canonicalize_pairwise(raw) -> PairwiseMatrix:
    """Validate a raw comparison grid and rebuild its canonical form.

    Checks, in order: squareness, strict positivity, Saaty range on the
    upper triangle, and pair products within 5% of 1 (the worst offending
    pair is reported).  The result keeps the raw upper triangle and derives
    diagonal and lower triangle from it.
    """
    rows = [list(map(float, row)) for row in raw]
    n = len(rows)
    if n < 2 or any(len(row) != n for row in rows):
        raise NonSquare(f"expected a square grid of order >= 2, got {n} rows")
    for i in range(n):
        for j in range(n):
            if not rows[i][j] > 0.0:
                raise NonPositiveEntry(f"entry [{i}][{j}] = {rows[i][j]} is not positive")
    for i in range(n):
        for j in range(i + 1, n):
            v = rows[i][j]
            if not (SAATY_LOW <= v <= SAATY_HIGH):
                raise OutOfSaatyRange(f"entry [{i}][{j}] = {v} outside [1/9, 9]")
    worst = None
    for i in range(n):
        for j in range(i, n):
            drift = abs(rows[i][j] * rows[j][i] - 1.0)
            if worst is None or drift > worst[0]:
                worst = (drift, i, j)
    if worst[0] > RECIPROCITY_TOLERANCE:
        _, i, j = worst
        raise ReciprocityViolation(
            f"entries [{i}][{j}]={rows[i][j]} and [{j}][{i}]={rows[j][i]} "
            f"multiply to {rows[i][j] * rows[j][i]:.4f}, outside 1 +/- {RECIPROCITY_TOLERANCE}"
        )
    return pairwise_from_upper(tuple(rows[i][j] for i in range(n) for j in range(i + 1, n)))


def pairwise_from_upper(upper) -> PairwiseMatrix:
    """Build the canonical matrix from a row-major upper triangle."""
    upper = tuple(float(v) for v in upper)
    count = len(upper)
    n = 2
    while n * (n - 1) // 2 < count:
        n += 1
    if n * (n - 1) // 2 != count:
        raise ValidationFailed(f"{count} values do not form an upper triangle")
    for v in upper:
        if not v > 0.0:
            raise NonPositiveEntry(f"upper-triangle value {v} is not positive")
        if not (SAATY_LOW <= v <= SAATY_HIGH):
            raise OutOfSaatyRange(f"upper-triangle value {v} outside [1/9, 9]")
    grid = [[1.0] * n for _ in range(n)]
    it = iter(upper)
    for i in range(n):
        for j in range(i + 1, n):
            v = next(it)
            grid[i][j] = v
            grid[j][i] = 1.0 / v
    return PairwiseMatrix(tuple(tuple(row) for row in grid))


def ahp_priorities(m: PairwiseMatrix) -> PriorityVector:
    """Column-normalized row averages (the definitive priority method)."""
    n = m.order
    col_sums = [sum(m.entries[i][j] for i in range(n)) for j in range(n)]
    weights = tuple(
        sum(m.entries[i][j] / col_sums[j] for j in range(n)) / n for i in range(n)
    )
    return PriorityVector(weights)


def eigenvector_priorities(m: PairwiseMatrix, tol: float = 1e-12, max_iter: int = 10_000) -> PriorityVector:
    """Principal-eigenvector priorities by power iteration (diagnostic)."""
    n = m.order
    v = [1.0 / n] * n
    for _ in range(max_iter):
        w = [sum(m.entries[i][j] * v[j] for j in range(n)) for i in range(n)]
        total = sum(w)
        w = [x / total for x in w]
        if max(abs(a - b) for a, b in zip(w, v)) < tol:
            v = w
            break
        v = w
    return PriorityVector(tuple(v))


def consistency_ratio(m: PairwiseMatrix) -> float:
    """Saaty consistency ratio, a diagnostic only (never blocks a ranking).

    The principal eigenvalue is estimated through the eigenvector
    priorities, so a perfectly consistent matrix yields 0.
    """
    n = m.order
    if n not in RANDOM_INDEX:
        raise OrderOutOfRange(f"consistency ratio defined for orders 2..10, got {n}")
    w = eigenvector_priorities(m).weights
    products = [sum(m.entries[i][j] * w[j] for j in range(n)) for i in range(n)]
    lam = sum(products[i] / w[i] for i in range(n)) / n
    ri = RANDOM_INDEX[n]
    if ri == 0.0:
        return 0.0
    return ((lam - n) / (n - 1)) / ri


@dataclass(frozen=True)
class SaatyJudgments:
    """One criteria-level matrix plus one action-level matrix per criterion."""

    criteria: PairwiseMatrix
    actions: tuple[PairwiseMatrix, ...]

    def __post_init__(self):
        if len(self.actions) != self.criteria.order:
            raise ValidationFailed(
                f"{self.criteria.order} criteria need {self.criteria.order} action matrices, "
                f"got {len(self.actions)}"
            )
        orders = {m.order for m in self.actions}
        if len(orders) > 1:
            raise ValidationFailed(f"action matrices disagree on order: {sorted(orders)}")

    @property
    def n_criteria(self) -> int:
        return self.criteria.order

    @property
    def n_actions(self) -> int:
        return self.actions[0].order


def ahp_scores(judgments: SaatyJudgments) -> tuple[float, ...]:
    """Global action scores: criteria priorities times per-criterion action priorities."""
    crit = ahp_priorities(judgments.criteria).weights
    per_criterion = [ahp_priorities(m).weights for m in judgments.actions]
    n = judgments.n_actions
    return tuple(
        sum(crit[c] * per_criterion[c][a] for c in range(judgments.n_criteria)) for a in range(n)
    )


def ahp_rank(judgments: SaatyJudgments) -> RankingVector:
    """Rank actions by descending global score, ties to the lower index."""
    scores = ahp_scores(judgments)
    return rank_by(len(scores), key=lambda a: (-scores[a], a))
