"""Total orders over actions; rank 1 is the most preferred."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationFailed


@dataclass(frozen=True)
class RankingVector:
    """``ranks[i]`` is the rank of action ``i``; ranks form a permutation of 1..n."""

    ranks: tuple[int, ...]

    def __post_init__(self):
        n = len(self.ranks)
        if sorted(self.ranks) != list(range(1, n + 1)):
            raise ValidationFailed("ranks must be a permutation of 1..n")

    def __len__(self) -> int:
        return len(self.ranks)

    def rank_of(self, action: int) -> int:
        return self.ranks[action]

    def best_first(self) -> tuple[int, ...]:
        """Action indices from rank 1 to rank n."""
        return tuple(sorted(range(len(self.ranks)), key=lambda a: self.ranks[a]))


def rank_by(n: int, key) -> RankingVector:
    """Build a ranking from a sort key; lower key wins, index order decides ties.

    ``key(a)`` must return a tuple that already encodes any tie-breaking
    (callers append the index as the last component).
    """
    order = sorted(range(n), key=key)
    ranks = [0] * n
    for pos, a in enumerate(order, start=1):
        ranks[a] = pos
    return RankingVector(tuple(ranks))
