"""Performance matrix model: actions evaluated against directed criteria."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import ValidationFailed


class Direction(str, Enum):
    MAXIMIZE = "max"
    MINIMIZE = "min"


@dataclass(frozen=True)
class ActionRef:
    index: int
    label: str


@dataclass(frozen=True)
class CriterionSpec:
    index: int
    name: str
    direction: Direction


@dataclass(frozen=True)
class PerformanceMatrix:
    """Actions x criteria grid of evaluations, one unit per criterion.

    Direction is mandatory on every criterion: minimized criteria are
    sign-flipped wherever differences are compared, and refusing a default
    keeps that choice visible in the data.
    """

    actions: tuple[ActionRef, ...]
    criteria: tuple[CriterionSpec, ...]
    values: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if len(self.actions) < 2:
            raise ValidationFailed("matrix needs at least 2 actions")
        if len(self.criteria) < 1:
            raise ValidationFailed("matrix needs at least 1 criterion")
        for pos, action in enumerate(self.actions):
            if action.index != pos:
                raise ValidationFailed(f"action index {action.index} out of order at {pos}")
            if not action.label:
                raise ValidationFailed(f"action {pos} has an empty label")
        labels = [a.label for a in self.actions]
        if len(set(labels)) != len(labels):
            raise ValidationFailed("action labels must be unique")
        for pos, crit in enumerate(self.criteria):
            if crit.index != pos:
                raise ValidationFailed(f"criterion index {crit.index} out of order at {pos}")
            if not isinstance(crit.direction, Direction):
                raise ValidationFailed(f"criterion {crit.name!r} lacks a direction")
        if len(self.values) != len(self.actions):
            raise ValidationFailed("values: one row per action required")
        for i, row in enumerate(self.values):
            if len(row) != len(self.criteria):
                raise ValidationFailed(f"values row {i}: one entry per criterion required")
            for j, v in enumerate(row):
                if not math.isfinite(v):
                    raise ValidationFailed(f"values[{i}][{j}] is not finite")

    @property
    def n_actions(self) -> int:
        return len(self.actions)

    @property
    def n_criteria(self) -> int:
        return len(self.criteria)

    def value(self, action: int, criterion: int) -> float:
        return self.values[action][criterion]

    def label_of(self, action: int) -> str:
        return self.actions[action].label


def build_matrix(labels, criteria, rows) -> PerformanceMatrix:
    """Assemble a matrix from plain sequences.

    ``criteria`` holds ``(name, direction)`` pairs; ``rows`` follows the
    order of ``labels``.
    """
    actions = tuple(ActionRef(i, str(lab)) for i, lab in enumerate(labels))
    specs = tuple(
        CriterionSpec(j, name, Direction(direction)) for j, (name, direction) in enumerate(criteria)
    )
    values = tuple(tuple(float(v) for v in row) for row in rows)
    return PerformanceMatrix(actions, specs, values)
