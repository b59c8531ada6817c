"""Experiment configurations shared by the scripts and the acceptance suite."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .exactlinear import Field, parse_field


@dataclass(frozen=True)
class RandomSheafConfig:
    """Random direct sums of indecomposables, re-presented by unimodular changes of chart basis."""

    field: str = "q"
    seed: int = 0
    count: int = 100
    max_summands: int = 5
    deg_range: tuple = (-3, 3)
    max_length: int = 3
    p_torsion: float = 0.4
    re_present_steps: int = 3

    @property
    def base_field(self) -> Field:
        return parse_field(self.field)

    def rng(self) -> random.Random:
        return random.Random(self.seed)


@dataclass(frozen=True)
class PurityFuzzConfig:
    """Seeded random extensions 0 -> A -> B -> C -> 0 of small direct sums."""

    fields: tuple = ("q", "fp:5")
    seed: int = 0
    pairs: int = 20
    classes_per_pair: int = 5
    max_summands: int = 2
    deg_range: tuple = (-2, 2)
    max_length: int = 2
    p_torsion: float = 0.5

    @property
    def total(self) -> int:
        return len(self.fields) * self.pairs * self.classes_per_pair


@dataclass(frozen=True)
class ExampleSweepConfig:
    """The sequences 0 -> O(a) -> O(b) + O(c) -> O(d) -> 0 with a < b <= c < d, a + d = b + c."""

    bound: int = 3
    fields: tuple = ("q",)

    def quadruples(self):
        r = range(-self.bound, self.bound + 1)
        return [(a, b, c, d) for a in r for b in r for c in r for d in r
                if a < b <= c < d and a + d == b + c]


@dataclass(frozen=True)
class AcceptanceLimits:
    """Wall-clock budgets in seconds."""

    limits: dict = field(default_factory=lambda: {
        1: 1.0, 2: 10.0, 3: 30.0, 4: 30.0, 5: 120.0, 6: 120.0, 7: 30.0, 8: 60.0, 9: 10.0, 10: 5.0})
