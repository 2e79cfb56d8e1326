"""Two-budget demand data: how many consumers can be irrational.

Each budget line is cut into two segments by the other one.  A consumer
choosing segment 1 on both budgets violates revealed preference, so the
share in cell ``q11`` of the joint table is the irrational share.  Only the
marginals are observed; the Frechet bounds give the identified interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from irum.core import to_fraction
from irum.errors import PreconditionError

MIN_IRRATIONAL = "min_irrational"
MAX_IRRATIONAL = "max_irrational"


@dataclass(frozen=True)
class TwoBudgetData:
    """``pi_i_j``: share choosing segment ``i`` from budget ``j``."""

    pi_1_1: Fraction
    pi_2_1: Fraction
    pi_1_2: Fraction
    pi_2_2: Fraction

    def __post_init__(self):
        for name in ("pi_1_1", "pi_2_1", "pi_1_2", "pi_2_2"):
            value = to_fraction(getattr(self, name))
            if not 0 <= value <= 1:
                raise PreconditionError(f"{name} = {value} is not a share")
            object.__setattr__(self, name, value)
        if self.pi_1_1 + self.pi_2_1 != 1 or self.pi_1_2 + self.pi_2_2 != 1:
            raise PreconditionError("shares on each budget must sum to 1 (Walras' law)")


@dataclass(frozen=True)
class ContingencyTable:
    """Joint shares; ``qij`` chose segment ``i`` from budget 2 and ``j`` from budget 1."""

    q11: Fraction
    q12: Fraction
    q21: Fraction
    q22: Fraction

    def cells(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.q11, self.q12, self.q21, self.q22

    def matches(self, data: TwoBudgetData) -> bool:
        return (
            all(q >= 0 for q in self.cells())
            and self.q11 + self.q21 == data.pi_1_1
            and self.q12 + self.q22 == data.pi_2_1
            and self.q11 + self.q12 == data.pi_1_2
            and self.q21 + self.q22 == data.pi_2_2
        )


def irrational_share_bounds(data: TwoBudgetData) -> tuple[Fraction, Fraction]:
    lo = max(Fraction(0), data.pi_1_1 + data.pi_1_2 - 1)
    hi = min(data.pi_1_1, data.pi_1_2)
    return lo, hi


def complete_table(data: TwoBudgetData, q11) -> ContingencyTable:
    """The unique table with the given irrational cell and the observed marginals."""
    q11 = to_fraction(q11)
    table = ContingencyTable(
        q11,
        data.pi_1_2 - q11,
        data.pi_1_1 - q11,
        1 - data.pi_1_1 - data.pi_1_2 + q11,
    )
    if not table.matches(data):
        raise PreconditionError(f"q11 = {q11} is outside the identified interval")
    return table


def extremal_table(data: TwoBudgetData, target: str) -> ContingencyTable:
    lo, hi = irrational_share_bounds(data)
    if target == MIN_IRRATIONAL:
        return complete_table(data, lo)
    if target == MAX_IRRATIONAL:
        return complete_table(data, hi)
    raise PreconditionError(f"target must be {MIN_IRRATIONAL!r} or {MAX_IRRATIONAL!r}")
