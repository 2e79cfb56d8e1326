"""Block-Marschak polynomials and the RUM tests built on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from irum.core import (
    Menu,
    RandomChoiceModel,
    StochasticChoiceFunction,
    enumerate_menus,
    members,
    popcount,
    rational_choice_functions,
)
from irum.errors import PreconditionError, SizeLimitError
from irum.lp import find_representation

#: Largest n for which the n! rational choice functions are enumerated.
MAX_RUM_N = 6


def _extended(rho: StochasticChoiceFunction, a: int, menu: Menu) -> Fraction:
    # singletons are chosen with certainty
    if menu == 1 << a:
        return Fraction(1)
    return rho(a, menu)


def bm_polynomial(rho: StochasticChoiceFunction, a: int, menu: Menu) -> Fraction:
    """Alternating sum of ``rho(a, B)`` over all supersets ``B`` of ``menu``."""
    if not (menu >> a & 1):
        raise PreconditionError(f"alternative {rho.alt_set.labels[a]} is not on the menu")
    grand = rho.alt_set.grand
    free = grand & ~menu
    total = Fraction(0)
    sub = free
    while True:
        sign = -1 if popcount(sub) & 1 else 1
        total += sign * _extended(rho, a, menu | sub)
        if sub == 0:
            break
        sub = (sub - 1) & free
    return total


@dataclass(frozen=True)
class BMTable:
    """BM value for every nonempty menu (singletons included) and member."""

    values: dict[tuple[int, Menu], Fraction]

    def __getitem__(self, key: tuple[int, Menu]) -> Fraction:
        return self.values[key]

    def negative(self) -> list[tuple[int, Menu]]:
        return [k for k, v in self.values.items() if v < 0]

    def minimum(self) -> Fraction:
        return min(self.values.values())


def bm_table(rho: StochasticChoiceFunction) -> BMTable:
    """All BM values via a superset Moebius transform per alternative.

    Keys are ``(a, menu)`` ordered by alternative, then by ascending menu mask.
    """
    n = rho.n
    size = 1 << n
    values = {}
    for a in range(n):
        f = [Fraction(0)] * size
        for m in range(size):
            if m >> a & 1:
                f[m] = _extended(rho, a, m)
        for bit in range(n):
            step = 1 << bit
            for m in range(size):
                if not m & step:
                    f[m] -= f[m | step]
        for m in range(size):
            if m >> a & 1:
                values[a, m] = f[m]
    return BMTable(values)


@dataclass(frozen=True)
class RumVerdict:
    is_rum: bool
    violations: list[tuple[int, Menu]]
    table: BMTable

    def __bool__(self):
        return self.is_rum


def is_rum(rho: StochasticChoiceFunction) -> RumVerdict:
    """RUM test: every BM polynomial is nonnegative.  Reports all violations."""
    table = bm_table(rho)
    violations = table.negative()
    return RumVerdict(not violations, violations, table)


def is_full_support_rum(rho: StochasticChoiceFunction) -> bool:
    """True when every BM polynomial is strictly positive."""
    return bm_table(rho).minimum() > 0


def rum_representation(rho: StochasticChoiceFunction) -> RandomChoiceModel | None:
    """A distribution over preferences that aggregates to ``rho``, or ``None``."""
    if rho.n > MAX_RUM_N:
        raise SizeLimitError(f"RUM representation enumerates n! preferences; limited to n <= {MAX_RUM_N}")
    return find_representation(rho, rational_choice_functions(rho.alt_set))


def check_regularity(rho: StochasticChoiceFunction) -> list[tuple[int, Menu, Menu]]:
    """Triples ``(a, A, B)`` with ``a`` in ``A``, ``A`` a proper subset of ``B`` and ``rho(a, B) > rho(a, A)``."""
    menus, _ = enumerate_menus(rho.alt_set)
    out = []
    for small in menus:
        for big in menus:
            if big != small and big & small == small:
                for a in members(small):
                    if rho(a, big) > rho(a, small):
                        out.append((a, small, big))
    return out
