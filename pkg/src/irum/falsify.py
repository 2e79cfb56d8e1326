"""How much rational behaviour hides a family of irrational choice models.

Mixing a full-support RUM ``rho_star`` with weight ``alpha`` and any member of
a family ``M`` with weight ``1 - alpha`` gives a RUM once ``alpha`` is at
least ``alpha_bar(M)``.  BM polynomials are affine in both the mixing weight
and the model, so the threshold is the largest of the per-constraint values
``BM_nu / (BM_nu - BM_star)`` over the vertices ``nu`` of ``M`` and the
negative entries of their BM tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from irum.bm import bm_table
from irum.core import (
    MAX_ENUMERATED_N,
    AlternativeSet,
    Menu,
    RandomChoiceModel,
    StochasticChoiceFunction,
    aggregate,
    all_choice_functions,
    enumerate_menus,
    to_fraction,
)
from irum.errors import PreconditionError, SizeLimitError
from irum.lp import FeasibilitySystem, solve_feasibility

ALL_RCMS = "all_rcms"
FINITE_VERTICES = "finite_vertices"


@dataclass(frozen=True)
class IrrationalFamily:
    """A polytope of random choice models given by its vertices.

    ``all_rcms`` stands for every RCM on ``alt_set``; its vertices are the
    point masses on deterministic choice functions and are only expanded
    on demand (``n <= 4``).
    """

    kind: str
    alt_set: AlternativeSet
    vertices: tuple[RandomChoiceModel, ...] = ()

    def __post_init__(self):
        if self.kind not in (ALL_RCMS, FINITE_VERTICES):
            raise PreconditionError(f"unknown family kind {self.kind!r}")
        if self.kind == FINITE_VERTICES:
            if not self.vertices:
                raise PreconditionError("a finite family needs at least one vertex")
            if any(v.alt_set != self.alt_set for v in self.vertices):
                raise PreconditionError("family vertices live on a different alternative set")

    @classmethod
    def all_rcms(cls, alt_set: AlternativeSet | int) -> IrrationalFamily:
        if isinstance(alt_set, int):
            alt_set = AlternativeSet.standard(alt_set)
        return cls(ALL_RCMS, alt_set)

    @classmethod
    def finite(cls, vertices) -> IrrationalFamily:
        vertices = tuple(vertices)
        if not vertices:
            raise PreconditionError("a finite family needs at least one vertex")
        return cls(FINITE_VERTICES, vertices[0].alt_set, vertices)

    def expanded(self) -> tuple[RandomChoiceModel, ...]:
        if self.kind == FINITE_VERTICES:
            return self.vertices
        if self.alt_set.n > MAX_ENUMERATED_N:
            raise SizeLimitError(f"all-RCM families are enumerated only for n <= {MAX_ENUMERATED_N}")
        return tuple(RandomChoiceModel(((c, Fraction(1)),)) for c in all_choice_functions(self.alt_set))


@dataclass(frozen=True)
class AlphaResult:
    alpha_bar: Fraction
    worst_vertex: RandomChoiceModel
    binding_constraint: tuple[int, Menu] | None


def mixture(alpha, rho_star: StochasticChoiceFunction, rho: StochasticChoiceFunction) -> StochasticChoiceFunction:
    """``alpha * rho_star + (1 - alpha) * rho``."""
    alpha = to_fraction(alpha)
    if not 0 <= alpha <= 1:
        raise PreconditionError(f"mixing weight {alpha} is outside [0, 1]")
    return rho_star.combine(alpha, rho)


def _threshold(bm_nu: Fraction, bm_star: Fraction) -> Fraction:
    return bm_nu / (bm_nu - bm_star)


def _deterministic_bm(alt_set: AlternativeSet, keys: list[tuple[int, Menu]]) -> np.ndarray:
    """BM values of every deterministic choice function, one row per function."""
    n = alt_set.n
    size = 1 << n
    menus, _ = enumerate_menus(alt_set)
    choices = np.array([c.choices for c in all_choice_functions(alt_set)], dtype=np.int64)
    columns = {}
    for a in range(n):
        f = np.zeros((len(choices), size), dtype=np.int64)
        f[:, 1 << a] = 1
        for j, m in enumerate(menus):
            if m >> a & 1:
                f[:, m] = choices[:, j] == a
        for bit in range(n):
            step = 1 << bit
            low = [m for m in range(size) if not m & step]
            f[:, low] -= f[:, [m | step for m in low]]
        for m in range(size):
            if m >> a & 1:
                columns[a, m] = f[:, m]
    return np.stack([columns[k] for k in keys], axis=1)


def _fold(values: list[list[Fraction]], keys, star: list[Fraction]) -> tuple[Fraction, int, tuple[int, Menu] | None]:
    """Largest per-constraint threshold; first vertex and constraint attaining it."""
    best, where, binding = Fraction(0), 0, None
    for v, row in enumerate(values):
        for key, b, s in zip(keys, row, star):
            if b < 0 and (t := _threshold(b, s)) > best:
                best, where, binding = t, v, key
    return best, where, binding


def alpha_bar(rho_star: StochasticChoiceFunction, family: IrrationalFamily) -> AlphaResult:
    """Smallest ``alpha`` making every mixture with a member of ``family`` a RUM.

    Mixtures at exactly ``alpha_bar`` are RUMs.  Families whose vertices are
    all RUMs give 0.
    """
    if family.alt_set != rho_star.alt_set:
        raise PreconditionError("family and rho_star use different alternative sets")
    star_table = bm_table(rho_star)
    if star_table.minimum() <= 0:
        raise PreconditionError("rho_star must be a full-support RUM (every BM value positive)")
    keys = list(star_table.values)
    star = [star_table[k] for k in keys]
    if family.kind == ALL_RCMS:
        if family.alt_set.n > MAX_ENUMERATED_N:
            raise SizeLimitError(f"all-RCM families are enumerated only for n <= {MAX_ENUMERATED_N}")
        table = _deterministic_bm(family.alt_set, keys)
        lowest = table.min(axis=0)
        best, binding = Fraction(0), None
        for j, key in enumerate(keys):
            if lowest[j] < 0 and (t := _threshold(Fraction(int(lowest[j])), star[j])) > best:
                best = t
        where = 0
        if best > 0:
            # thresholds depend only on the BM value, so the earliest vertex
            # attaining the maximum is the earliest one at a binding minimum
            where = min(
                int(np.flatnonzero(table[:, j] == lowest[j])[0])
                for j in range(len(keys))
                if lowest[j] < 0 and _threshold(Fraction(int(lowest[j])), star[j]) == best
            )
            row = [Fraction(int(x)) for x in table[where]]
            _, _, binding = _fold([row], keys, star)
        vertex = RandomChoiceModel(((all_choice_functions(family.alt_set)[where], Fraction(1)),))
        return AlphaResult(best, vertex, binding)
    tables = [bm_table(aggregate(v)) for v in family.vertices]
    best, where, binding = _fold([[t[k] for k in keys] for t in tables], keys, star)
    return AlphaResult(best, family.vertices[where], binding)


def proof_alpha_bound(rho_star: StochasticChoiceFunction, family: IrrationalFamily) -> Fraction:
    """The coarser threshold ``M / (beta + M)``.

    ``M`` is minus the smallest BM value over the family and ``beta`` the
    smallest BM value of ``rho_star``; 0 when no vertex has a negative value.
    """
    beta = bm_table(rho_star).minimum()
    if family.kind == ALL_RCMS:
        keys = list(bm_table(rho_star).values)
        worst = Fraction(int(_deterministic_bm(family.alt_set, keys).min()))
    else:
        worst = min(bm_table(aggregate(v)).minimum() for v in family.vertices)
    if worst >= 0:
        return Fraction(0)
    return -worst / (beta - worst)


def _in_hull(point: RandomChoiceModel, vertices: tuple[RandomChoiceModel, ...]) -> bool:
    funcs = sorted({c for v in vertices for c, _ in v.support} | {c for c, _ in point.support}, key=lambda c: c.choices)
    rows = [[v.weight(c) for v in vertices] for c in funcs] + [[1] * len(vertices)]
    rhs = [point.weight(c) for c in funcs] + [1]
    return solve_feasibility(FeasibilitySystem(len(vertices), rows, rhs)).feasible


def family_contains(big: IrrationalFamily, small: IrrationalFamily) -> bool:
    """Whether every vertex of ``small`` lies in the convex hull of ``big``."""
    if big.alt_set != small.alt_set:
        return False
    if big.kind == ALL_RCMS:
        return True
    return all(_in_hull(v, big.vertices) for v in small.expanded())


def verify_monotonicity(rho_star: StochasticChoiceFunction, small: IrrationalFamily, big: IrrationalFamily) -> bool:
    """Check ``alpha_bar(small) <= alpha_bar(big)`` for nested families."""
    if not family_contains(big, small):
        raise PreconditionError("the smaller family is not contained in the larger one")
    return alpha_bar(rho_star, small).alpha_bar <= alpha_bar(rho_star, big).alpha_bar
