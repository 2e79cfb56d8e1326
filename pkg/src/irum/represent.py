"""Deciding and constructing irrational representations of RUMs.

A RUM is an *I-RUM* when some distribution over irrational choice functions
aggregates to the same choice probabilities, and a *pI-RUM* when some
representation puts positive weight on at least one irrational function.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from irum.bm import is_rum
from irum.bounds import (
    MAX_BOUNDS_N,
    agreement_count,
    correlation_from_distribution,
    satisfies_correlation_bounds,
)
from irum.core import (
    MAX_ENUMERATED_N,
    AlternativeSet,
    ChoiceFunction,
    Menu,
    Preference,
    RandomChoiceModel,
    StochasticChoiceFunction,
    aggregate,
    all_choice_functions,
    as_preference_distribution,
    best,
    check_preference,
    enumerate_menus,
    irrational_choice_functions,
    is_rational,
    menu_count,
    menus_excluding_worst_pair,
    popcount,
    rational_choice_function,
    to_fraction,
    worst_two,
)
from irum.errors import PreconditionError, SizeLimitError
from irum.lp import (
    FeasibilitySystem,
    _live_mask,
    _menu_tables,
    choice_array,
    find_representation,
    representation_system,
    solve_feasibility,
)

NO_IRRATIONAL_AT_TWO = "no irrational choice functions exist at n=2"


@dataclass(frozen=True)
class IrumVerdict:
    is_rum: bool
    bounds_ok: bool
    is_irum: bool
    witness: RandomChoiceModel | None
    violators: list[Preference]
    note: str = ""

    def __bool__(self):
        return self.is_irum


def irrational_representation(rho: StochasticChoiceFunction) -> RandomChoiceModel | None:
    """Exact LP search for a distribution over irrational choice functions (n <= 4)."""
    if rho.n == 2:
        return None
    return find_representation(rho, irrational_choice_functions(rho.alt_set))


def is_irum(rho: StochasticChoiceFunction, witness: bool = True) -> IrumVerdict:
    """Decide I-RUM membership as "is a RUM and meets every correlation bound".

    For ``n <= 4`` a positive verdict comes with an explicit all-irrational
    witness (unless ``witness=False``).  For ``n`` of 5 or 6 the verdict is
    computed from the bounds alone.
    """
    rum = is_rum(rho).is_rum
    if rho.n == 2:
        return IrumVerdict(rum, False, False, None, [], NO_IRRATIONAL_AT_TWO)
    if rho.n > MAX_BOUNDS_N:
        raise SizeLimitError(f"I-RUM verdicts sweep n! preferences; limited to n <= {MAX_BOUNDS_N}")
    report = satisfies_correlation_bounds(rho)
    verdict = rum and report.ok
    found = None
    note = ""
    if verdict and witness:
        if rho.n <= MAX_ENUMERATED_N:
            found = irrational_representation(rho)
            if found is None:
                raise AssertionError("bounds hold but no irrational representation was found")
        else:
            note = f"witness unavailable for n > {MAX_ENUMERATED_N}; verdict from correlation bounds"
    return IrumVerdict(rum, report.ok, verdict, found, report.violators, note)


def _swap_choice(alt_set: AlternativeSet, base: Preference, donor: Preference, at: Menu) -> ChoiceFunction:
    """``c_base`` except that ``at`` gets the choice of ``donor``."""
    return rational_choice_function(base, alt_set).replace(at, best(donor, at))


def dual_irum_construction(p1: Preference, p2: Preference, m1, m2, alt_set: AlternativeSet | None = None) -> RandomChoiceModel:
    """All-irrational representation of the dual RUM ``{p1: m1, p2: m2}`` at bound equality.

    Requires ``m1 <= m2`` and the correlation bound of ``p2`` to hold with
    equality.  Returns the uniform distribution over the ``k + 1`` functions
    that follow ``p2`` everywhere except for one menu where ``p1`` and ``p2``
    disagree, on which they follow ``p1``.  If the two also disagree on the
    worst pair of ``p2``, the first of these functions that stays irrational
    follows ``p1`` there as well.
    """
    m1, m2 = to_fraction(m1), to_fraction(m2)
    n = len(p1)
    alt_set = alt_set or AlternativeSet.standard(n)
    check_preference(p1, alt_set.n)
    check_preference(p2, alt_set.n)
    if n < 3:
        raise PreconditionError(NO_IRRATIONAL_AT_TWO)
    if m1 + m2 != 1 or not 0 < m1 <= m2:
        raise PreconditionError(f"need m1 + m2 = 1 and 0 < m1 <= m2, got m1={m1}, m2={m2}")
    k_menus = menu_count(n)
    agree = agreement_count(p2, p1)
    k = k_menus - 2 - agree
    if k < 1:
        raise PreconditionError(f"preferences agree on {agree} menus; no irrational swap exists (k = {k})")
    if m2 != Fraction(k, k_menus - 1 - agree):
        raise PreconditionError(
            f"correlation bound at the heavier preference is not at equality: need m2 = {Fraction(k, k_menus - 1 - agree)}"
        )
    disputed = [m for m in menus_excluding_worst_pair(p2) if best(p2, m) != best(p1, m)]
    assert len(disputed) == k + 1
    funcs = [_swap_choice(alt_set, p2, p1, m) for m in disputed]
    pair = worst_two(p2)
    if best(p1, pair) != best(p2, pair):
        # every swap function would keep p2's choice on its worst pair, so one
        # of them also takes p1's choice there
        for i, c in enumerate(funcs):
            joined = c.replace(pair, best(p1, pair))
            if is_rational(joined) is None:
                funcs[i] = joined
                break
        else:
            raise AssertionError("no swap function stays irrational after taking the worst pair")
    model = RandomChoiceModel(tuple((c, Fraction(1, k + 1)) for c in funcs))
    assert model.all_irrational()
    dual = RandomChoiceModel.from_preferences({p1: m1, p2: m2}, alt_set)
    assert aggregate(model) == aggregate(dual)
    return model


@dataclass(frozen=True)
class DualDecomposition:
    """``mu`` as a mixture of two-preference RUMs that all contain ``anchor``."""

    anchor: Preference
    components: list[tuple[Fraction, dict[Preference, Fraction]]]

    def mixture(self) -> dict[Preference, Fraction]:
        out: dict[Preference, Fraction] = {}
        for weight, dual in self.components:
            for p, w in dual.items():
                out[p] = out.get(p, Fraction(0)) + weight * w
        return {p: w for p, w in out.items() if w}


def dual_decomposition(mu, anchor: Preference) -> DualDecomposition:
    """Split a RUM whose correlation bound is tight at ``anchor`` into dual RUMs.

    Component ``i`` lives on ``{anchor, P_i}`` with weight
    ``mu(P_i) * (K - 1 - n(anchor, P_i))``.  Raises when the bound is not tight
    at ``anchor``, when some bound is violated, or when a support preference
    agrees with ``anchor`` on ``K - 2`` or more menus (the component would
    collapse to a single preference).
    """
    dist = as_preference_distribution(mu)
    n = len(anchor)
    if n < 3:
        raise PreconditionError(NO_IRRATIONAL_AT_TWO)
    check_preference(anchor, n)
    alt_set = AlternativeSet.standard(n)
    rho = aggregate(RandomChoiceModel.from_preferences(dist, alt_set))
    report = satisfies_correlation_bounds(rho)
    if not report.ok:
        raise PreconditionError("correlation bounds are violated")
    if correlation_from_distribution(dist, anchor) != 1:
        raise PreconditionError(f"correlation bound is not tight at {anchor}")
    k_menus = menu_count(n)
    components = []
    for p, w in sorted(dist.items()):
        if p == anchor:
            continue
        agree = agreement_count(anchor, p)
        if agree >= k_menus - 2:
            raise PreconditionError(
                f"preference {p} agrees with the anchor on {agree} >= K-2 menus; its dual component degenerates"
            )
        gap = k_menus - 1 - agree
        dual = {anchor: Fraction(gap - 1, gap), p: Fraction(1, gap)}
        components.append((w * gap, dual))
    result = DualDecomposition(anchor, components)
    assert sum(d for d, _ in components) == 1
    assert result.mixture() == dist
    for _, dual in components:
        assert correlation_from_distribution(dual, anchor) == 1
    return result


@dataclass(frozen=True)
class PirumVerdict:
    is_rum: bool
    condition3: bool
    witness_menus: tuple[Menu, Menu, int, int] | None

    @property
    def is_pirum(self) -> bool:
        return self.is_rum and self.condition3

    def __bool__(self):
        return self.is_pirum


def pirum_condition(rho: StochasticChoiceFunction) -> tuple[Menu, Menu, int, int] | None:
    """Two distinct menus sharing two members, each chosen with positive probability from both.

    Larger first menus are scanned first, so the witness uses a menu with at
    least three members whenever possible.
    """
    menus, _ = enumerate_menus(rho.alt_set)
    order = sorted(menus, key=lambda m: (-popcount(m), m))
    for first in order:
        live = rho.support(first)
        for second in menus:
            if second == first:
                continue
            shared = [x for x in live if second >> x & 1 and rho(x, second) > 0]
            if len(shared) >= 2:
                return first, second, shared[0], shared[1]
    return None


def is_pirum(rho: StochasticChoiceFunction) -> PirumVerdict:
    return PirumVerdict(is_rum(rho).is_rum, (w := pirum_condition(rho)) is not None, w)


def pirum_representation(rho: StochasticChoiceFunction, mu) -> RandomChoiceModel:
    """Rewrite the RUM ``mu`` (which must aggregate to ``rho``) with two irrational members.

    Picks the first menu ``B`` with at least three members on which two
    alternatives are chosen with positive probability, takes the first
    support preferences topping ``B`` with each, and swaps their choices on
    ``B``.
    """
    dist = as_preference_distribution(mu, rho.n)
    if aggregate(RandomChoiceModel.from_preferences(dist, rho.alt_set)) != rho:
        raise PreconditionError("mu does not represent rho")
    if pirum_condition(rho) is None:
        raise PreconditionError("no two alternatives are chosen with positive probability from two menus")
    menus, _ = enumerate_menus(rho.alt_set)
    target = next(m for m in menus if popcount(m) >= 3 and len(rho.support(m)) >= 2)
    a, b = rho.support(target)[:2]
    support = sorted(dist)
    p1 = next(p for p in support if best(p, target) == a)
    p2 = next(p for p in support if best(p, target) == b)
    if dist[p1] > dist[p2]:
        p1, p2 = p2, p1
    light = dist[p1]
    weights: list[tuple[ChoiceFunction, Fraction]] = [
        (_swap_choice(rho.alt_set, p1, p2, target), light),
        (_swap_choice(rho.alt_set, p2, p1, target), light),
        (rational_choice_function(p2, rho.alt_set), dist[p2] - light),
    ]
    weights += [(rational_choice_function(p, rho.alt_set), w) for p, w in dist.items() if p not in (p1, p2)]
    model = RandomChoiceModel.from_weights(weights)
    assert is_rational(weights[0][0]) is None and is_rational(weights[1][0]) is None
    assert aggregate(model) == rho
    return model


def partial_irrational_representation(rho: StochasticChoiceFunction) -> RandomChoiceModel | None:
    """Exact LP search for a representation with positive irrational mass (n <= 4).

    Only irrational functions that choose positive-probability members can
    carry mass.  For such a ``c`` with ``eps = min_A rho(c(A), A)`` the rest
    ``rho - eps * rho_c`` is ``1 - eps`` times valid choice data, so the LP
    ``sum_j y_j rho_j = rho - eps * rho_c`` over all such functions decides
    whether ``c`` can take weight ``eps``.
    """
    if rho.n == 2:
        return None
    cands = all_choice_functions(rho.alt_set)
    choices = choice_array(cands)
    live = np.flatnonzero(_live_mask(rho, choices))
    base = representation_system(rho, choices[live])
    row_of, _, _ = _menu_tables(rho)
    for j in live:
        c = cands[int(j)]
        if is_rational(c) is not None:
            continue
        eps = min(rho(x, m) for m, x in c.items())
        rhs = list(base.rhs)
        for pos, x in enumerate(c.choices):
            rhs[row_of[pos, x]] -= eps
        result = solve_feasibility(FeasibilitySystem(base.n_vars, base.rows, rhs))
        if result:
            weights = [(cands[int(live[k])], y) for k, y in result.support().items()] + [(c, eps)]
            model = RandomChoiceModel.from_weights(weights)
            assert aggregate(model) == rho and not model.is_rum()
            return model
    return None


@dataclass(frozen=True)
class IrumDualSplit:
    """``rho = w * aggregate(pool) + (1 - w) * aggregate(residual)``."""

    irrational_weight: Fraction
    irrational_pool: RandomChoiceModel | None
    residual_dual: RandomChoiceModel
    steps: list[tuple[Preference, Preference, Menu]] = field(default_factory=list)

    def aggregate(self) -> StochasticChoiceFunction:
        dual = aggregate(self.residual_dual)
        if self.irrational_pool is None:
            return dual
        return aggregate(self.irrational_pool).combine(self.irrational_weight, dual)


def _split_menu(p: Preference, q: Preference) -> Menu:
    """First menu with three or more members on which ``p`` and ``q`` pick differently."""
    menus, _ = enumerate_menus(len(p))
    for size in range(3, len(p) + 1):
        for m in menus:
            if popcount(m) == size and best(p, m) != best(q, m):
                return m
    raise AssertionError(f"{p} and {q} agree on every menu with three or more members")


def rum_decompose_irum_dual(mu, alt_set: AlternativeSet | None = None) -> IrumDualSplit:
    """Write a RUM as a mixture of an I-RUM pool and a RUM on at most two preferences.

    While the support has three or more preferences, the lightest preference
    is paired with the heaviest one outside its class (preferences are in
    the same class when they differ at most in their bottom two).  Their
    choices are swapped on a menu where they disagree, which turns the
    lighter preference's whole mass and an equal share of the heavier one
    into two irrational choice functions.
    """
    dist = as_preference_distribution(mu)
    n = len(next(iter(dist)))
    alt_set = alt_set or AlternativeSet.standard(n)
    original = aggregate(RandomChoiceModel.from_preferences(dist, alt_set))
    residual = dict(dist)
    pool: dict[ChoiceFunction, Fraction] = {}
    steps = []
    while len(residual) > 2:
        light = min(residual, key=lambda p: (residual[p], p))
        others = [p for p in residual if p[:-2] != light[:-2]]
        heavy = min(others, key=lambda p: (-residual[p], p))
        at = _split_menu(light, heavy)
        mass = residual[light]
        for c in (_swap_choice(alt_set, light, heavy, at), _swap_choice(alt_set, heavy, light, at)):
            pool[c] = pool.get(c, Fraction(0)) + mass
        del residual[light]
        residual[heavy] -= mass
        if residual[heavy] == 0:
            del residual[heavy]
        steps.append((light, heavy, at))
    w = sum(pool.values(), Fraction(0))
    pool_model = RandomChoiceModel(tuple((c, v / w) for c, v in pool.items())) if pool else None
    dual = RandomChoiceModel.from_preferences({p: v / (1 - w) for p, v in residual.items()}, alt_set)
    split = IrumDualSplit(w, pool_model, dual, steps)
    assert split.aggregate() == original
    if pool_model is not None:
        assert pool_model.all_irrational()
        pooled = aggregate(pool_model)
        assert is_rum(pooled).is_rum and satisfies_correlation_bounds(pooled).ok
    return split


def sufficient_quarter(mu) -> bool:
    """Every preference has weight at most 1/4 (enough for an I-RUM)."""
    return all(w <= Fraction(1, 4) for w in as_preference_distribution(mu).values())


def necessary_mass_cap(mu) -> Preference | None:
    """A preference heavier than ``(K-2)/(K-1)``, which rules out an I-RUM."""
    dist = as_preference_distribution(mu)
    n = len(next(iter(dist)))
    k = menu_count(n)
    cap = Fraction(k - 2, k - 1)
    return next((p for p in sorted(dist) if dist[p] > cap), None)
