"""Frechet-type bounds on how much mass any representation must give to a choice pattern.

``correlation_bound(rho, P)`` sums ``rho(c_P(A), A)`` over every menu except
the worst pair of ``P`` and divides by ``K - 2``.  A RUM admits a fully
irrational representation exactly when this stays at most one for every
preference.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from irum.core import (
    AlternativeSet,
    ChoiceFunction,
    Menu,
    Preference,
    StochasticChoiceFunction,
    as_preference_distribution,
    best,
    enumerate_menus,
    menu_count,
    menus_excluding_worst_pair,
    preferences,
)
from irum.errors import PreconditionError, SizeLimitError

#: Largest n for which bounds are swept over all n! preferences.
MAX_BOUNDS_N = 6


def frechet_lower_bound(rho: StochasticChoiceFunction, c: ChoiceFunction, menus: Sequence[Menu]) -> Fraction:
    """Lower bound on the mass of representations agreeing with ``c`` on all of ``menus``.

    ``max(0, sum of rho(c(A), A) - (|menus| - 1))``.  With every menu this
    bounds the weight of ``c`` itself.
    """
    if not menus:
        raise PreconditionError("need at least one menu")
    if len(set(menus)) != len(menus):
        raise PreconditionError("menus must be distinct")
    total = sum((rho(c(m), m) for m in menus), Fraction(0))
    return max(Fraction(0), total - (len(menus) - 1))


def _require_bounds_n(n: int) -> None:
    if n < 3:
        raise PreconditionError("correlation bounds need n >= 3 (at n = 2 there are no irrational choice functions)")


def correlation_sum(rho: StochasticChoiceFunction, pref: Preference) -> Fraction:
    """``sum of rho(c_P(A), A)`` over all menus but the worst pair of ``pref``."""
    return sum((rho(best(pref, m), m) for m in menus_excluding_worst_pair(pref)), Fraction(0))


def correlation_bound(rho: StochasticChoiceFunction, pref: Preference) -> Fraction:
    _require_bounds_n(rho.n)
    return correlation_sum(rho, pref) / (menu_count(rho.n) - 2)


@dataclass(frozen=True)
class CorrelationReport:
    """Per-preference bound values with the threshold they are checked against."""

    values: dict[Preference, Fraction]
    violators: list[Preference]
    max_value: Fraction
    argmax: Preference

    @property
    def ok(self) -> bool:
        return not self.violators

    def at_equality(self) -> list[Preference]:
        return [p for p, v in self.values.items() if v == 1]


def _report(values: dict[Preference, Fraction]) -> CorrelationReport:
    argmax = max(values, key=lambda p: (values[p], [-x for x in p]))
    return CorrelationReport(
        values=values,
        violators=[p for p, v in values.items() if v > 1],
        max_value=values[argmax],
        argmax=argmax,
    )


def satisfies_correlation_bounds(rho: StochasticChoiceFunction) -> CorrelationReport:
    """Evaluate the correlation bound at every preference (lexicographic order)."""
    _require_bounds_n(rho.n)
    if rho.n > MAX_BOUNDS_N:
        raise SizeLimitError(f"correlation bounds sweep n! preferences; limited to n <= {MAX_BOUNDS_N}")
    return _report({p: correlation_bound(rho, p) for p in preferences(rho.n)})


def agreement_count(pref: Preference, other: Preference) -> int:
    """Menus outside the worst pair of ``pref`` where both preferences pick the same member."""
    return sum(1 for m in menus_excluding_worst_pair(pref) if best(pref, m) == best(other, m))


@dataclass(frozen=True)
class AgreementMatrix:
    preferences: tuple[Preference, ...]
    entries: dict[tuple[Preference, Preference], int]

    def __call__(self, pref: Preference, other: Preference) -> int:
        return self.entries[pref, other]


@lru_cache(maxsize=None)
def _agreement(n: int) -> AgreementMatrix:
    prefs = tuple(preferences(n))
    return AgreementMatrix(prefs, {(p, q): agreement_count(p, q) for p in prefs for q in prefs})


def agreement_matrix(alt_set: AlternativeSet | int) -> AgreementMatrix:
    n = alt_set if isinstance(alt_set, int) else alt_set.n
    _require_bounds_n(n)
    if n > MAX_BOUNDS_N:
        raise SizeLimitError(f"agreement matrix is limited to n <= {MAX_BOUNDS_N}")
    return _agreement(n)


def correlation_from_distribution(mu, pref: Preference) -> Fraction:
    """Correlation bound of a RUM computed in preference space.

    ``mu`` is a ``{preference: weight}`` mapping or a RUM
    :class:`~irum.core.RandomChoiceModel`.
    """
    dist = as_preference_distribution(mu)
    n = len(pref)
    _require_bounds_n(n)
    total = sum((w * agreement_count(pref, q) for q, w in dist.items()), Fraction(0))
    return total / (menu_count(n) - 2)


def weak_correlation_value(rho: StochasticChoiceFunction, pref: Preference) -> Fraction:
    """``sum of rho(c_P(A), A)`` over every menu, divided by ``K - 1``."""
    menus, k = enumerate_menus(rho.alt_set)
    return sum((rho(best(pref, m), m) for m in menus), Fraction(0)) / (k - 1)


def satisfies_weak_correlation_bounds(rho: StochasticChoiceFunction) -> CorrelationReport:
    if rho.n > MAX_BOUNDS_N:
        raise SizeLimitError(f"weak bounds sweep n! preferences; limited to n <= {MAX_BOUNDS_N}")
    return _report({p: weak_correlation_value(rho, p) for p in preferences(rho.n)})


@dataclass(frozen=True)
class CorrelationSplit:
    """Concordant and discordant mass of ``rho`` relative to a choice function.

    ``concordant`` is normalised by ``K - 1`` although it sums ``K`` terms, so
    it exceeds one when ``rho`` nearly coincides with the choice function.
    ``exceeds_unit`` flags that case; values are reported unclamped.
    """

    concordant: Fraction
    discordant: Fraction

    @property
    def kendall(self) -> Fraction:
        return self.concordant - self.discordant

    @property
    def exceeds_unit(self) -> bool:
        return self.concordant > 1


def correlation_decomposition(rho: StochasticChoiceFunction, c: ChoiceFunction) -> CorrelationSplit:
    menus, k = enumerate_menus(rho.alt_set)
    concordant = sum((rho(c(m), m) for m in menus), Fraction(0)) / (k - 1)
    return CorrelationSplit(concordant, 1 - concordant)
