import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import ABC, WEAK_ONLY_MU, C1, CSF, F, P1, P2, P3, dual_csf, regularity_violation, random_distribution, random_rcm, rum
from irum.bounds import (
    agreement_count,
    agreement_matrix,
    correlation_bound,
    correlation_decomposition,
    correlation_from_distribution,
    correlation_sum,
    frechet_lower_bound,
    satisfies_correlation_bounds,
    satisfies_weak_correlation_bounds,
    weak_correlation_value,
)
from irum.core import (
    AlternativeSet,
    RandomChoiceModel,
    StochasticChoiceFunction,
    aggregate,
    all_choice_functions,
    enumerate_menus,
    menu_count,
    preferences,
    rational_choice_function,
    worst_pair_swap,
)
from irum.errors import PreconditionError, SizeLimitError

ABC_P = ABC.preference("a>b>c")


def test_frechet_examples():
    menus, _ = enumerate_menus(ABC)
    assert frechet_lower_bound(regularity_violation(), rational_choice_function(ABC_P, ABC), menus) == F(2, 3)
    uniform = StochasticChoiceFunction.uniform(CSF)
    for p in preferences(3):
        assert frechet_lower_bound(uniform, rational_choice_function(p, CSF), enumerate_menus(CSF)[0]) == 0
    m = CSF.menu("cs")
    assert frechet_lower_bound(dual_csf(), C1, [m]) == dual_csf()(C1(m), m)
    with pytest.raises(PreconditionError):
        frechet_lower_bound(dual_csf(), C1, [])


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_frechet_bound_is_necessary(seed):
    rng = random.Random(seed)
    mu = random_rcm(rng, CSF, rng.randint(1, 4))
    rho = aggregate(mu)
    menus, _ = enumerate_menus(CSF)
    for c in all_choice_functions(CSF):
        assert frechet_lower_bound(rho, c, menus) <= mu.weight(c)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_frechet_bound_over_nested_menu_sets(seed):
    rng = random.Random(seed)
    rho = aggregate(random_rcm(rng, CSF, 3))
    c = rng.choice(all_choice_functions(CSF))
    menus = list(enumerate_menus(CSF)[0])
    rng.shuffle(menus)
    k = rng.randint(1, len(menus))
    small, big = menus[:k], menus
    s_small = sum(rho(c(m), m) for m in small)
    s_big = sum(rho(c(m), m) for m in big)
    assert s_big >= s_small
    assert frechet_lower_bound(rho, c, big) == max(F(0), s_big - (len(big) - 1))
    assert frechet_lower_bound(rho, c, big) <= frechet_lower_bound(rho, c, small)


def test_correlation_bound_examples():
    for m1 in (F(1, 2), F(1, 3), F(7, 10)):
        assert correlation_bound(dual_csf(m1), P1) == (3 * m1 + (1 - m1)) / 2
    assert correlation_bound(rum(WEAK_ONLY_MU, ABC), ABC_P) == F(6, 5)
    assert correlation_bound(dual_csf(), P1) == 1
    assert correlation_sum(regularity_violation(), ABC_P) == F(8, 3)
    with pytest.raises(PreconditionError):
        correlation_bound(rum({(0, 1): F(1)}), (0, 1))


def test_correlation_reports():
    assert satisfies_correlation_bounds(dual_csf()).ok
    assert P1 in satisfies_correlation_bounds(dual_csf(F(51, 100))).violators
    report = satisfies_correlation_bounds(regularity_violation())
    assert ABC_P in report.violators
    assert report.argmax == ABC_P
    with pytest.raises(SizeLimitError):
        satisfies_correlation_bounds(StochasticChoiceFunction.uniform(AlternativeSet.standard(7)))


def test_correlation_from_distribution_examples():
    assert correlation_from_distribution({P1: F(1, 2), P2: F(1, 2)}, P1) == 1
    assert correlation_from_distribution({P1: F(2, 3), P3: F(1, 3)}, P1) == 1
    for n in (3, 4):
        p = tuple(range(n))
        k = menu_count(n)
        assert correlation_from_distribution({p: F(1)}, p) == F(k - 1, k - 2)


def test_agreement_counts():
    assert agreement_count(P1, P2) == 1
    assert agreement_count(P1, P3) == 0
    assert agreement_count(P3, P1) == 0
    for n in (3, 4):
        matrix = agreement_matrix(n)
        k = menu_count(n)
        for p in matrix.preferences:
            assert matrix(p, p) == k - 1
            assert matrix(p, worst_pair_swap(p)) == k - 1
            assert all(0 <= matrix(p, q) <= k - 1 for q in matrix.preferences)
    assert {agreement_count(p, q) for p in preferences(3) for q in preferences(3)} == {0, 1, 3}
    with pytest.raises(SizeLimitError):
        agreement_matrix(7)


@pytest.mark.parametrize("n, count", [(3, 300), (4, 200)])
def test_agreement_count_identity(n, count):
    rng = random.Random(n)
    for _ in range(count):
        mu = random_distribution(rng, n)
        rho = rum(mu)
        for p in preferences(n):
            assert correlation_bound(rho, p) == correlation_from_distribution(mu, p)


@pytest.mark.parametrize("n", [3, 4])
def test_mass_cap_forces_violation(n):
    rng = random.Random(20 + n)
    k = menu_count(n)
    prefs = list(preferences(n))
    for _ in range(100):
        heavy = rng.choice(prefs)
        w = F(k - 2, k - 1) + F(rng.randint(1, 50), 50 * (k - 1))
        rest = random_distribution(rng, n)
        mu = {p: (1 - w) * v for p, v in rest.items()}
        mu[heavy] = mu.get(heavy, F(0)) + w
        assert heavy in satisfies_correlation_bounds(rum(mu)).violators


@pytest.mark.parametrize("n", [3, 4])
def test_quarter_cap_implies_bounds(n):
    rng = random.Random(30 + n)
    prefs = list(preferences(n))
    for _ in range(100):
        support = rng.sample(prefs, rng.randint(4, len(prefs)))
        weights = [rng.randint(1, 5) for _ in support]
        total = sum(weights)
        mu = {p: F(x, total) for p, x in zip(support, weights)}
        if max(mu.values()) <= F(1, 4):
            assert satisfies_correlation_bounds(rum(mu)).ok


def test_weak_bounds():
    rho = rum(WEAK_ONLY_MU, ABC)
    assert weak_correlation_value(rho, ABC_P) == F(29, 30)
    assert satisfies_weak_correlation_bounds(rho).ok
    assert not satisfies_correlation_bounds(rho).ok
    assert weak_correlation_value(regularity_violation(), ABC_P) == (F(8, 3) + 1) / 3
    degenerate = rum({ABC_P: F(1)}, ABC)
    assert weak_correlation_value(degenerate, ABC_P) == F(4, 3)


def test_concordance_split():
    split = correlation_decomposition(dual_csf(), C1)
    assert split.concordant == 1 and split.discordant == 0
    uniform = StochasticChoiceFunction.uniform(CSF)
    for c in all_choice_functions(CSF):
        assert correlation_decomposition(uniform, c).concordant == F(11, 18)
    c = rational_choice_function(P1, CSF)
    split = correlation_decomposition(aggregate(RandomChoiceModel(((c, F(1)),))), c)
    assert split.concordant == F(4, 3) and split.exceeds_unit
    assert split.kendall == split.concordant - split.discordant


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.fractions(0, 1, max_denominator=30))
def test_bound_satisfying_rums_are_convex(seed, lam):
    rng = random.Random(seed)
    found = []
    while len(found) < 2:
        rho = rum(random_distribution(rng, 3))
        if satisfies_correlation_bounds(rho).ok:
            found.append(rho)
    assert satisfies_correlation_bounds(found[0].combine(lam, found[1])).ok
