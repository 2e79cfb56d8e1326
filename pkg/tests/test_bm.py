import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import ABC, WEAK_ONLY_MU, CSF, F, P1, P2, dual_csf, regularity_violation, oracle_bm, random_distribution, random_scf, rum
from irum.bm import bm_polynomial, bm_table, check_regularity, is_full_support_rum, is_rum, rum_representation
from irum.core import AlternativeSet, StochasticChoiceFunction, enumerate_menus
from irum.errors import PreconditionError, SizeLimitError


def test_regularity_violation_binding_polynomial():
    rho = regularity_violation()
    assert bm_polynomial(rho, ABC.index("a"), ABC.menu("ab")) == F(-1, 3)
    verdict = is_rum(rho)
    assert not verdict.is_rum
    assert (ABC.index("a"), ABC.menu("ab")) in verdict.violations


def test_grand_set_value_is_choice_probability():
    rho = dual_csf()
    for x in range(3):
        assert bm_polynomial(rho, x, CSF.grand) == rho(x, CSF.grand)


def test_uniform_singleton_value():
    rho = StochasticChoiceFunction.uniform(ABC)
    assert bm_polynomial(rho, 0, ABC.menu("a")) == F(1, 3)


def test_absent_alternative_rejected():
    with pytest.raises(PreconditionError):
        bm_polynomial(dual_csf(), CSF.index("f"), CSF.menu("cs"))


def test_rum_verdicts():
    assert is_rum(dual_csf()).is_rum
    assert is_rum(StochasticChoiceFunction.uniform(AlternativeSet.standard(4))).is_rum
    assert rum_representation(StochasticChoiceFunction.uniform(AlternativeSet.standard(4))) is not None


def test_rum_representations():
    assert rum_representation(dual_csf()).as_distribution() == {P1: F(1, 2), P2: F(1, 2)}
    assert rum_representation(rum(WEAK_ONLY_MU, ABC)).as_distribution() == WEAK_ONLY_MU
    assert rum_representation(regularity_violation()) is None
    with pytest.raises(SizeLimitError):
        rum_representation(StochasticChoiceFunction.uniform(AlternativeSet.standard(7)))


def test_full_support():
    assert is_full_support_rum(StochasticChoiceFunction.uniform(CSF))
    assert not is_full_support_rum(dual_csf())
    assert bm_polynomial(dual_csf(), CSF.index("f"), CSF.menu("cf")) == 0
    assert not is_full_support_rum(regularity_violation())


def test_regularity():
    assert (ABC.index("a"), ABC.menu("ab"), ABC.menu("abc")) in check_regularity(regularity_violation())
    assert check_regularity(dual_csf()) == []
    eps = F(1, 100)
    perturbed = StochasticChoiceFunction.from_table(ABC, {
        "abc": {"a": F(1, 2) + eps, "b": F(1, 2) - eps},
        "ab": {"a": F(1, 2), "b": F(1, 2)},
        "ac": {"a": 1},
        "bc": {"b": 1},
    })
    assert (ABC.index("a"), ABC.menu("ab"), ABC.menu("abc")) in check_regularity(perturbed)
    assert not is_rum(perturbed).is_rum


@pytest.mark.parametrize("n", [3, 4])
def test_table_matches_direct_sum(n):
    rng = random.Random(n)
    alt_set = AlternativeSet.standard(n)
    for _ in range(20):
        rho = random_scf(rng, alt_set)
        table = bm_table(rho)
        for (a, m), v in table.values.items():
            assert v == bm_polynomial(rho, a, m)
            assert v == oracle_bm(rho, a, frozenset(x for x in range(n) if m >> x & 1))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_mobius_sum_is_one(n):
    rng = random.Random(10 + n)
    alt_set = AlternativeSet.standard(n)
    for _ in range(25):
        table = bm_table(random_scf(rng, alt_set))
        for a in range(n):
            assert sum(v for (x, _), v in table.values.items() if x == a) == 1


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.fractions(0, 1, max_denominator=50))
def test_bm_is_affine(seed, alpha):
    rng = random.Random(seed)
    rho, other = random_scf(rng, CSF), random_scf(rng, CSF)
    mixed = bm_table(rho.combine(alpha, other))
    left, right = bm_table(rho), bm_table(other)
    for key, v in mixed.values.items():
        assert v == alpha * left[key] + (1 - alpha) * right[key]


def test_oracle_equivalence_random_n3():
    rng = random.Random(3)
    for _ in range(1000):
        rho = random_scf(rng, CSF, denom=rng.choice([2, 3, 4, 6]))
        assert is_rum(rho).is_rum == (rum_representation(rho) is not None)


def test_oracle_equivalence_small_grid_n3():
    # every SCF with probabilities in {0, 1/2, 1}
    menus, _ = enumerate_menus(ABC)
    options = {}
    for m in menus:
        size = bin(m).count("1")
        options[m] = [v for v in itertools.product([F(0), F(1, 2), F(1)], repeat=size) if sum(v) == 1]
    for combo in itertools.product(*(options[m] for m in menus)):
        rho = StochasticChoiceFunction(ABC, dict(zip(menus, combo)))
        assert is_rum(rho).is_rum == (rum_representation(rho) is not None)


def test_random_rums_pass():
    rng = random.Random(4)
    for n in (3, 4, 5):
        for _ in range(30):
            assert is_rum(rum(random_distribution(rng, n))).is_rum
