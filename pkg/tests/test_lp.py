import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import C1, C2, CSF, F, P1, dual_csf, oracle_feasible, random_rcm
from irum.core import (
    AlternativeSet,
    aggregate,
    all_choice_functions,
    irrational_choice_functions,
    rational_choice_function,
    rational_choice_functions,
)
from irum.errors import PreconditionError, SizeLimitError
from irum.lp import MAX_CANDIDATES, FeasibilitySystem, find_representation, prune_candidates, solve_feasibility


def test_trivial_systems():
    result = solve_feasibility(FeasibilitySystem(2, [[1, 1], [1, -1]], [1, 0]))
    assert result.feasible and result.witness == (F(1, 2), F(1, 2))
    assert not solve_feasibility(FeasibilitySystem(1, [[1], [1]], [1, 0]))
    assert solve_feasibility(FeasibilitySystem(3, [], [])).feasible


def test_dimension_mismatch():
    with pytest.raises(PreconditionError):
        FeasibilitySystem(2, [[1, 1, 1]], [1])
    with pytest.raises(PreconditionError):
        FeasibilitySystem(2, [[1, 1]], [1, 2])


def test_negative_rhs_and_fractional_coefficients():
    # -x1 - x2 = -1, x1/3 = 1/6
    result = solve_feasibility(FeasibilitySystem(2, [[-1, -1], [F(1, 3), 0]], [-1, F(1, 6)]))
    assert result.witness == (F(1, 2), F(1, 2))


small_system = st.integers(1, 3).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=m, max_size=m),
            st.lists(st.integers(-4, 4), min_size=m, max_size=m),
        )
    )
)


@settings(max_examples=300, deadline=None)
@given(small_system)
def test_decision_matches_basic_solution_enumeration(system):
    rows, rhs = system
    result = solve_feasibility(FeasibilitySystem(len(rows[0]), rows, rhs))
    assert result.feasible == oracle_feasible(rows, rhs)
    if result.feasible:
        assert all(v >= 0 for v in result.witness)
        for row, b in zip(rows, rhs):
            assert sum(a * x for a, x in zip(row, result.witness)) == b


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.lists(st.integers(-5, 5), min_size=6, max_size=6), min_size=2, max_size=5),
    st.lists(st.fractions(0, 3, max_denominator=7), min_size=6, max_size=6),
)
def test_constructed_feasible_systems(rows, x):
    rhs = [sum(a * v for a, v in zip(row, x)) for row in rows]
    result = solve_feasibility(FeasibilitySystem(6, rows, rhs))
    assert result.feasible


def test_dual_csf_against_irrational_functions():
    irr = irrational_choice_functions(CSF)
    assert len(irr) == 18
    model = find_representation(dual_csf(), irr)
    assert model is not None and dict(model.support) == {C1: F(1, 2), C2: F(1, 2)}


def test_dual_csf_against_rational_functions():
    model = find_representation(dual_csf(), rational_choice_functions(CSF))
    assert model.as_distribution() == {P1: F(1, 2), CSF.preference("s>c>f"): F(1, 2)}


def test_51_percent_has_no_irrational_representation():
    assert find_representation(dual_csf(F(51, 100)), irrational_choice_functions(CSF)) is None


def test_degenerate_rho_has_no_irrational_representation():
    rho = dual_csf(F(1))
    assert find_representation(rho, irrational_choice_functions(CSF)) is None


def test_guards():
    with pytest.raises(PreconditionError):
        find_representation(dual_csf(), [])
    many = list(all_choice_functions(AlternativeSet.standard(4))) * 2
    assert len(many) > MAX_CANDIDATES
    rho = aggregate(random_rcm(random.Random(0), AlternativeSet.standard(4), 2))
    with pytest.raises(SizeLimitError):
        find_representation(rho, many)


def test_pruning_keeps_representations():
    rho = dual_csf()
    kept = prune_candidates(rho, all_choice_functions(CSF))
    assert C1 in kept and C2 in kept
    assert all(rho(c(m), m) > 0 for c in kept for m, _ in c.items())


def test_soundness_fuzz():
    rng = random.Random(7)
    funcs = all_choice_functions(CSF)
    for _ in range(1000):
        mu = random_rcm(rng, CSF, rng.randint(1, 5))
        extra = rng.sample(funcs, 5)
        cands = list({c for c, _ in mu.support} | set(extra))
        model = find_representation(aggregate(mu), cands)
        assert model is not None and aggregate(model) == aggregate(mu)


def test_numpy_integer_rows():
    mat = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.int64)
    result = solve_feasibility(FeasibilitySystem(3, mat, [F(1, 2), F(1, 3)]))
    assert result.feasible
    assert sum(result.witness[:2]) == F(1, 2)


def test_point_mass_found_among_irrational_distractors():
    c = rational_choice_function(P1, CSF)
    model = find_representation(dual_csf(F(1)), [c] + list(irrational_choice_functions(CSF)))
    assert dict(model.support) == {c: 1}
