import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import F
from irum.demand import (
    MAX_IRRATIONAL,
    MIN_IRRATIONAL,
    ContingencyTable,
    TwoBudgetData,
    complete_table,
    extremal_table,
    irrational_share_bounds,
)
from irum.errors import PreconditionError

HALF = TwoBudgetData(F(1, 2), F(1, 2), F(1, 2), F(1, 2))
TENTH = TwoBudgetData(1, 0, F(1, 10), F(9, 10))


def test_bounds_examples():
    assert irrational_share_bounds(HALF) == (0, F(1, 2))
    assert irrational_share_bounds(TENTH) == (F(1, 10), F(1, 10))
    assert irrational_share_bounds(TwoBudgetData(1, 0, 0, 1)) == (0, 0)


def test_extremal_tables():
    assert extremal_table(HALF, MAX_IRRATIONAL) == ContingencyTable(F(1, 2), 0, 0, F(1, 2))
    assert extremal_table(HALF, MIN_IRRATIONAL) == ContingencyTable(0, F(1, 2), F(1, 2), 0)
    for target in (MIN_IRRATIONAL, MAX_IRRATIONAL):
        assert extremal_table(TENTH, target) == ContingencyTable(F(1, 10), 0, F(9, 10), 0)
    with pytest.raises(PreconditionError):
        extremal_table(HALF, "median")


def test_walras_check():
    with pytest.raises(PreconditionError):
        TwoBudgetData(F(1, 2), F(1, 3), F(1, 2), F(1, 2))
    with pytest.raises(PreconditionError):
        TwoBudgetData(F(3, 2), F(-1, 2), F(1, 2), F(1, 2))


def test_completion_outside_interval():
    with pytest.raises(PreconditionError):
        complete_table(TENTH, F(1, 5))


common_grid = st.integers(1, 20).flatmap(lambda d: st.tuples(st.just(d), st.integers(0, d), st.integers(0, d)))


@settings(max_examples=150, deadline=None)
@given(common_grid)
def test_against_brute_force_tables(grid):
    denom, k1, k2 = grid
    data = TwoBudgetData(F(k1, denom), 1 - F(k1, denom), F(k2, denom), 1 - F(k2, denom))
    lo, hi = irrational_share_bounds(data)
    assert lo <= hi
    for target in (MIN_IRRATIONAL, MAX_IRRATIONAL):
        assert extremal_table(data, target).matches(data)
    valid = []
    for a, b, c in itertools.product(range(denom + 1), repeat=3):
        d = denom - a - b - c
        if d < 0:
            continue
        table = ContingencyTable(F(a, denom), F(b, denom), F(c, denom), F(d, denom))
        if table.matches(data):
            valid.append(table)
    q11s = {t.q11 for t in valid}
    assert min(q11s) == lo and max(q11s) == hi
    for t in valid:
        assert t == complete_table(data, t.q11)
    assert (lo == hi) == (len(valid) == 1)
