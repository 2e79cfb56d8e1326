"""Shared instances, generators and brute-force oracles for the test suite."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from irum.core import (
    AlternativeSet,
    ChoiceFunction,
    RandomChoiceModel,
    StochasticChoiceFunction,
    aggregate,
    enumerate_menus,
    preferences,
)

F = Fraction
CSF = AlternativeSet(("c", "s", "f"))
ABC = AlternativeSet(("a", "b", "c"))
P1 = CSF.preference("c>s>f")
P2 = CSF.preference("s>c>f")
P3 = CSF.preference("f>s>c")
C1 = ChoiceFunction.from_mapping(CSF, {"csf": "s", "cs": "c", "cf": "c", "sf": "s"})
C2 = ChoiceFunction.from_mapping(CSF, {"csf": "c", "cs": "s", "cf": "c", "sf": "s"})

WEAK_ONLY_MU = {
    ABC.preference("a>b>c"): F(2, 5),
    ABC.preference("a>c>b"): F(2, 5),
    ABC.preference("b>c>a"): F(1, 10),
    ABC.preference("c>b>a"): F(1, 10),
}


def rum(dist, alt_set=None) -> StochasticChoiceFunction:
    return aggregate(RandomChoiceModel.from_preferences(dist, alt_set))


def dual_csf(m1=F(1, 2)) -> StochasticChoiceFunction:
    return rum({P1: m1, P2: 1 - m1}, CSF)


def regularity_violation() -> StochasticChoiceFunction:
    return StochasticChoiceFunction.from_table(ABC, {
        "abc": {"a": 1, "b": 0, "c": 0},
        "ab": {"a": F(2, 3), "b": F(1, 3)},
        "ac": {"a": 1, "c": 0},
        "bc": {"b": 1, "c": 0},
    })


def random_distribution(rng: random.Random, n: int, max_support: int | None = None, denom: int = 12):
    """Random rational preference distribution; sometimes with a dominant preference."""
    prefs = list(preferences(n))
    k = rng.randint(1, max_support or len(prefs))
    support = rng.sample(prefs, k)
    weights = [rng.randint(1, denom) for _ in support]
    if rng.random() < 0.4:
        weights[0] += rng.randint(denom, 6 * denom)
    total = sum(weights)
    return {p: F(w, total) for p, w in zip(support, weights)}


def random_rcm(rng: random.Random, alt_set: AlternativeSet, size: int, denom: int = 10) -> RandomChoiceModel:
    menus, _ = enumerate_menus(alt_set)
    weights = []
    for _ in range(size):
        choices = tuple(rng.choice([x for x in range(alt_set.n) if m >> x & 1]) for m in menus)
        weights.append((ChoiceFunction(alt_set, choices), rng.randint(1, denom)))
    total = sum(w for _, w in weights)
    return RandomChoiceModel.from_weights((c, F(w, total)) for c, w in weights)


def random_scf(rng: random.Random, alt_set: AlternativeSet, denom: int = 6) -> StochasticChoiceFunction:
    """Arbitrary (not necessarily RUM) choice data with small denominators."""
    probs = {}
    for m in enumerate_menus(alt_set)[0]:
        size = bin(m).count("1")
        cuts = sorted(rng.randint(0, denom) for _ in range(size - 1))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [denom])]
        probs[m] = tuple(F(p, denom) for p in parts)
    return StochasticChoiceFunction(alt_set, probs)


def compositions(total: int, parts: int):
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        edges = (-1,) + cut + (total + parts - 1,)
        yield [edges[i + 1] - edges[i] - 1 for i in range(parts)]


def grid_distributions(n: int, max_denominator: int):
    """Every distribution over the n! preferences with weights k/d, d <= max_denominator."""
    prefs = list(preferences(n))
    seen = set()
    for d in range(1, max_denominator + 1):
        for comp in compositions(d, len(prefs)):
            key = tuple(F(x, d) for x in comp)
            if key not in seen:
                seen.add(key)
                yield {p: w for p, w in zip(prefs, key) if w}


# ---- brute-force oracles, deliberately written without the library's shortcuts ----

def oracle_best(pref, subset):
    return min(subset, key=pref.index)


def oracle_is_rational(c: ChoiceFunction):
    """Compare against the choice function of every preference."""
    alt_set = c.alt_set
    menus, _ = enumerate_menus(alt_set)
    for pref in itertools.permutations(range(alt_set.n)):
        if all(c(m) == oracle_best(pref, [x for x in range(alt_set.n) if m >> x & 1]) for m in menus):
            return pref
    return None


def oracle_bm(rho: StochasticChoiceFunction, a: int, subset: frozenset) -> Fraction:
    """Alternating sum over supersets, enumerated as label subsets."""
    n = rho.n
    rest = [x for x in range(n) if x not in subset]
    total = F(0)
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            big = set(subset) | set(extra)
            value = F(1) if len(big) == 1 else rho(a, sum(1 << x for x in big))
            total += (-1) ** r * value
    return total


def oracle_feasible(rows, rhs) -> bool:
    """Nonnegative solvability by enumerating basic solutions (tiny systems only)."""
    m, n = len(rows), len(rows[0]) if rows else 0
    for k in range(0, min(m, n) + 1):
        for cols in itertools.combinations(range(n), k):
            sol = _solve_exact([[F(rows[i][j]) for j in cols] for i in range(m)], [F(v) for v in rhs])
            if sol is not None and all(v >= 0 for v in sol):
                return True
    return False


def _solve_exact(a, b):
    """Unique solution of a (possibly overdetermined) system with independent columns, else None."""
    m = len(a)
    k = len(a[0]) if a else 0
    aug = [row[:] + [v] for row, v in zip(a, b)]
    r = 0
    pivots = []
    for col in range(k):
        piv = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if piv is None:
            return None
        aug[r], aug[piv] = aug[piv], aug[r]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                f = aug[i][col] / aug[r][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    if any(aug[i][k] != 0 for i in range(r, m)):
        return None
    return [aug[i][k] / aug[i][i] for i in range(k)]
