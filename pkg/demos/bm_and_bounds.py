"""
Block-Marschak polynomials and correlation bounds
=================================================
"""

from fractions import Fraction

from irum import (
    AlternativeSet,
    RandomChoiceModel,
    StochasticChoiceFunction,
    aggregate,
    bm_table,
    is_rum,
    satisfies_correlation_bounds,
    satisfies_weak_correlation_bounds,
    weak_correlation_value,
)

abc = AlternativeSet(("a", "b", "c"))

# a is always chosen from abc but only two thirds of the time from ab
rho = StochasticChoiceFunction.from_table(abc, {
    "abc": {"a": 1, "b": 0, "c": 0},
    "ab": {"a": Fraction(2, 3), "b": Fraction(1, 3)},
    "ac": {"a": 1, "c": 0},
    "bc": {"b": 1, "c": 0},
})
table = bm_table(rho)
print("RUM:", bool(is_rum(rho)), " smallest BM value:", table.minimum())
for (a, menu), value in table.values.items():
    if value < 0:
        print("  negative at", abc.labels[a], abc.menu_key(menu), value)

# the weak bound is necessary but strictly weaker than the full one
mu = {
    abc.preference("a>b>c"): Fraction(2, 5),
    abc.preference("a>c>b"): Fraction(2, 5),
    abc.preference("b>c>a"): Fraction(1, 10),
    abc.preference("c>b>a"): Fraction(1, 10),
}
rho = aggregate(RandomChoiceModel.from_preferences(mu, abc))
for pref in mu:
    print(abc.preference_name(pref), "weak sum:", weak_correlation_value(rho, pref))
print("weak bounds:", satisfies_weak_correlation_bounds(rho).ok, " full bounds:", satisfies_correlation_bounds(rho).ok)
