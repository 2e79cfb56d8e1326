"""
How much rationality hides irrationality
========================================

Mix the uniform RUM with an irrational model.  Past alpha-bar every mixture
passes the RUM test, so the data can no longer reject rationality.
"""

from fractions import Fraction

from irum import (
    AlternativeSet,
    ChoiceFunction,
    IrrationalFamily,
    RandomChoiceModel,
    aggregate,
    alpha_bar,
    is_rum,
    mixture,
    preferences,
)

csf = AlternativeSet(("c", "s", "f"))
uniform = aggregate(RandomChoiceModel.from_preferences({p: Fraction(1, 6) for p in preferences(3)}, csf))

everything = IrrationalFamily.all_rcms(csf)
result = alpha_bar(uniform, everything)
print("all RCMs: alpha-bar =", result.alpha_bar)

worst = aggregate(result.worst_vertex)
for alpha in (result.alpha_bar - Fraction(1, 100), result.alpha_bar):
    print(f"  alpha = {alpha}: RUM {bool(is_rum(mixture(alpha, uniform, worst)))}")

c1 = ChoiceFunction.from_mapping(csf, {"csf": "s", "cs": "c", "cf": "c", "sf": "s"})
c2 = ChoiceFunction.from_mapping(csf, {"csf": "c", "cs": "s", "cf": "c", "sf": "s"})
small = IrrationalFamily.finite([RandomChoiceModel(((c1, Fraction(2, 3)), (c2, Fraction(1, 3))))])
print("2:1 mixture of two WARP violators: alpha-bar =", alpha_bar(uniform, small).alpha_bar)
