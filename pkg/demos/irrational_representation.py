"""
Rationalizing a RUM with irrational consumers
=============================================

Half the consumers rank coffee > soda > fries, half soda > coffee > fries.
The same choice data can come from two choice functions that violate
WARP, and a small shift in the shares breaks that.
"""

from fractions import Fraction

from irum import AlternativeSet, RandomChoiceModel, aggregate, is_irum, is_rational, satisfies_correlation_bounds

csf = AlternativeSet(("c", "s", "f"))
p1 = csf.preference("c>s>f")
p2 = csf.preference("s>c>f")

rho = aggregate(RandomChoiceModel.from_preferences({p1: Fraction(1, 2), p2: Fraction(1, 2)}, csf))
verdict = is_irum(rho)
print("RUM:", verdict.is_rum, " bounds:", verdict.bounds_ok, " I-RUM:", verdict.is_irum)

# every member of the witness fails WARP, yet the mixture reproduces rho
for c, w in verdict.witness.support:
    print(w, {csf.menu_key(m): csf.labels[x] for m, x in c.items()}, "rational:", is_rational(c) is not None)
assert aggregate(verdict.witness) == rho

# at 51/100 the heavier preference breaks its correlation bound
shifted = aggregate(RandomChoiceModel.from_preferences({p1: Fraction(51, 100), p2: Fraction(49, 100)}, csf))
print("51/100 bounds hold:", satisfies_correlation_bounds(shifted).ok, " I-RUM:", is_irum(shifted).is_irum)
