"""
Some irrational consumers
=========================

A RUM admits a representation with positive irrational mass exactly when
two menus share two alternatives that are each chosen from both.
"""

from fractions import Fraction

from irum import AlternativeSet, RandomChoiceModel, aggregate, is_pirum, is_rational, pirum_representation, rum_decompose_irum_dual

csf = AlternativeSet(("c", "s", "f"))
mu = {
    csf.preference("c>s>f"): Fraction(1, 2),
    csf.preference("s>c>f"): Fraction(1, 3),
    csf.preference("f>s>c"): Fraction(1, 6),
}
rho = aggregate(RandomChoiceModel.from_preferences(mu, csf))

verdict = is_pirum(rho)
first, second = verdict.witness_menus[:2]
print("pI-RUM:", verdict.is_pirum, " menus:", csf.menu_key(first), csf.menu_key(second))


def irrational_mass(model):
    return sum((w for c, w in model.support if is_rational(c) is None), Fraction(0))


# swapping two preferences on a three-element menu moves mass to irrational functions
model = pirum_representation(rho, mu)
assert aggregate(model) == rho
print("swap witness, irrational mass:", irrational_mass(model))

# repeated swaps peel off an I-RUM pool and leave a dual RUM
split = rum_decompose_irum_dual(mu, csf)
assert split.aggregate() == rho
print("pool weight:", split.irrational_weight, " steps:", len(split.steps))
print("residual support:", {csf.preference_name(p): str(w) for p, w in split.residual_dual.as_distribution().items()})
