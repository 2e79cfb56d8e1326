"""
Irrational share in two-budget demand data
==========================================

Only the share choosing each segment of each budget is observed.  The joint
table, and with it the share violating revealed preference, is pinned down
only up to an interval.
"""

from fractions import Fraction

from irum import TwoBudgetData, extremal_table, irrational_share_bounds
from irum.demand import MAX_IRRATIONAL, MIN_IRRATIONAL

data = TwoBudgetData(
    pi_1_1=Fraction(3, 10), pi_2_1=Fraction(7, 10),
    pi_1_2=Fraction(4, 5), pi_2_2=Fraction(1, 5),
)
lo, hi = irrational_share_bounds(data)
print(f"irrational share lies in [{lo}, {hi}]")

for target in (MIN_IRRATIONAL, MAX_IRRATIONAL):
    table = extremal_table(data, target)
    print(target, [str(q) for q in table.cells()], table.matches(data))
