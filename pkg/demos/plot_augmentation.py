"""
Any two polyhedra are extensions of each other
==============================================

Stack P1 and P2 with a block of rows ``B1 x1 + B2 x2 - u <= 0`` where u only
has a lower bound. The stacked set W projects onto P1 and onto P2.
"""

import random

from efcheck.augmentation import build_augmentation, build_example_1, demonstrate_mutual_ef, random_spec

spec = build_example_1()
W = build_augmentation(spec)
print(W.poly.pretty())

###############################################################################
# The four facts
# --------------

report = demonstrate_mutual_ef(spec)
for fact in report.facts:
    print(f"{fact.holds!s:5}  {fact.name}")
print("rows induced by eliminating u:", report.u_elimination_induced_rows)
for line in report.conclusions:
    print(line)

###############################################################################
# Nothing special about this pair
# -------------------------------

rng = random.Random(0)
print([demonstrate_mutual_ef(random_spec(rng)).valid for _ in range(5)])
