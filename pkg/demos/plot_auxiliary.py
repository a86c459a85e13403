"""
Optimizing through a linking map
================================

Minimize ``alpha^T x`` over the x-image of U under ``x = C w + b`` by solving
over U alone, then mapping the optimum back.
"""

import random

from efcheck import instances as inst
from efcheck.auxiliary import LinkingMap, check_equivalence, solve_direct, solve_via_auxiliary
from efcheck.suite import random_alpha

U = inst.u_bar()
link = LinkingMap(inst.map_a(), (1, 1, 1))

sol = solve_via_auxiliary(U, link, (1, 0, 0))
print(sol.to_json())
print(solve_direct(U, link, (1, 0, 0)).to_json())

###############################################################################
# The constant alpha^T b is the only difference
# ---------------------------------------------

rng = random.Random(3)
rep = check_equivalence(U, link, [random_alpha(rng, 3) for _ in range(5)])
for row in rep.to_json()["checks"]:
    print(row["alpha"], row["reduced"], "+", row["offset"], "=", row["direct"])
print(rep.notes)
