"""
One point, three verdicts
=========================

A single-point polytope in w-space and a single-point polytope in x-space,
with no constraint tying them together. Whether the first "extends" the
second depends on which definition of extended formulation is used.
"""

from efcheck import instances as inst
from efcheck.ef import check_ef_iff, check_ef_linear_map, check_ef_standard, verify_map_image
from efcheck.numeric import format_vector
from efcheck.vertices import enumerate_vertices

U = inst.u_bar()
X = inst.x_point()
print(U.pretty())
print("vertices of U:", [format_vector(v) for v in enumerate_vertices(U).vertices])

###############################################################################
# Projection definition
# ---------------------
# Place U next to three untouched x variables. Nothing restricts x, so the
# projection onto x is all of R^3 and cannot be the bounded set X.

embedded = inst.u_bar_embedded()
for check in (check_ef_standard, check_ef_iff):
    v = check(embedded, X)
    print(v.definition.value, v.holds, v.notes)

###############################################################################
# Linear-image definition
# -----------------------
# A linear map only has to send the one vertex of U to the one point of X.

v = check_ef_linear_map(U, X)
print("map", v.holds)
print(v.witness.M.to_json())
ok, report = verify_map_image(U, inst.map_a(), X)
print("the 3x5 map A works too:", ok, report["images"][0]["image"])

###############################################################################
# Tying x to w
# ------------
# Adding the rows x - A w = 0 makes the projection equal X under every
# definition.

print(check_ef_standard(inst.u_prime(), X).holds)
