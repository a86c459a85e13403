"""
Spanning-tree models on K4
==========================

The subtour model has a row per vertex subset. The flow-style model has
polynomially many rows and more variables. Both give the Kruskal weight.
"""

from fractions import Fraction

from efcheck.mstp import (build_edmonds, build_martin, build_martin_restated, check_subtour_redundancy,
                          complete_graph, kruskal, paradox_demo, solve_model)

g = complete_graph(4, [3, Fraction(1, 2), 4, 1, 5, 9])
print(g.to_text())
print("kruskal:", kruskal(g))

for build in (build_edmonds, build_martin, build_martin_restated):
    f = build(g)
    print(f"{f.label.value:16} rows={f.n_rows:3} vars={f.n_vars:3} value={solve_model(f).value}")

###############################################################################
# Every subtour row is implied by the compact model
# -------------------------------------------------

rep = check_subtour_redundancy(g)
for S, value, bound in rep.entries:
    print(S, value, "<=", bound)

###############################################################################
# Adding the implied rows changes the size, not the optimum
# ---------------------------------------------------------

par = paradox_demo(g)
print(par.counts)
print({k: str(v) for k, v in par.optima.items()})
