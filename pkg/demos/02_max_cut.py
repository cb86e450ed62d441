# Max Cut as a generating function.
#
# Each of the 2^n two-colorings contributes z^(number of cut edges), so
# the coefficient of z^c counts colorings with cut size c.  Every cut
# appears twice (swap the colors), hence all coefficients are even.

import time

from pcsp import WeightedGraph, encode_max_cut, extract, format_report, Readout, solve

petersen = WeightedGraph(10, tuple(
    [(i, (i + 1) % 5) for i in range(5)]
    + [(i, i + 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
))
I = encode_max_cut(petersen)

for method in ("oracle", "reduce", "treedp", "splitlist"):
    t = time.perf_counter()
    Z = solve(I, method)
    print(f"{method:9s} {time.perf_counter() - t:6.3f}s  {Z}")

print()
print(format_report(extract(Readout("maxcut"), Z)))

# Only the optimum is needed?  Prune z and the work shrinks to one term.
print("pruned:", solve(I, "reduce", prune="z"))

# Weighted edges become fractional exponents, Max k-Cut just uses k colors.
print("\nweight 2.5 edge:", solve(encode_max_cut(WeightedGraph(2, ((0, 1, 2.5),)))))
triangle = WeightedGraph(3, ((0, 1), (0, 2), (1, 2)))
print("K3 with 3 colors:", solve(encode_max_cut(triangle, k=3)))
