# One Ising partition function, several answers.
#
# Z(w, z) sums w^|V1| z^cut over all 2-colorings.  Fixing the w-degree to
# n/2 isolates bisections; evaluating at w = exp(-beta*h), z = exp(-beta*J)
# gives the physical partition function.

import math

from pcsp import Readout, WeightedGraph, coefficient_of, encode_ising, evaluate, extract, format_report, solve

cycle = WeightedGraph(4, ((0, 1), (1, 2), (2, 3), (0, 3)))
I = encode_ising(cycle)
Z = solve(I)
print("Z(C4) =", Z)
print("bisections (w^2 part):", coefficient_of(Z, {"w": 2}))
print(format_report(extract(Readout("bisection", 4), Z)))
print(format_report(extract(Readout("sparsest", 4), Z)))

# Symbolic once, numeric many times: compare against a float-ring solve.
print("\n beta     symbolic            numeric")
for beta in (0.1, 0.5, 1.0, 2.0):
    point = {"w": math.exp(-beta * 0.3), "z": math.exp(-beta * 1.0)}
    print(f"{beta:5.1f}  {evaluate(Z, point):.15f}  {solve(I.numeric(point)):.15f}")
