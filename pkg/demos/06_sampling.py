# Optimal assignments and samples from conditional partition functions.
#
# Fix vertices one at a time; the k conditional partition functions tell
# which colors still extend to an optimum (and how many ways), or, at a
# numeric point, the exact Gibbs conditional probabilities.

from collections import Counter

from pcsp import (
    WeightedGraph,
    construct_optimal,
    count_optimal,
    encode_ising,
    encode_max_cut,
    sample_gibbs_many,
    sample_optimal_many,
)

triangle = WeightedGraph(3, ((0, 1), (0, 2), (1, 2)))
I = encode_max_cut(triangle)
print("optimal cut size and count:", count_optimal(I, "z"))
print("first optimal coloring:", construct_optimal(I, "z"))

draws = Counter(sample_optimal_many(I, "z", 6000, seed=42))
for sigma, c in sorted(draws.items()):
    print(" ", sigma, c)

# A single spin in a field: P(up) = w / (1 + w).
spin = encode_ising(WeightedGraph(1))
ups = sum(s[0] for s in sample_gibbs_many(spin, {"w": 3.0}, 10000, seed=42))
print("\nP(up) at w=3: empirical", ups / 10000, "exact", 0.75)
