# Cliques and independent sets from the same polynomial.
#
# A chosen vertex scores w, an edge with both ends chosen scores z.
# k-cliques are the terms w^k z^(k(k-1)/2), independent k-sets w^k z^0.

import itertools
import random

from pcsp import Readout, WeightedGraph, encode_clique, extract, solve

rng = random.Random(4)
n = 8
G = WeightedGraph(n, tuple(e for e in itertools.combinations(range(n), 2) if rng.random() < 0.45))
print("edges:", [(u, v) for u, v, _ in G.edges])

Z = solve(encode_clique(G))
print("Z =", Z)
print(extract(Readout("clique"), Z))
print(extract(Readout("mis"), Z))

# Check against plain subset enumeration.
edges = {(u, v) for u, v, _ in G.edges}
best = max(r for r in range(1, n + 1) for s in itertools.combinations(range(n), r)
           if all(p in edges for p in itertools.combinations(s, 2)))
print("largest clique by enumeration:", best)
