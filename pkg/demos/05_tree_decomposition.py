# Dynamic programming over a tree decomposition.
#
# Tables live on bags; leaves are summed out into their parents.  Table
# size is k^(bag size), so grids with small width go fast even when 2^n
# enumeration is out of reach.

import time

from pcsp import encode_max_cut, greedy_decomposition, solve_treedp, write_td
from pcsp.encodings import WeightedGraph


def grid(rows, cols):
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return WeightedGraph(rows * cols, tuple(edges))


for rows, cols in ((3, 3), (4, 8), (5, 10)):
    G = grid(rows, cols)
    T = greedy_decomposition(G.graph)
    stats = {}
    t = time.perf_counter()
    Z = solve_treedp(encode_max_cut(G), T, stats=stats)
    dt = time.perf_counter() - t
    top = max(Z.terms, key=lambda term: term[0])
    print(f"{rows}x{cols}: width {T.width}, {len(T.bags)} bags, "
          f"largest table {stats['max_table_size']}, {dt:.2f}s, max cut {top[0][0]}")

# PACE .td output for the small grid
print()
print(write_td(greedy_decomposition(grid(3, 3).graph), 9))
