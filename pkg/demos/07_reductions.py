# Watching the reductive solver work.
#
# Low-degree vertices are folded into their neighbours without branching;
# only when every vertex has degree >= 3 does the solver branch.

from pcsp import WeightedGraph, branch_type3, encode_max_cut, reduce_type2, solve_reductive

K4 = WeightedGraph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))
trace = []
Z = solve_reductive(encode_max_cut(K4), trace=trace)
for step in trace:
    print(step)
print("Z(K4) =", Z)

# Branching on vertex 0 gives two triangles whose partition functions add up.
kids = branch_type3(encode_max_cut(K4), 0)
for i, kid in enumerate(kids):
    print(f"branch {i}: vertex scores {[[str(s) for s in row] for row in kid.vertex]}")
print("sum of branches:", solve_reductive(kids[0]) + solve_reductive(kids[1]))

# Folding a triangle vertex into the opposite edge.
tri = encode_max_cut(WeightedGraph(3, ((0, 1), (0, 2), (1, 2))))
edge = reduce_type2(tri, 2).edge[(0, 1)]
print("\nedge table after removing vertex 2:")
for row in edge:
    print("  ", [str(s) for s in row])
