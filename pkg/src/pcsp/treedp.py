"""Partition functions by dynamic programming over a tree decomposition.

Every vertex and edge score is attached to one bag, giving one table per
bag.  Leaf bags are then absorbed into their parents one at a time: the
vertices private to the leaf are summed out and the resulting table on
the separator is multiplied into the parent's table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in

from .instance import ConstraintGraph, InvalidInstance, PcspInstance
from .ring import DegreeChecker, prune_z


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags (sorted vertex tuples) and tree edges between bag indices."""

    bags: tuple
    edges: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(tuple(sorted(b)) for b in self.bags))
        object.__setattr__(self, "edges", tuple((int(a), int(b)) for a, b in self.edges))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


@dataclass
class BagScoreTable:
    bag: int
    vertices: tuple
    values: dict


def validate_decomposition(T: TreeDecomposition, G: ConstraintGraph) -> list[str]:
    """Diagnostics for ``T`` as a tree decomposition of ``G``; empty when valid."""
    problems = []
    nb = len(T.bags)
    for a, b in T.edges:
        if not (0 <= a < nb and 0 <= b < nb) or a == b:
            problems.append(f"tree edge ({a}, {b}) is not between two distinct bags")
    if problems:
        return problems
    tree = nx.Graph()
    tree.add_nodes_from(range(nb))
    tree.add_edges_from(T.edges)
    if nb and not nx.is_tree(tree):
        problems.append("bag graph is not a tree")
    for i, bag in enumerate(T.bags):
        for v in bag:
            if not 0 <= v < G.n:
                problems.append(f"bag {i} holds unknown vertex {v}")
    holders = {v: [i for i, b in enumerate(T.bags) if v in b] for v in range(G.n)}
    for v, where in holders.items():
        if not where:
            problems.append(f"vertex {v} is in no bag")
    for x, y in G.edges:
        if not any(x in b and y in b for b in T.bags):
            problems.append(f"edge ({x}, {y}) uncovered")
    if nb and nx.is_tree(tree):
        for v, where in holders.items():
            if len(where) > 1 and not nx.is_connected(tree.subgraph(where)):
                problems.append(f"bags containing vertex {v} do not form a subtree")
    return problems


def greedy_decomposition(G: ConstraintGraph) -> TreeDecomposition:
    """Min-fill elimination heuristic; bags listed in sorted order."""
    if G.n == 0:
        return TreeDecomposition((), ())
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges)
    _, decomp = treewidth_min_fill_in(g)
    bags = sorted(decomp.nodes, key=lambda b: (sorted(b), len(b)))
    index = {b: i for i, b in enumerate(bags)}
    edges = sorted(tuple(sorted((index[a], index[b]))) for a, b in decomp.edges)
    return TreeDecomposition(tuple(bags), tuple(edges))


def assign_scores_to_bags(I: PcspInstance, T: TreeDecomposition) -> list[BagScoreTable]:
    """Tabulate each bag's product of associated vertex and edge scores.

    A vertex (edge) is associated with the lowest-indexed bag containing it
    (both endpoints).  The nullary score is not included.
    """
    problems = validate_decomposition(T, I.graph)
    if problems:
        raise InvalidInstance(problems[0])
    owner_v = {}
    for v in range(I.n):
        owner_v[v] = next(i for i, b in enumerate(T.bags) if v in b)
    owner_e = {}
    for x, y in I.graph.edges:
        owner_e[(x, y)] = next(i for i, b in enumerate(T.bags) if x in b and y in b)
    tables = []
    for bi, bag in enumerate(T.bags):
        pos = {v: p for p, v in enumerate(bag)}
        vs = [v for v in bag if owner_v[v] == bi]
        es = [e for e in I.graph.edges if owner_e[e] == bi]
        values = {}
        for colors in itertools.product(range(I.k), repeat=len(bag)):
            s = I.ring.one
            for v in vs:
                s = s * I.vertex[v][colors[pos[v]]]
            for x, y in es:
                s = s * I.edge[(x, y)][colors[pos[x]]][colors[pos[y]]]
            values[colors] = s
        tables.append(BagScoreTable(bi, bag, values))
    return tables


def solve_treedp(
    I: PcspInstance,
    T: TreeDecomposition | None = None,
    prune: str | None = None,
    debug: bool = False,
    stats: dict | None = None,
):
    """Partition function of ``I`` using decomposition ``T`` (greedy if omitted).

    The tree is rooted at bag 0.  Among current leaves the one with the
    smallest bag (then lowest index) is absorbed first.  With ``prune`` set
    every table entry is z-pruned; ``debug`` checks the degree bound on
    every entry.  If ``stats`` is a dict it receives ``max_table_size`` and
    ``max_live_tables``.
    """
    if T is None:
        T = greedy_decomposition(I.graph)
    if prune is not None:
        if I.registry is None:
            raise ValueError("pruning needs a symbolic instance")
        I.registry.index(prune)

        def pr(p):
            return prune_z(p, prune)
    else:
        def pr(p):
            return p
    chk = DegreeChecker.for_instance(I) if (debug and I.registry is not None) else None

    def fix(p):
        p = pr(p)
        if chk is not None:
            chk(p)
        return p

    tables = assign_scores_to_bags(I, T)
    nb = len(T.bags)
    nullary = fix(I.nullary)
    if nb == 0:
        return nullary

    vertices = {t.bag: t.vertices for t in tables}
    values = {t.bag: {c: fix(s) for c, s in t.values.items()} for t in tables}

    adj = {i: set() for i in range(nb)}
    for a, b in T.edges:
        adj[a].add(b)
        adj[b].add(a)
    parent = {0: None}
    children = {i: set() for i in range(nb)}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                children[u].add(w)
                stack.append(w)

    if stats is not None:
        stats["max_table_size"] = max(len(v) for v in values.values())
        stats["max_live_tables"] = len(values)

    live = set(range(1, nb))
    while live:
        leaf = min((b for b in live if not children[b]), key=lambda b: (len(vertices[b]), b))
        par = parent[leaf]
        lv, pv = vertices[leaf], vertices[par]
        shared = [v for v in lv if v in pv]
        lpos = [lv.index(v) for v in shared]
        marg: dict = {}
        for colors, s in values[leaf].items():
            key = tuple(colors[p] for p in lpos)
            marg[key] = marg[key] + s if key in marg else s
        marg = {key: fix(s) for key, s in marg.items()}
        ppos = [pv.index(v) for v in shared]
        ptab = values[par]
        for colors in ptab:
            ptab[colors] = fix(ptab[colors] * marg[tuple(colors[p] for p in ppos)])
        del values[leaf]
        live.discard(leaf)
        children[par].discard(leaf)

    total = I.ring.zero
    for s in values[0].values():
        total = total + s
    return fix(nullary * fix(total))


# ---------------------------------------------------------------------------
# PACE .td files

def read_td(text: str) -> TreeDecomposition:
    """Parse the PACE 2017 ``.td`` format (1-indexed bags and vertices)."""
    nbags = None
    bags: dict = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        try:
            if tok[0] == "s":
                if tok[1] != "td":
                    raise InvalidInstance(f"line {lineno}: expected 's td'")
                nbags = int(tok[2])
            elif tok[0] == "b":
                bags[int(tok[1]) - 1] = tuple(int(v) - 1 for v in tok[2:])
            else:
                a, b = int(tok[0]) - 1, int(tok[1]) - 1
                edges.append((a, b))
        except (IndexError, ValueError) as exc:
            if isinstance(exc, InvalidInstance):
                raise
            raise InvalidInstance(f"line {lineno}: {exc}") from exc
    if nbags is None:
        raise InvalidInstance("missing 's td' header")
    if sorted(bags) != list(range(nbags)):
        raise InvalidInstance(f"expected bags 1..{nbags}, found {sorted(b + 1 for b in bags)}")
    return TreeDecomposition(tuple(bags[i] for i in range(nbags)), tuple(edges))


def write_td(T: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(T.bags)} {T.width + 1} {n}"]
    for i, bag in enumerate(T.bags):
        lines.append(" ".join(["b", str(i + 1)] + [str(v + 1) for v in bag]))
    for a, b in T.edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"
