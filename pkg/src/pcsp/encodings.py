"""Constructors that express combinatorial problems as PCSP instances.

Each encoder returns a :class:`~pcsp.instance.PcspInstance` whose partition
function is a generating function for the problem:

========================  =========  ==========================================
encoder                   variables  score of an assignment
========================  =========  ==========================================
``encode_max_cut``        z          ``z**(weight of cut edges)``
``encode_max_dicut``      z          ``z**(weight of arcs from color 0 to 1)``
``encode_ising``          w, z       ``w**|V1| * z**(cut weight)``
``encode_clique``         w, z       ``w**|V1| * z**e(V1)``
``encode_judicious``      z0, z1     ``z0**e(V0) * z1**e(V1)``
========================  =========  ==========================================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .instance import ConstraintGraph, InvalidInstance, PcspInstance
from .ring import Poly, PolyRing, Registry, to_exponent


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph with exact edge weights (default 1)."""

    n: int
    edges: tuple = ()
    vertex_weights: tuple | None = None

    def __post_init__(self):
        seen = set()
        norm = []
        for e in self.edges:
            u, v = e[0], e[1]
            w = to_exponent(e[2]) if len(e) > 2 else 1
            if u == v:
                raise InvalidInstance(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInstance(f"edge ({u}, {v}) outside [0, {self.n})")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvalidInstance(f"parallel edge {key}")
            seen.add(key)
            norm.append((key[0], key[1], w))
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if self.vertex_weights is not None:
            if len(self.vertex_weights) != self.n:
                raise InvalidInstance("vertex_weights must have one entry per vertex")
            object.__setattr__(self, "vertex_weights",
                               tuple(to_exponent(w) for w in self.vertex_weights))

    @property
    def graph(self) -> ConstraintGraph:
        return ConstraintGraph(self.n, tuple((u, v) for u, v, _ in self.edges))

    def weight(self, u: int, v: int):
        for a, b, w in self.edges:
            if (a, b) == (min(u, v), max(u, v)):
                return w
        raise KeyError((u, v))


@dataclass(frozen=True)
class WeightedDigraph:
    """Directed graph, at most one arc per ordered pair, no self-loops."""

    n: int
    arcs: tuple = ()

    def __post_init__(self):
        seen = set()
        norm = []
        for a in self.arcs:
            u, v = a[0], a[1]
            w = to_exponent(a[2]) if len(a) > 2 else 1
            if u == v:
                raise InvalidInstance(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInstance(f"arc ({u}, {v}) outside [0, {self.n})")
            if (u, v) in seen:
                raise InvalidInstance(f"parallel arc ({u}, {v})")
            seen.add((u, v))
            norm.append((u, v, w))
        object.__setattr__(self, "arcs", tuple(sorted(norm)))


@dataclass(frozen=True)
class CspInstance:
    """Max-sum CSP with real scores: ``s_nullary``, ``s_vertex[v][i]``, ``s_edge[(x, y)][i][j]``."""

    graph: ConstraintGraph
    k: int
    s_nullary: object = 0
    s_vertex: tuple | None = None
    s_edge: Mapping[tuple, tuple] = field(default_factory=dict)

    def score(self, sigma) -> Fraction:
        """Additive score of an assignment, computed exactly."""
        total = Fraction(to_exponent(self.s_nullary))
        if self.s_vertex is not None:
            for v, c in enumerate(sigma):
                total += to_exponent(self.s_vertex[v][c])
        for (x, y), t in self.s_edge.items():
            total += to_exponent(t[sigma[x]][sigma[y]])
        return total


def lift_csp(C: CspInstance, var: str = "z") -> PcspInstance:
    """PCSP whose partition function is the generating function ``sum z**score``."""
    ring = PolyRing([var])
    reg = ring.registry

    def zpow(s):
        return Poly.monomial(reg, 1, {var: s})

    def vertex(v, i):
        return zpow(C.s_vertex[v][i]) if C.s_vertex is not None else None

    def edge(x, y, i, j):
        t = C.s_edge.get((x, y))
        return zpow(t[i][j]) if t is not None else None

    return PcspInstance.build(C.graph, C.k, ring, zpow(C.s_nullary), vertex, edge)


def mis_csp(graph: ConstraintGraph) -> CspInstance:
    """Maximum independent set as a plain CSP: +1 per chosen vertex, -2 per chosen edge."""
    return CspInstance(
        graph,
        2,
        0,
        tuple((0, 1) for _ in range(graph.n)),
        {e: ((0, 0), (0, -2)) for e in graph.edges},
    )


def encode_max_cut(G: WeightedGraph, k: int = 2) -> PcspInstance:
    """Max (k-)Cut: an edge whose endpoints get different colors scores ``z**weight``."""
    ring = PolyRing(["z"])
    reg = ring.registry
    weights = {(u, v): w for u, v, w in G.edges}

    def edge(x, y, i, j):
        if i == j:
            return None
        return Poly.monomial(reg, 1, {"z": weights[(x, y)]})

    return PcspInstance.build(G.graph, k, ring, None, None, edge)


def encode_max_dicut(D: WeightedDigraph) -> PcspInstance:
    """Max Dicut: arc ``u -> v`` scores ``z**w(uv)`` when ``u`` is color 0 and ``v`` color 1."""
    ring = PolyRing(["z"])
    reg = ring.registry
    w = {(u, v): wt for u, v, wt in D.arcs}
    graph = ConstraintGraph.from_edges(D.n, [(u, v) for u, v, _ in D.arcs])

    def edge(x, y, i, j):
        if i == 0 and j == 1:
            return Poly.monomial(reg, 1, {"z": w.get((x, y), 0)})
        if i == 1 and j == 0:
            return Poly.monomial(reg, 1, {"z": w.get((y, x), 0)})
        return None

    return PcspInstance.build(graph, 2, ring, None, None, edge)


def encode_ising(G: WeightedGraph) -> PcspInstance:
    """Ising model: ``w`` marks each vertex of color 1, ``z**weight`` each cut edge.

    Substituting ``w = exp(-beta*h)`` and ``z = exp(-beta*J)`` gives the
    usual partition function with coupling ``J`` and field ``h``.
    """
    ring = PolyRing(["w", "z"])
    reg = ring.registry
    wvar = ring.var("w")
    weights = {(u, v): wt for u, v, wt in G.edges}

    def vertex(v, i):
        return wvar if i == 1 else None

    def edge(x, y, i, j):
        if i == j:
            return None
        return Poly.monomial(reg, 1, {"z": weights[(x, y)]})

    return PcspInstance.build(G.graph, 2, ring, None, vertex, edge)


def encode_clique(G: WeightedGraph, weighted: bool = False) -> PcspInstance:
    """Clique/independent-set generating function.

    Color 1 means "chosen".  A chosen vertex scores ``w`` and an edge with
    both ends chosen scores ``z``, so ``k``-cliques are the terms
    ``w**k * z**(k*(k-1)/2)`` and independent ``k``-sets the terms
    ``w**k * z**0``.  With ``weighted=True`` a third variable ``u`` carries
    the total vertex weight of the chosen set (weights default to 1).
    """
    names = ["w", "z", "u"] if weighted else ["w", "z"]
    ring = PolyRing(names)
    reg = ring.registry

    def vertex(v, i):
        if i != 1:
            return None
        powers = {"w": 1}
        if weighted:
            powers["u"] = 1 if G.vertex_weights is None else G.vertex_weights[v]
        return Poly.monomial(reg, 1, powers)

    def edge(x, y, i, j):
        return ring.var("z") if i == 1 and j == 1 else None

    return PcspInstance.build(G.graph, 2, ring, None, vertex, edge)


def encode_judicious(G: WeightedGraph, balanced: bool = False) -> PcspInstance:
    """Judicious bipartition: ``z0`` per edge inside color 0, ``z1`` per edge inside color 1.

    With ``balanced=True`` a variable ``w`` marks color-0 vertices, so
    bisections are the terms of ``w``-degree ``n // 2``.
    """
    names = ["w", "z0", "z1"] if balanced else ["z0", "z1"]
    ring = PolyRing(names)
    z0, z1 = ring.var("z0"), ring.var("z1")
    wvar = ring.var("w") if balanced else None

    def vertex(v, i):
        return wvar if (balanced and i == 0) else None

    def edge(x, y, i, j):
        if i != j:
            return None
        return z0 if i == 0 else z1

    return PcspInstance.build(G.graph, 2, ring, None, vertex, edge)


_RENAME_CANDIDATES = "yxvutsrqponmlkjihgfedcba"


def _fresh_name(name: str, taken: set) -> str:
    for c in _RENAME_CANDIDATES:
        if c not in taken:
            return c
    i = 1
    while f"{name}{i}" in taken:
        i += 1
    return f"{name}{i}"


def combine_simultaneous(I1: PcspInstance, I2: PcspInstance) -> PcspInstance:
    """Instance scoring every assignment by the product of its two scores.

    Variables of ``I2`` that clash with ``I1`` are renamed to the first free
    name among ``y, x, v, ...``; the merged registry lists ``I1``'s variables
    first.
    """
    if I1.n != I2.n or I1.k != I2.k:
        raise ValueError("instances must share vertex count and domain size")
    if I1.graph.edges != I2.graph.edges:
        raise ValueError("instances must share the constraint graph")
    r1, r2 = I1.registry, I2.registry
    if r1 is None or r2 is None:
        raise ValueError("combine_simultaneous needs symbolic instances")
    taken = set(r1.names) | set(r2.names)
    rename = {}
    for name in r2.names:
        if name in r1:
            new = _fresh_name(name, taken)
            taken.add(new)
            rename[name] = new
    reg = Registry(list(r1.names) + [rename.get(nm, nm) for nm in r2.names])
    ring = PolyRing(reg)
    graph = I1.graph

    def a(p):
        return p.embed(reg)

    def b(p):
        return p.embed(reg, rename)

    def vertex(v, i):
        return a(I1.vertex[v][i]) * b(I2.vertex[v][i])

    def edge(x, y, i, j):
        return a(I1.edge[(x, y)][i][j]) * b(I2.edge[(x, y)][i][j])

    return PcspInstance.build(graph, I1.k, ring, a(I1.nullary) * b(I2.nullary), vertex, edge)


def trivial_instance(graph: ConstraintGraph, k: int, names=()) -> PcspInstance:
    """Every score equal to 1; partition function ``k**n``."""
    return PcspInstance.build(graph, k, PolyRing(list(names)))


# ---------------------------------------------------------------------------
# graph files

def read_graph(text: str) -> WeightedGraph | WeightedDigraph:
    """Parse a DIMACS-like edge list (1-indexed vertices).

    ``p edge <n> <m>`` then ``e <u> <v> [weight]`` lines, or ``a <u> <v>
    <weight>`` lines for a digraph.  ``c`` and ``#`` lines are comments.
    """
    n = None
    edges, arcs = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        try:
            if tok[0] == "p":
                n = int(tok[2])
            elif tok[0] == "e":
                w = tok[3] if len(tok) > 3 else 1
                edges.append((int(tok[1]) - 1, int(tok[2]) - 1, w))
            elif tok[0] == "a":
                w = tok[3] if len(tok) > 3 else 1
                arcs.append((int(tok[1]) - 1, int(tok[2]) - 1, w))
            else:
                raise InvalidInstance(f"line {lineno}: unknown record {tok[0]!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, InvalidInstance):
                raise
            raise InvalidInstance(f"line {lineno}: {exc}") from exc
    if n is None:
        raise InvalidInstance("missing 'p edge <n> <m>' header")
    if edges and arcs:
        raise InvalidInstance("mixed 'e' and 'a' records")
    if arcs:
        return WeightedDigraph(n, tuple(arcs))
    return WeightedGraph(n, tuple(edges))


def write_graph(G: WeightedGraph) -> str:
    lines = [f"p edge {G.n} {len(G.edges)}"]
    for u, v, w in G.edges:
        lines.append(f"e {u + 1} {v + 1}" + ("" if w == 1 else f" {w}"))
    return "\n".join(lines) + "\n"
