"""PCSP instances, assignment scores, and the brute-force oracle."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .ring import FloatRing, PolyRing, Registry, evaluate, parse, render

DEFAULT_GUARD_LOG2 = 24


class GuardExceeded(RuntimeError):
    """An enumeration or table would exceed its configured size guard."""


class InvalidInstance(ValueError):
    """The instance violates a structural invariant."""


@dataclass(frozen=True)
class ConstraintGraph:
    """Simple undirected graph on vertices ``0..n-1``; edges stored as ``(x, y)`` with ``x < y``."""

    n: int
    edges: tuple = ()

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "ConstraintGraph":
        norm = sorted({(min(u, v), max(u, v)) for u, v in edges})
        return cls(n, tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[set]:
        adj = [set() for _ in range(self.n)]
        for x, y in self.edges:
            adj[x].add(y)
            adj[y].add(x)
        return adj


@dataclass(frozen=True, eq=False)
class PcspInstance:
    """A 2-PCSP (or RCSP) instance over domain ``[k]``.

    ``vertex[v][i]`` is the score of color ``i`` on ``v`` and
    ``edge[(x, y)][i][j]`` (``x < y``) the score of colors ``i`` on ``x``
    and ``j`` on ``y``.  Scores are elements of ``ring``.
    """

    graph: ConstraintGraph
    k: int
    ring: object
    nullary: object
    vertex: tuple
    edge: Mapping[tuple, tuple] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        graph: ConstraintGraph,
        k: int,
        ring,
        nullary=None,
        vertex: Callable[[int, int], object] | None = None,
        edge: Callable[[int, int, int, int], object] | None = None,
    ) -> "PcspInstance":
        """Construct an instance; missing or ``None`` scores default to ``ring.one``."""
        one = ring.one

        def pick(x):
            return one if x is None else x

        vt = tuple(
            tuple(pick(vertex(v, i)) if vertex else one for i in range(k))
            for v in range(graph.n)
        )
        et = {
            (x, y): tuple(
                tuple(pick(edge(x, y, i, j)) if edge else one for j in range(k))
                for i in range(k)
            )
            for x, y in graph.edges
        }
        return cls(graph, k, ring, pick(nullary), vt, et)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    @property
    def registry(self) -> Registry | None:
        return getattr(self.ring, "registry", None)

    def edge_score(self, x: int, y: int, i: int, j: int):
        """Score of colors ``i`` on ``x`` and ``j`` on ``y`` for either orientation."""
        if x < y:
            return self.edge[(x, y)][i][j]
        return self.edge[(y, x)][j][i]

    def all_scores(self):
        yield self.nullary
        for row in self.vertex:
            yield from row
        for table in self.edge.values():
            for row in table:
                yield from row

    def map_scores(self, f: Callable, ring=None) -> "PcspInstance":
        """Apply ``f`` to every score, producing an instance over ``ring``."""
        ring = self.ring if ring is None else ring
        return PcspInstance(
            self.graph,
            self.k,
            ring,
            f(self.nullary),
            tuple(tuple(f(s) for s in row) for row in self.vertex),
            {e: tuple(tuple(f(s) for s in row) for row in t) for e, t in self.edge.items()},
        )

    def numeric(self, point: Mapping[str, float]) -> "PcspInstance":
        """The same instance over :class:`FloatRing`, every score evaluated at ``point``."""
        return self.map_scores(lambda p: evaluate(p, point), FloatRing())

    def relabel(self, perm: Sequence[int]) -> "PcspInstance":
        """Rename vertex ``v`` to ``perm[v]``; tables move with their vertices."""
        n = self.n
        if sorted(perm) != list(range(n)):
            raise ValueError("perm must be a permutation of range(n)")
        vertex = [None] * n
        for v in range(n):
            vertex[perm[v]] = self.vertex[v]
        edge = {}
        for (x, y), t in self.edge.items():
            a, b = perm[x], perm[y]
            if a < b:
                edge[(a, b)] = t
            else:
                edge[(b, a)] = tuple(zip(*t))
        graph = ConstraintGraph(n, tuple(sorted(edge)))
        return PcspInstance(graph, self.k, self.ring, self.nullary, tuple(vertex), edge)


def _check_color(I: PcspInstance, c) -> None:
    if not isinstance(c, int) or not 0 <= c < I.k:
        raise ValueError(f"color {c!r} outside [0, {I.k})")


def score_assignment(I: PcspInstance, sigma: Sequence[int]):
    """Product of the nullary, vertex and edge scores selected by a total assignment."""
    if len(sigma) != I.n:
        raise ValueError(f"assignment has length {len(sigma)}, expected {I.n}")
    for c in sigma:
        if c is None:
            raise ValueError("assignment is partial")
        _check_color(I, c)
    s = I.nullary
    for v, c in enumerate(sigma):
        s = s * I.vertex[v][c]
    for (x, y), t in I.edge.items():
        s = s * t[sigma[x]][sigma[y]]
    return s


def check_guard(k: int, n: int, guard_log2: int) -> None:
    if k ** n > 2 ** guard_log2:
        raise GuardExceeded(f"{k}^{n} assignments exceeds guard 2^{guard_log2}")


def brute_force_partition(I: PcspInstance, guard_log2: int = DEFAULT_GUARD_LOG2):
    """Sum of :func:`score_assignment` over all ``k**n`` assignments.

    Enumerates depth-first over vertices in index order, reusing the partial
    product of the already-colored prefix.  This is the reference every
    solver is checked against.
    """
    check_guard(I.k, I.n, guard_log2)
    n, k = I.n, I.k
    back = [[] for _ in range(n)]
    for (x, y), t in I.edge.items():
        back[y].append((x, t))
    sigma = [0] * n

    def rec(v, partial):
        if v == n:
            return partial
        total = I.ring.zero
        for c in range(k):
            s = partial * I.vertex[v][c]
            for x, t in back[v]:
                s = s * t[sigma[x]][c]
            if s == 0:
                continue
            sigma[v] = c
            total = total + rec(v + 1, s)
        return total

    return rec(0, I.nullary)


def enumerate_assignments(n: int, k: int):
    """All total assignments in lexicographic order."""
    return itertools.product(range(k), repeat=n)


def validate(I: PcspInstance) -> list[str]:
    """Structural diagnostics; an empty list means the instance is well formed."""
    problems = []
    g = I.graph
    if not isinstance(I.k, int) or I.k < 1:
        problems.append(f"domain size k={I.k!r} must be a positive integer")
        return problems
    if g.n < 0:
        problems.append(f"negative vertex count {g.n}")
        return problems
    seen = set()
    for e in g.edges:
        x, y = e
        if x == y:
            problems.append(f"self-loop at vertex {x}")
        elif x > y:
            problems.append(f"edge {e} not in x<y form")
        if not (0 <= min(x, y) and max(x, y) < g.n):
            problems.append(f"edge {e} has endpoint outside [0, {g.n})")
        if (min(x, y), max(x, y)) in seen:
            problems.append(f"duplicate edge {e}")
        seen.add((min(x, y), max(x, y)))
    for e in I.edge:
        if e not in g.edges:
            if e[0] > e[1]:
                problems.append(f"edge table {e} not in x<y form")
            else:
                problems.append(f"edge table {e} has no matching graph edge")
    for e in g.edges:
        if e not in I.edge:
            problems.append(f"missing edge table for {e}")
    if len(I.vertex) != g.n:
        problems.append(f"vertex table has {len(I.vertex)} rows, expected {g.n}")
    for v, row in enumerate(I.vertex):
        if len(row) != I.k:
            problems.append(f"vertex {v} has {len(row)} scores, expected {I.k}")
    for e, t in I.edge.items():
        if len(t) != I.k or any(len(r) != I.k for r in t):
            problems.append(f"edge table {e} is not {I.k}x{I.k}")
    contains = getattr(I.ring, "contains", None)
    if contains is not None:
        if not contains(I.nullary):
            problems.append("nullary score is not a ring element")
        for v, row in enumerate(I.vertex):
            for i, s in enumerate(row):
                if not contains(s):
                    problems.append(f"vertex score ({v}, {i}) is not a ring element")
        for e, t in I.edge.items():
            for i, row in enumerate(t):
                for j, s in enumerate(row):
                    if not contains(s):
                        problems.append(f"edge score {e}({i}, {j}) is not a ring element")
    return problems


def restrict(I: PcspInstance, fixed: Mapping[int, int]) -> tuple[PcspInstance, list[int]]:
    """Fix the colors of some vertices and delete them.

    Each fixed vertex folds its own score into the nullary score and its
    edge scores into the free neighbours' vertex scores (edges between two
    fixed vertices go to the nullary score).  Returns the smaller instance
    and the list mapping its vertices back to the originals.
    """
    for v, c in fixed.items():
        if not 0 <= v < I.n:
            raise ValueError(f"vertex {v} outside [0, {I.n})")
        _check_color(I, c)
    keep = [v for v in range(I.n) if v not in fixed]
    new_index = {v: i for i, v in enumerate(keep)}
    nullary = I.nullary
    for v, c in fixed.items():
        nullary = nullary * I.vertex[v][c]
    vertex = [list(I.vertex[v]) for v in keep]
    edge = {}
    for (x, y), t in I.edge.items():
        fx, fy = x in fixed, y in fixed
        if fx and fy:
            nullary = nullary * t[fixed[x]][fixed[y]]
        elif fx:
            row = vertex[new_index[y]]
            for j in range(I.k):
                row[j] = row[j] * t[fixed[x]][j]
        elif fy:
            row = vertex[new_index[x]]
            for i in range(I.k):
                row[i] = row[i] * t[i][fixed[y]]
        else:
            edge[(new_index[x], new_index[y])] = t
    graph = ConstraintGraph(len(keep), tuple(sorted(edge)))
    sub = PcspInstance(graph, I.k, I.ring, nullary, tuple(tuple(r) for r in vertex), edge)
    return sub, keep


# ---------------------------------------------------------------------------
# instance text format

def write_instance(I: PcspInstance) -> str:
    """Serialise a symbolic instance to the line-oriented ``pcsp`` format."""
    if I.registry is None:
        raise ValueError("only symbolic instances can be written")
    one = I.ring.one
    lines = [f"pcsp {I.n} {I.m} {I.k}"]
    lines += [f"var {name}" for name in I.registry.names]
    if I.nullary != one:
        lines.append(f"nullary {render(I.nullary)}")
    for v, row in enumerate(I.vertex):
        for i, s in enumerate(row):
            if s != one:
                lines.append(f"v {v} {i} {render(s)}")
    for (x, y) in I.graph.edges:
        t = I.edge[(x, y)]
        for i in range(I.k):
            for j in range(I.k):
                lines.append(f"e {x} {y} {i} {j} {render(t[i][j])}")
    return "\n".join(lines) + "\n"


def read_instance(text: str) -> PcspInstance:
    """Parse the ``pcsp`` format.  Omitted scores are 1; ``#`` starts a comment."""
    header = None
    names: list[str] = []
    nullary_txt = None
    vertex_txt: dict = {}
    edge_txt: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split(None, 1)
        kind = tok[0]
        rest = tok[1] if len(tok) > 1 else ""
        try:
            if kind == "pcsp":
                n, m, k = (int(x) for x in rest.split())
                header = (n, m, k)
            elif kind == "var":
                names.append(rest.strip())
            elif kind == "nullary":
                nullary_txt = rest
            elif kind == "v":
                v, i, poly = rest.split(None, 2)
                vertex_txt[(int(v), int(i))] = poly
            elif kind == "e":
                x, y, i, j, poly = rest.split(None, 4)
                x, y, i, j = int(x), int(y), int(i), int(j)
                if x == y:
                    raise InvalidInstance(f"line {lineno}: self-loop at vertex {x}")
                if x > y:
                    x, y, i, j = y, x, j, i
                edge_txt.setdefault((x, y), {})[(i, j)] = poly
            else:
                raise InvalidInstance(f"line {lineno}: unknown record {kind!r}")
        except ValueError as exc:
            if isinstance(exc, InvalidInstance):
                raise
            raise InvalidInstance(f"line {lineno}: {exc}") from exc
    if header is None:
        raise InvalidInstance("missing 'pcsp <n> <m> <k>' header")
    n, m, k = header
    ring = PolyRing(Registry(names))
    reg = ring.registry
    for (v, i) in vertex_txt:
        if not (0 <= v < n and 0 <= i < k):
            raise InvalidInstance(f"vertex record ({v}, {i}) out of range")
    for (x, y), entries in edge_txt.items():
        if not (0 <= x < n and 0 <= y < n):
            raise InvalidInstance(f"edge ({x}, {y}) out of range")
        for (i, j) in entries:
            if not (0 <= i < k and 0 <= j < k):
                raise InvalidInstance(f"edge ({x}, {y}) colors ({i}, {j}) out of range")
    if len(edge_txt) != m:
        raise InvalidInstance(f"header declares {m} edges, found {len(edge_txt)}")
    graph = ConstraintGraph(n, tuple(sorted(edge_txt)))

    def vertex(v, i):
        t = vertex_txt.get((v, i))
        return None if t is None else parse(t, reg)

    def edge(x, y, i, j):
        t = edge_txt[(x, y)].get((i, j))
        return None if t is None else parse(t, reg)

    nullary = None if nullary_txt is None else parse(nullary_txt, reg)
    return PcspInstance.build(graph, k, ring, nullary, vertex, edge)
