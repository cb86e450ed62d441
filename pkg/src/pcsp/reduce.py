"""Reductive partition-function solver.

Vertices of degree 0, 1 and 2 are eliminated without branching (Type 0, 1
and 2 reductions); a vertex of degree 3 or more is branched on, giving
``k`` instances whose partition functions sum to the original (Type 3).
Disconnected instances are split into components whose partition
functions multiply.  Every rule works over any commutative ring.

Optionally every intermediate is z-pruned, which yields the pruned
partition function for instances with nonnegative coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .instance import ConstraintGraph, PcspInstance
from .ring import DegreeChecker, prune_z

TYPE0_ISOLATED = "Type0Isolated"
TYPE0_SPLIT = "Type0Split"
TYPE1 = "Type1"
TYPE2 = "Type2"
TYPE3 = "Type3"


@dataclass(frozen=True)
class ReductionStep:
    kind: str
    pivot: Optional[int]
    n: int
    m: int
    results: int

    def __str__(self) -> str:
        pivot = "-" if self.pivot is None else self.pivot
        return f"{self.kind} pivot={pivot} n={self.n} m={self.m} -> {self.results}"


def _identity(x):
    return x


class _State:
    """Mutable working copy of an instance keyed by original vertex labels."""

    __slots__ = ("ring", "k", "nullary", "vs", "adj", "es")

    def __init__(self, ring, k, nullary, vs, adj, es):
        self.ring = ring
        self.k = k
        self.nullary = nullary
        self.vs = vs
        self.adj = adj
        self.es = es

    @classmethod
    def from_instance(cls, I: PcspInstance, f=_identity) -> "_State":
        vs = {v: [f(s) for s in I.vertex[v]] for v in range(I.n)}
        adj = {v: set() for v in range(I.n)}
        es = {}
        for (x, y), t in I.edge.items():
            adj[x].add(y)
            adj[y].add(x)
            es[(x, y)] = [[f(s) for s in row] for row in t]
        return cls(I.ring, I.k, f(I.nullary), vs, adj, es)

    def to_instance(self) -> tuple[PcspInstance, list]:
        labels = sorted(self.vs)
        idx = {v: i for i, v in enumerate(labels)}
        edge = {}
        for (x, y), t in self.es.items():
            a, b = idx[x], idx[y]
            table = tuple(tuple(r) for r in t)
            if a < b:
                edge[(a, b)] = table
            else:
                edge[(b, a)] = tuple(zip(*table))
        graph = ConstraintGraph(len(labels), tuple(sorted(edge)))
        vertex = tuple(tuple(self.vs[v]) for v in labels)
        return PcspInstance(graph, self.k, self.ring, self.nullary, vertex, edge), labels

    def copy(self) -> "_State":
        return _State(
            self.ring,
            self.k,
            self.nullary,
            dict(self.vs),
            {v: set(a) for v, a in self.adj.items()},
            dict(self.es),
        )

    @property
    def m(self) -> int:
        return len(self.es)

    def table(self, a, b):
        """Edge table indexed ``[color of a][color of b]``."""
        if a < b:
            return self.es[(a, b)]
        t = self.es[(b, a)]
        return [list(col) for col in zip(*t)]

    def delete(self, v) -> None:
        for u in self.adj.pop(v):
            self.adj[u].discard(v)
            self.es.pop((min(u, v), max(u, v)))
        del self.vs[v]

    def sub(self, vertices, nullary) -> "_State":
        vset = set(vertices)
        return _State(
            self.ring,
            self.k,
            nullary,
            {v: self.vs[v] for v in vertices},
            {v: set(self.adj[v]) for v in vertices},
            {e: t for e, t in self.es.items() if e[0] in vset},
        )

    def component_of(self, start) -> list:
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return sorted(seen)


# ---------------------------------------------------------------------------
# the rules, in place on a _State

def _rule_isolated(st: _State, v, pr, chk) -> None:
    total = st.ring.zero
    for s in st.vs[v]:
        total = total + s
    st.nullary = chk(pr(st.nullary * pr(total)))
    st.delete(v)


def _rule_split(st: _State, first: list) -> list[_State]:
    rest = sorted(set(st.vs) - set(first))
    return [st.sub(first, st.nullary), st.sub(rest, st.ring.one)]


def _rule_type1(st: _State, v, pr, chk) -> None:
    (u,) = st.adj[v]
    t = st.table(u, v)
    pv = st.vs[v]
    pu = st.vs[u]
    zero = st.ring.zero
    new = []
    for i in range(st.k):
        acc = zero
        for j in range(st.k):
            acc = acc + t[i][j] * pv[j]
        new.append(chk(pr(pu[i] * pr(acc))))
    st.delete(v)
    st.vs[u] = new


def _rule_type2(st: _State, v, pr, chk) -> None:
    u, w = sorted(st.adj[v])
    assert u != w, "simple graph: a degree-2 vertex has two distinct neighbours"
    tuv = st.table(u, v)
    tvw = st.table(v, w)
    pv = st.vs[v]
    old = st.es.get((u, w))
    zero = st.ring.zero
    new = []
    for i in range(st.k):
        row = []
        for j in range(st.k):
            acc = zero
            for l in range(st.k):
                acc = acc + tuv[i][l] * pv[l] * tvw[l][j]
            acc = pr(acc)
            row.append(chk(pr(old[i][j] * acc)) if old is not None else chk(acc))
        new.append(row)
    st.delete(v)
    st.es[(u, w)] = new
    st.adj[u].add(w)
    st.adj[w].add(u)


def _rule_type3(st: _State, v, pr, chk) -> list[_State]:
    out = []
    nbrs = sorted(st.adj[v])
    tables = {u: st.table(u, v) for u in nbrs}
    for i in range(st.k):
        child = st.copy()
        child.nullary = chk(pr(st.nullary * st.vs[v][i]))
        for u in nbrs:
            pu = st.vs[u]
            child.vs[u] = [chk(pr(pu[j] * tables[u][j][i])) for j in range(st.k)]
        child.delete(v)
        out.append(child)
    return out


# ---------------------------------------------------------------------------
# driver

def _solve(st: _State, pr, chk, trace) -> object:
    while True:
        if not st.vs:
            return st.nullary
        order = sorted(st.vs)
        degs = {v: len(st.adj[v]) for v in order}
        n, m = len(order), st.m

        iso = next((v for v in order if degs[v] == 0), None)
        if iso is not None:
            _log(trace, TYPE0_ISOLATED, iso, n, m, 1)
            _rule_isolated(st, iso, pr, chk)
            continue

        comp = st.component_of(order[0])
        if len(comp) < n:
            _log(trace, TYPE0_SPLIT, None, n, m, 2)
            a, b = _rule_split(st, comp)
            za = _solve(a, pr, chk, trace)
            if _is_zero(za):
                return za
            return chk(pr(za * _solve(b, pr, chk, trace)))

        v1 = next((v for v in order if degs[v] == 1), None)
        if v1 is not None:
            _log(trace, TYPE1, v1, n, m, 1)
            _rule_type1(st, v1, pr, chk)
            continue

        v2 = next((v for v in order if degs[v] == 2), None)
        if v2 is not None:
            _log(trace, TYPE2, v2, n, m, 1)
            _rule_type2(st, v2, pr, chk)
            continue

        pivot = max(order, key=lambda v: (degs[v], -v))
        _log(trace, TYPE3, pivot, n, m, st.k)
        total = st.ring.zero
        for child in _rule_type3(st, pivot, pr, chk):
            total = total + _solve(child, pr, chk, trace)
        return chk(pr(total))


def _is_zero(x) -> bool:
    return x == 0


def _log(trace, kind, pivot, n, m, results):
    if trace is not None:
        trace.append(ReductionStep(kind, pivot, n, m, results))


def _hooks(I: PcspInstance, prune: str | None, debug: bool):
    if prune is not None:
        if I.registry is None:
            raise ValueError("pruning needs a symbolic instance")
        I.registry.index(prune)

        def pr(p):
            return prune_z(p, prune)
    else:
        pr = _identity
    chk = DegreeChecker.for_instance(I) if (debug and I.registry is not None) else _identity
    return pr, chk


def solve_reductive(
    I: PcspInstance,
    prune: str | None = None,
    debug: bool = False,
    trace: list | None = None,
):
    """Partition function of ``I`` (or its z-pruned form when ``prune`` names a variable).

    Rule priority: isolated vertex, component split, degree 1, degree 2,
    then branch on a maximum-degree vertex (lowest label on ties).
    ``debug`` checks every intermediate polynomial against the
    ``(m + n + 1) * Delta`` degree bound.  Steps are appended to ``trace``
    if a list is given.
    """
    pr, chk = _hooks(I, prune, debug)
    st = _State.from_instance(I, pr)
    return chk(pr(_solve(st, pr, chk, trace)))


# ---------------------------------------------------------------------------
# single steps on whole instances
#
# Each returns instances relabelled densely: surviving vertices keep their
# relative order.

def _degrees(I: PcspInstance) -> list[int]:
    return [len(a) for a in I.graph.adjacency()]


def reduce_type0(I: PcspInstance) -> list[PcspInstance]:
    """Remove an isolated vertex (one instance back) or split off a component (two back).

    With two instances the partition function is their product; the first
    keeps the nullary score and the second gets 1.
    """
    degs = _degrees(I)
    st = _State.from_instance(I)
    iso = next((v for v in range(I.n) if degs[v] == 0), None)
    if iso is not None:
        _rule_isolated(st, iso, _identity, _identity)
        return [st.to_instance()[0]]
    if I.n:
        comp = st.component_of(0)
        if len(comp) < I.n:
            return [s.to_instance()[0] for s in _rule_split(st, comp)]
    raise ValueError("Type 0 needs a disconnected graph or an isolated vertex")


def reduce_type1(I: PcspInstance, v: int) -> PcspInstance:
    """Fold degree-1 vertex ``v`` into its neighbour's vertex scores."""
    if _degrees(I)[v] != 1:
        raise ValueError(f"vertex {v} does not have degree 1")
    st = _State.from_instance(I)
    _rule_type1(st, v, _identity, _identity)
    return st.to_instance()[0]


def reduce_type2(I: PcspInstance, v: int) -> PcspInstance:
    """Fold degree-2 vertex ``v`` into an edge between its two neighbours."""
    if _degrees(I)[v] != 2:
        raise ValueError(f"vertex {v} does not have degree 2")
    st = _State.from_instance(I)
    _rule_type2(st, v, _identity, _identity)
    return st.to_instance()[0]


def branch_type3(I: PcspInstance, v: int) -> list[PcspInstance]:
    """The ``k`` instances obtained by fixing ``v`` to each color; their partition functions sum to ``Z_I``."""
    if _degrees(I)[v] < 3:
        raise ValueError(f"vertex {v} has degree < 3")
    st = _State.from_instance(I)
    return [c.to_instance()[0] for c in _rule_type3(st, v, _identity, _identity)]

