"""Reading answers out of partition functions, and building/sampling assignments.

Optimal assignments are built one vertex at a time (in index order) from
conditional partition functions: the instance with the vertices colored
so far, plus the next vertex, fixed.  The same conditional values give
exact uniform sampling over optima and exact Gibbs sampling.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .instance import PcspInstance, restrict
from .ring import FloatRing, Poly, coefficient_of, max_degree, min_degree
from .solve import solve


@dataclass(frozen=True)
class ConditionalTable:
    vertex: int
    fixed: Mapping[int, int]
    values: tuple


def _as_fixed(sigma0) -> dict:
    if sigma0 is None:
        return {}
    if isinstance(sigma0, Mapping):
        return dict(sigma0)
    return {v: c for v, c in enumerate(sigma0) if c is not None}


def conditional_partition(I: PcspInstance, sigma0, v: int, method: str = "reduce",
                          prune: str | None = None) -> ConditionalTable:
    """Partition functions restricted to ``sigma0`` with ``v`` set to each color in turn."""
    fixed = _as_fixed(sigma0)
    if v in fixed:
        raise ValueError(f"vertex {v} is already assigned")
    values = []
    for i in range(I.k):
        sub, _ = restrict(I, {**fixed, v: i})
        values.append(solve(sub, method, prune=prune))
    return ConditionalTable(v, fixed, tuple(values))


def _top_weight(Z: Poly, objective: str, target) -> int:
    """Total coefficient of the terms whose ``objective`` exponent equals ``target``."""
    i = Z.registry.index(objective)
    return sum(c for exps, c in Z._terms.items() if exps[i] == target)


class _Walker:
    """Conditional values for prefixes of an assignment, cached by prefix."""

    prune = None

    def __init__(self, I: PcspInstance, method: str):
        self.I = I
        self.method = method
        self._cache: dict = {}

    def values(self, prefix: tuple) -> tuple:
        hit = self._cache.get(prefix)
        if hit is None:
            hit = conditional_partition(self.I, prefix, len(prefix), self.method,
                                        prune=self.prune).values
            hit = tuple(self.post(z) for z in hit)
            self._cache[prefix] = hit
        return hit

    def post(self, z):
        return z


class _OptimaWalker(_Walker):
    def __init__(self, I, objective, method, where, sense):
        super().__init__(I, method)
        if I.registry is None:
            raise ValueError("optimal assignments need a symbolic instance")
        if I.n == 0:
            raise ValueError("empty instance has no vertices to assign")
        I.registry.index(objective)
        self.objective = objective
        self.where = dict(where or {})
        self.sense = sense
        if sense == "max":
            self.prune = objective
        elif sense != "min":
            raise ValueError("sense must be 'max' or 'min'")
        Z = self.post(solve(I, method, prune=self.prune))
        if Z.is_zero():
            raise ValueError("no assignment satisfies the constraints")
        self.target = (max_degree if sense == "max" else min_degree)(Z, objective)
        self.total = _top_weight(Z, objective, self.target)

    def post(self, z):
        return coefficient_of(z, self.where) if self.where else z

    def weights(self, prefix) -> list[int]:
        return [_top_weight(z, self.objective, self.target) for z in self.values(prefix)]


def construct_optimal(I: PcspInstance, objective: str, method: str = "reduce",
                      where: Mapping[str, object] | None = None, sense: str = "max") -> tuple:
    """Deterministic optimal assignment: each vertex gets the smallest extendable color.

    ``where`` restricts to terms with the given exponents of other
    variables (e.g. ``{"w": n // 2}`` for bisections).
    """
    walker = _OptimaWalker(I, objective, method, where, sense)
    prefix: tuple = ()
    for _ in range(I.n):
        ws = walker.weights(prefix)
        prefix += (next(i for i, w in enumerate(ws) if w > 0),)
    return prefix


def sample_optimal_many(I: PcspInstance, objective: str, count: int, seed: int = 42,
                        method: str = "reduce", where=None, sense: str = "max") -> list[tuple]:
    """``count`` independent draws, uniform over optimal assignments."""
    walker = _OptimaWalker(I, objective, method, where, sense)
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        prefix: tuple = ()
        for _ in range(I.n):
            ws = walker.weights(prefix)
            prefix += (_choose(rng, ws, sum(ws)),)
        out.append(prefix)
    return out


def sample_optimal(I: PcspInstance, objective: str, seed: int = 42, method: str = "reduce",
                   where=None, sense: str = "max") -> tuple:
    """One assignment drawn uniformly from those attaining the optimal ``objective`` degree."""
    return sample_optimal_many(I, objective, 1, seed, method, where, sense)[0]


def count_optimal(I: PcspInstance, objective: str, method: str = "reduce",
                  where=None, sense: str = "max") -> tuple:
    """``(optimal degree, number of optimal assignments)``."""
    walker = _OptimaWalker(I, objective, method, where, sense)
    return walker.target, walker.total


def _choose(rng: random.Random, weights, total) -> int:
    if isinstance(total, int):
        r = rng.randrange(total)
    else:
        r = rng.random() * total
    acc = 0
    last = 0
    for i, w in enumerate(weights):
        if w > 0:
            last = i
            acc += w
            if r < acc:
                return i
    return last


class _GibbsWalker(_Walker):
    def __init__(self, I: PcspInstance, point, method):
        if isinstance(I.ring, FloatRing):
            num = I
        else:
            num = I.numeric(point)
        for s in num.all_scores():
            if not s > 0:
                raise ValueError(f"score evaluates to nonpositive value {s}")
        super().__init__(num, method)


def sample_gibbs_many(I: PcspInstance, point: Mapping[str, float], count: int, seed: int = 42,
                      method: str = "reduce") -> list[tuple]:
    """``count`` draws with probability proportional to each assignment's score at ``point``."""
    walker = _GibbsWalker(I, point, method)
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        prefix: tuple = ()
        for _ in range(I.n):
            ws = walker.values(prefix)
            prefix += (_choose(rng, ws, sum(ws)),)
        out.append(prefix)
    return out


def sample_gibbs(I: PcspInstance, point: Mapping[str, float], seed: int = 42,
                 method: str = "reduce") -> tuple:
    return sample_gibbs_many(I, point, 1, seed, method)[0]


# ---------------------------------------------------------------------------
# readouts

READOUTS = ("maxcut", "bisection", "clique", "mis", "sparsest", "judicious")


@dataclass(frozen=True)
class Readout:
    """What to read from a partition function.

    ``kind`` is one of :data:`READOUTS`.  ``n`` is the vertex count where
    it matters (bisection, sparsest, balanced judicious); when omitted it is
    taken to be the largest power of the vertex-marking variable.
    """

    kind: str
    n: int | None = None
    variables: Mapping[str, str] = field(default_factory=dict)

    def var(self, role: str) -> str:
        return self.variables.get(role, role)


def _need(Z: Poly, *names):
    for name in names:
        if name not in Z.registry:
            raise KeyError(f"partition function has no variable {name!r}")


def _terms(Z: Poly, *names):
    idx = [Z.registry.index(name) for name in names]
    for exps, c in Z.terms:
        yield tuple(exps[i] for i in idx), c


def _half(c: int, n: int) -> int:
    return c // 2 if n % 2 == 0 else c


def extract(readout: Readout, Z: Poly) -> list[dict]:
    """Apply a readout; returns report records (ordered key/value dicts)."""
    kind = readout.kind
    if kind == "maxcut":
        z = readout.var("z")
        _need(Z, z)
        top = max_degree(Z, z)
        lead = _top_weight(Z, z, top)
        return [{"max_cut": top, "count": lead // 2}]

    if kind == "bisection":
        w, z = readout.var("w"), readout.var("z")
        _need(Z, w, z)
        n = readout.n if readout.n is not None else max_degree(Z, w)
        sub = coefficient_of(Z, {w: n // 2})
        if sub.is_zero():
            return [{"bisections": 0}]
        hi, lo = max_degree(sub, z), min_degree(sub, z)
        return [
            {"max_bisection": hi, "count": _half(_top_weight(sub, z, hi), n)},
            {"min_bisection": lo, "count": _half(_top_weight(sub, z, lo), n)},
        ]

    if kind in ("clique", "mis"):
        w, z = readout.var("w"), readout.var("z")
        _need(Z, w, z)
        counts: dict = {}
        for (dw, dz), c in _terms(Z, w, z):
            counts[(dw, dz)] = counts.get((dw, dz), 0) + c
        sizes = sorted({dw for dw, _ in counts}, reverse=True)
        for size in sizes:
            want = size * (size - 1) // 2 if kind == "clique" else 0
            c = counts.get((size, want), 0)
            if c:
                key = "max_clique" if kind == "clique" else "max_independent_set"
                return [{key: size, "count": c}]
        return [{"max_clique" if kind == "clique" else "max_independent_set": 0, "count": 1}]

    if kind == "sparsest":
        w, z = readout.var("w"), readout.var("z")
        _need(Z, w, z)
        n = readout.n if readout.n is not None else max_degree(Z, w)
        best = None
        for (dw, dz), c in _terms(Z, w, z):
            if 0 < dw < n:
                ratio = Fraction(dz) / min(dw, n - dw)
                if best is None or ratio < best[0]:
                    best = [ratio, dz, min(dw, n - dw), c]
                elif ratio == best[0]:
                    best[3] += c
        if best is None:
            return [{"sparsest_cut": "none"}]
        return [{"sparsest_cut": best[0], "cut_edges": best[1], "side": best[2], "count": best[3]}]

    if kind == "judicious":
        z0, z1 = readout.var("z0"), readout.var("z1")
        _need(Z, z0, z1)
        src = Z
        w = readout.var("w")
        if w in Z.registry:
            n = readout.n if readout.n is not None else max_degree(Z, w)
            src = coefficient_of(Z, {w: n // 2})
        best = None
        for (d0, d1), c in _terms(src, z0, z1):
            val = max(d0, d1)
            if best is None or val < best[0]:
                best = [val, c]
            elif val == best[0]:
                best[1] += c
        if best is None:
            return [{"judicious": "none"}]
        return [{"judicious": best[0], "count": best[1]}]

    raise ValueError(f"unknown readout {kind!r}; expected one of {READOUTS}")


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def format_report(records: Sequence[Mapping]) -> str:
    """One ``key=value key=value`` line per record."""
    return "\n".join(" ".join(f"{k}={_fmt(v)}" for k, v in r.items()) for r in records)
