"""Split-and-list: the partition function as the trace of a matrix product.

Vertices are dealt into three groups A, B, C.  With every assignment of
each group listed explicitly, the diagonal matrices ``M_AA``, ``M_BB``,
``M_CC`` carry the scores inside a group and ``M_AB``, ``M_BC``, ``M_CA``
the scores of edges between groups, so that

    Z = nullary * trace(M_AA M_AB M_BB M_BC M_CC M_CA).

Products are computed with naive cubic multiplication over the ring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .instance import GuardExceeded, PcspInstance
from .ring import DegreeChecker

DEFAULT_ROW_GUARD_LOG2 = 13


@dataclass(frozen=True)
class GroupSplit:
    a: tuple
    b: tuple
    c: tuple

    @classmethod
    def round_robin(cls, n: int) -> "GroupSplit":
        return cls(tuple(range(0, n, 3)), tuple(range(1, n, 3)), tuple(range(2, n, 3)))

    def check(self, n: int) -> None:
        groups = (self.a, self.b, self.c)
        flat = sorted(v for g in groups for v in g)
        if flat != list(range(n)):
            raise ValueError("groups must partition the vertices 0..n-1")
        sizes = [len(g) for g in groups]
        if max(sizes) - min(sizes) > 1:
            raise ValueError(f"unbalanced groups of sizes {sizes}")


@dataclass
class SplitMatrices:
    """Diagonals are stored as lists; full matrices as lists of rows."""

    d_aa: list
    m_ab: list
    d_bb: list
    m_bc: list
    d_cc: list
    m_ca: list


def _within(I: PcspInstance, group, colors):
    s = I.ring.one
    pos = {v: p for p, v in enumerate(group)}
    for v in group:
        s = s * I.vertex[v][colors[pos[v]]]
    for (x, y), t in I.edge.items():
        if x in pos and y in pos:
            s = s * t[colors[pos[x]]][colors[pos[y]]]
    return s


def _cross(I: PcspInstance, g1, g2, edges1, edges2):
    pos1 = {v: p for p, v in enumerate(g1)}
    pos2 = {v: p for p, v in enumerate(g2)}
    between = [(x, y, t) for (x, y), t in I.edge.items()
               if (x in pos1 and y in pos2) or (x in pos2 and y in pos1)]
    rows = []
    for c1 in edges1:
        row = []
        for c2 in edges2:
            s = I.ring.one
            for x, y, t in between:
                cx = c1[pos1[x]] if x in pos1 else c2[pos2[x]]
                cy = c1[pos1[y]] if y in pos1 else c2[pos2[y]]
                s = s * t[cx][cy]
            row.append(s)
        rows.append(row)
    return rows


def build_matrices(I: PcspInstance, S: GroupSplit | None = None,
                   row_guard_log2: int = DEFAULT_ROW_GUARD_LOG2) -> SplitMatrices:
    """The six matrices of the split; rows and columns follow ``itertools.product`` order."""
    if S is None:
        S = GroupSplit.round_robin(I.n)
    S.check(I.n)
    biggest = max(len(S.a), len(S.b), len(S.c))
    if I.k ** biggest > 2 ** row_guard_log2:
        raise GuardExceeded(f"{I.k}^{biggest} rows exceeds guard 2^{row_guard_log2}")
    la = list(itertools.product(range(I.k), repeat=len(S.a)))
    lb = list(itertools.product(range(I.k), repeat=len(S.b)))
    lc = list(itertools.product(range(I.k), repeat=len(S.c)))
    return SplitMatrices(
        [_within(I, S.a, a) for a in la],
        _cross(I, S.a, S.b, la, lb),
        [_within(I, S.b, b) for b in lb],
        _cross(I, S.b, S.c, lb, lc),
        [_within(I, S.c, c) for c in lc],
        _cross(I, S.c, S.a, lc, la),
    )


def solve_splitlist(I: PcspInstance, S: GroupSplit | None = None,
                    row_guard_log2: int = DEFAULT_ROW_GUARD_LOG2, debug: bool = False):
    """Partition function as ``nullary * trace`` of the six-matrix product."""
    M = build_matrices(I, S, row_guard_log2)
    zero = I.ring.zero
    chk = DegreeChecker.for_instance(I) if (debug and I.registry is not None) else None

    # X = diag(AA) * M_AB * diag(BB)
    X = [[M.d_aa[r] * M.m_ab[r][c] * M.d_bb[c] for c in range(len(M.d_bb))]
         for r in range(len(M.d_aa))]
    if chk is not None:
        for row in X:
            for x in row:
                chk(x)
    # Y = X * M_BC * diag(CC), naive product
    ncols = len(M.d_cc)
    Y = []
    for xrow in X:
        yrow = []
        for c in range(ncols):
            acc = zero
            for j, x in enumerate(xrow):
                acc = acc + x * M.m_bc[j][c]
            acc = acc * M.d_cc[c]
            if chk is not None:
                chk(acc)
            yrow.append(acc)
        Y.append(yrow)
    # trace(Y * M_CA)
    total = zero
    for r, yrow in enumerate(Y):
        for c, y in enumerate(yrow):
            total = total + y * M.m_ca[c][r]
    result = I.nullary * total
    if chk is not None:
        chk(result)
    return result
