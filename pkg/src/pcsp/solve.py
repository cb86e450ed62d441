"""One entry point for all solvers."""

from __future__ import annotations

from .instance import DEFAULT_GUARD_LOG2, PcspInstance, brute_force_partition
from .reduce import solve_reductive
from .ring import prune_z
from .splitlist import solve_splitlist
from .treedp import TreeDecomposition, solve_treedp

METHODS = ("reduce", "treedp", "splitlist", "oracle")


def solve(
    I: PcspInstance,
    method: str = "reduce",
    prune: str | None = None,
    td: TreeDecomposition | None = None,
    debug: bool = False,
    guard_log2: int = DEFAULT_GUARD_LOG2,
):
    """Partition function of ``I`` by the named method.

    ``td`` is only used by ``treedp`` (greedy min-fill when omitted).
    ``splitlist`` does not support pruning.
    """
    if method == "reduce":
        return solve_reductive(I, prune=prune, debug=debug)
    if method == "treedp":
        return solve_treedp(I, td, prune=prune, debug=debug)
    if method == "splitlist":
        if prune is not None:
            raise ValueError("splitlist cannot prune; use reduce or treedp")
        return solve_splitlist(I, debug=debug)
    if method == "oracle":
        z = brute_force_partition(I, guard_log2)
        return prune_z(z, prune) if prune is not None else z
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
