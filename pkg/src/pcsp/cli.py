"""Command-line front end.

Exit status: 0 success, 2 usage error, 3 size guard exceeded, 4 invariant
violation (invalid instance, solvers disagreeing, degree bound broken).
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .analyze import (
    READOUTS,
    Readout,
    construct_optimal,
    count_optimal,
    extract,
    format_report,
    sample_gibbs_many,
    sample_optimal_many,
)
from .encodings import (
    WeightedDigraph,
    encode_clique,
    encode_ising,
    encode_judicious,
    encode_max_cut,
    encode_max_dicut,
    read_graph,
)
from .instance import (
    DEFAULT_GUARD_LOG2,
    GuardExceeded,
    InvalidInstance,
    read_instance,
    score_assignment,
    validate,
    write_instance,
)
from .ring import DegreeBoundViolation, read_zpoly, render, to_exponent, write_zpoly
from .solve import METHODS, solve
from .treedp import greedy_decomposition, read_td, validate_decomposition

ENCODERS = ("maxcut", "dicut", "ising", "clique", "judicious")

EXIT_USAGE = 2
EXIT_GUARD = 3
EXIT_INVARIANT = 4


class InvariantViolation(Exception):
    pass


def _load_instance(args):
    text = Path(args.input).read_text()
    if args.encoder is None:
        I = read_instance(text)
    else:
        G = read_graph(text)
        enc = args.encoder
        if enc == "dicut":
            if not isinstance(G, WeightedDigraph):
                G = WeightedDigraph(G.n, G.edges)
            I = encode_max_dicut(G)
        else:
            if isinstance(G, WeightedDigraph):
                raise InvalidInstance(f"encoder {enc!r} needs an undirected graph")
            if enc == "maxcut":
                I = encode_max_cut(G, args.k)
            elif enc == "ising":
                I = encode_ising(G)
            elif enc == "clique":
                I = encode_clique(G)
            else:
                I = encode_judicious(G, balanced=args.balanced)
    problems = validate(I)
    if problems:
        raise InvariantViolation(f"invalid instance: {problems[0]}")
    return I


def _td(args, I):
    if args.solver != "treedp":
        return None
    if args.td in (None, "auto"):
        return greedy_decomposition(I.graph)
    T = read_td(Path(args.td).read_text())
    problems = validate_decomposition(T, I.graph)
    if problems:
        raise InvariantViolation(f"invalid decomposition: {problems[0]}")
    return T


def _parse_point(spec: str) -> dict:
    point = {}
    for item in spec.split(","):
        name, _, value = item.partition("=")
        if not value:
            raise ValueError(f"bad point entry {item!r}; expected name=value")
        point[name.strip()] = float(value)
    return point


def _parse_where(items) -> dict:
    where = {}
    for item in items or ():
        name, _, value = item.partition("=")
        if not value:
            raise ValueError(f"bad --where entry {item!r}; expected name=exponent")
        where[name.strip()] = to_exponent(value)
    return where


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    I = _load_instance(args)
    if args.solver == "splitlist" and args.prune:
        raise ValueError("splitlist cannot prune; use --solver reduce or treedp")
    Z = solve(I, args.solver, prune=args.prune, td=_td(args, I), debug=args.debug,
              guard_log2=args.guard)
    if args.output:
        Path(args.output).write_text(write_zpoly(Z))
    else:
        print(render(Z))
    return 0


def cmd_encode(args) -> int:
    if args.encoder is None:
        raise ValueError("encode needs --encoder")
    _emit(args, write_instance(_load_instance(args)))
    return 0


def cmd_extract(args) -> int:
    Z = read_zpoly(Path(args.input).read_text())
    print(format_report(extract(Readout(args.readout, args.n), Z)))
    return 0


def cmd_optimal(args) -> int:
    I = _load_instance(args)
    where = _parse_where(args.where)
    sigma = construct_optimal(I, args.objective, args.solver, where, args.sense)
    best, count = count_optimal(I, args.objective, args.solver, where, args.sense)
    print(f"{args.objective}_degree={best} count={count}")
    print("assignment=" + " ".join(map(str, sigma)))
    print(f"score={render(score_assignment(I, sigma))}")
    return 0


def cmd_sample(args) -> int:
    I = _load_instance(args)
    draws = sample_optimal_many(I, args.objective, args.count, args.seed, args.solver,
                                _parse_where(args.where), args.sense)
    print(f"seed={args.seed} count={args.count}")
    for d in draws:
        print("sample=" + " ".join(map(str, d)))
    return 0


def cmd_gibbs(args) -> int:
    I = _load_instance(args)
    if args.point:
        point = _parse_point(args.point)
    elif args.beta is not None:
        point = {"w": math.exp(-args.beta * args.h), "z": math.exp(-args.beta * args.J)}
    else:
        raise ValueError("gibbs needs --point or --beta")
    draws = sample_gibbs_many(I, point, args.count, args.seed, args.solver)
    print(f"seed={args.seed} count={args.count}")
    for d in draws:
        print("sample=" + " ".join(map(str, d)))
    return 0


def cmd_selftest(args) -> int:
    I = _load_instance(args)
    ref = solve(I, "oracle", guard_log2=args.guard)
    for method in ("reduce", "treedp", "splitlist"):
        got = solve(I, method, debug=True)
        if got != ref:
            raise InvariantViolation(f"{method} disagrees with enumeration: {got} != {ref}")
    print("OK: all solvers agree")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pcsp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_args(p):
        p.add_argument("input", help="instance file, or graph file when --encoder is given")
        p.add_argument("--encoder", choices=ENCODERS)
        p.add_argument("--k", type=int, default=2, help="colors for maxcut (Max k-Cut)")
        p.add_argument("--balanced", action="store_true", help="judicious: add bisection variable w")
        p.add_argument("--solver", choices=METHODS, default="reduce")
        p.add_argument("--guard", type=int, default=DEFAULT_GUARD_LOG2,
                       help="log2 of the enumeration limit for the oracle")

    p = sub.add_parser("solve", help="print the partition function")
    instance_args(p)
    p.add_argument("--prune", metavar="VAR")
    p.add_argument("--td", default="auto", help="PACE .td file or 'auto'")
    p.add_argument("--debug", action="store_true", help="check the degree bound throughout")
    p.add_argument("--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("encode", help="write the encoded instance file")
    instance_args(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("extract", help="apply a readout to a polynomial file")
    p.add_argument("input")
    p.add_argument("--readout", choices=READOUTS, required=True)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_extract)

    for name, func, helptext in (
        ("optimal", cmd_optimal, "deterministic optimal assignment"),
        ("sample", cmd_sample, "uniform samples over optimal assignments"),
    ):
        p = sub.add_parser(name, help=helptext)
        instance_args(p)
        p.add_argument("--objective", default="z")
        p.add_argument("--where", action="append", metavar="VAR=EXP")
        p.add_argument("--sense", choices=("max", "min"), default="max")
        if name == "sample":
            p.add_argument("--seed", type=int, default=42)
            p.add_argument("--count", type=int, default=1)
        p.set_defaults(func=func)

    p = sub.add_parser("gibbs", help="samples from the Gibbs distribution")
    instance_args(p)
    p.add_argument("--point", help="e.g. w=0.5,z=2")
    p.add_argument("--beta", type=float)
    p.add_argument("--J", type=float, default=1.0)
    p.add_argument("--h", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_gibbs)

    p = sub.add_parser("selftest", help="cross-check every solver against enumeration")
    instance_args(p)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InvariantViolation, DegreeBoundViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InvalidInstance, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
