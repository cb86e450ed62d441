"""Sparse generalized polynomials with exact rational exponents.

A :class:`Poly` is a finite map from exponent vectors to integer
coefficients over a fixed :class:`Registry` of formal variables.  Exponents
are :class:`fractions.Fraction` (or ``int`` when integral), so negative and
fractional powers are exact.  Coefficients are Python ints and never
overflow.

Two ring objects are provided so that solvers can be written once:

* :class:`PolyRing` - symbolic, elements are :class:`Poly`.
* :class:`FloatRing` - double precision, elements are ``float``.

Solvers only use ``+``, ``*``, ``ring.zero`` and ``ring.one``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Exponent = Union[int, Fraction]


class RegistryMismatch(ValueError):
    """Raised when polynomials over different variable registries are combined."""


class DegreeBoundViolation(AssertionError):
    """Raised in debug mode when an intermediate exceeds the degree bound."""


def to_exponent(x) -> Exponent:
    """Convert a number or numeric string to an exact exponent.

    Floats are read through their shortest decimal repr, so ``0.1`` becomes
    ``1/10`` rather than the binary approximation.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not an exponent")
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite exponent {x!r}")
        x = Fraction(repr(x))
    elif isinstance(x, str):
        x = Fraction(x.strip())
    else:
        x = Fraction(x)
    return int(x) if x.denominator == 1 else x


class Registry:
    """An ordered, immutable set of formal variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str] = ()):
        names = tuple(names)
        for name in names:
            if not _NAME_RE.fullmatch(name):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"variable {name!r} not in registry {self.names}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Registry) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Registry({list(self.names)!r})"


class Poly:
    """Immutable sparse generalized polynomial.

    ``terms`` maps dense exponent tuples (one entry per registry variable)
    to nonzero integer coefficients.
    """

    __slots__ = ("registry", "_terms", "_hash")

    def __init__(self, registry: Registry, terms: Mapping[tuple, int] | None = None):
        self.registry = registry
        clean = {}
        if terms:
            width = len(registry)
            for exps, c in terms.items():
                if c:
                    if len(exps) != width:
                        raise ValueError("exponent vector does not match registry")
                    clean[tuple(exps)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, registry: Registry, terms: dict) -> "Poly":
        # caller guarantees no zero coefficients and correct widths
        p = cls.__new__(cls)
        p.registry = registry
        p._terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, registry: Registry) -> "Poly":
        return cls._raw(registry, {})

    @classmethod
    def constant(cls, registry: Registry, c: int) -> "Poly":
        if c != int(c):
            raise ValueError("coefficients must be integers")
        return cls._raw(registry, {(0,) * len(registry): int(c)} if c else {})

    @classmethod
    def one(cls, registry: Registry) -> "Poly":
        return cls.constant(registry, 1)

    @classmethod
    def monomial(cls, registry: Registry, coeff: int = 1, powers: Mapping[str, object] | None = None) -> "Poly":
        """``coeff * prod(name ** exp)`` with exponents converted exactly."""
        exps = [0] * len(registry)
        for name, e in (powers or {}).items():
            exps[registry.index(name)] = to_exponent(e)
        return cls(registry, {tuple(exps): coeff})

    @classmethod
    def var(cls, registry: Registry, name: str) -> "Poly":
        return cls.monomial(registry, 1, {name: 1})

    # inspection

    @property
    def terms(self) -> list[tuple[tuple, int]]:
        """Terms in canonical order (ascending exponent tuple)."""
        return sorted(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self.terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficients(self) -> list[int]:
        return [c for _, c in self.terms]

    def powers(self, exps: tuple) -> dict[str, Exponent]:
        """Nonzero entries of an exponent tuple keyed by variable name."""
        return {name: e for name, e in zip(self.registry.names, exps) if e}

    # arithmetic

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.registry is not self.registry and other.registry != self.registry:
                raise RegistryMismatch(f"{self.registry} vs {other.registry}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return Poly.constant(self.registry, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return Poly._raw(self.registry, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.registry, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if not a or not b:
            return Poly._raw(self.registry, {})
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        if len(b) == 1:
            ((eb, cb),) = b.items()
            if not any(eb):
                if cb == 1:
                    return self if self._terms is a else other
                return Poly._raw(self.registry, {e: c * cb for e, c in a.items()})
            for ea, ca in a.items():
                out[tuple(map(_add, ea, eb))] = ca * cb
            return Poly._raw(self.registry, out)
        width = len(self.registry)
        for eb, cb in b.items():
            for ea, ca in a.items():
                if width == 1:
                    key = (_add(ea[0], eb[0]),)
                else:
                    key = tuple(map(_add, ea, eb))
                out[key] = get(key, 0) + ca * cb
        return Poly._raw(self.registry, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers of polynomials")
        result = Poly.one(self.registry)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # equality / hashing

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = Poly.constant(self.registry, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.registry == other.registry and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.registry, frozenset(self._terms.items())))
        return self._hash

    # change of registry

    def embed(self, registry: Registry, rename: Mapping[str, str] | None = None) -> "Poly":
        """Rewrite over ``registry``, optionally renaming variables first."""
        rename = rename or {}
        slots = [registry.index(rename.get(name, name)) for name in self.registry.names]
        width = len(registry)
        out = {}
        for exps, c in self._terms.items():
            new = [0] * width
            for slot, e in zip(slots, exps):
                new[slot] = e
            out[tuple(new)] = c
        return Poly._raw(registry, out)

    # text form

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Poly({render(self)!r}, vars={list(self.registry.names)})"


def _add(a, b):
    # integral sums go back to int: hashing a Fraction is slow
    s = a + b
    if type(s) is Fraction and s.denominator == 1:
        return s.numerator
    return s


# ---------------------------------------------------------------------------
# rings

class PolyRing:
    """Symbolic ring of generalized polynomials over a registry."""

    symbolic = True

    def __init__(self, registry: Registry | Iterable[str]):
        if not isinstance(registry, Registry):
            registry = Registry(registry)
        self.registry = registry
        self.zero = Poly.zero(registry)
        self.one = Poly.one(registry)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.registry == self.registry

    def __hash__(self):
        return hash(("PolyRing", self.registry))

    def __repr__(self):
        return f"PolyRing({list(self.registry.names)!r})"

    def contains(self, x) -> bool:
        return isinstance(x, Poly) and x.registry == self.registry

    def var(self, name: str) -> Poly:
        return Poly.var(self.registry, name)

    def monomial(self, coeff: int = 1, **powers) -> Poly:
        return Poly.monomial(self.registry, coeff, powers)

    def constant(self, c: int) -> Poly:
        return Poly.constant(self.registry, c)

    def parse(self, text: str) -> Poly:
        return parse(text, self.registry)


class FloatRing:
    """Double-precision real numbers, used for Gibbs-style numeric evaluation."""

    symbolic = False
    registry = None
    zero = 0.0
    one = 1.0

    def __eq__(self, other):
        return isinstance(other, FloatRing)

    def __hash__(self):
        return hash("FloatRing")

    def __repr__(self):
        return "FloatRing()"

    def contains(self, x) -> bool:
        return isinstance(x, float)


# ---------------------------------------------------------------------------
# operations

def prune_z(p: Poly, zvar: str) -> Poly:
    """Drop every term dominated by a term with a strictly higher power of ``zvar``.

    Two terms compete when they agree on every other variable's exponent;
    only the one with the largest ``zvar`` exponent survives.  Requires
    nonnegative coefficients.
    """
    iz = p.registry.index(zvar)
    best: dict = {}
    for exps, c in p._terms.items():
        if c < 0:
            raise ValueError("prune_z requires nonnegative coefficients")
        rest = exps[:iz] + exps[iz + 1:]
        cur = best.get(rest)
        if cur is None or exps[iz] > cur[0][iz]:
            best[rest] = (exps, c)
    if len(best) == len(p._terms):
        return p
    return Poly._raw(p.registry, dict(best.values()))


def evaluate(p: Poly, point: Mapping[str, float]) -> float:
    """Numeric value of ``p`` with each variable replaced by ``point[name]``."""
    names = p.registry.names
    total = []
    for exps, c in p._terms.items():
        v = float(c)
        for name, e in zip(names, exps):
            if not e:
                continue
            if name not in point:
                raise KeyError(f"no value given for variable {name!r}")
            base = float(point[name])
            if e.denominator == 1:
                e = int(e)
                if base == 0 and e < 0:
                    raise ValueError(f"zero base for negative power of {name!r}")
                v *= base ** e
            else:
                if base <= 0:
                    raise ValueError(f"nonpositive base for fractional power of {name!r}")
                v *= base ** (e.numerator / e.denominator)
        total.append(v)
    return math.fsum(total)


def max_degree(p: Poly, var: str) -> Exponent:
    """Largest exponent of ``var`` over the terms of ``p``."""
    if p.is_zero():
        raise ValueError("max_degree of the zero polynomial")
    i = p.registry.index(var)
    return max(exps[i] for exps in p._terms)


def min_degree(p: Poly, var: str) -> Exponent:
    if p.is_zero():
        raise ValueError("min_degree of the zero polynomial")
    i = p.registry.index(var)
    return min(exps[i] for exps in p._terms)


def coefficient_of(p: Poly, constraints: Mapping[str, object]) -> Poly:
    """Terms whose exponents match ``constraints`` exactly, with those variables set to power 0."""
    fixed = [(p.registry.index(name), to_exponent(e)) for name, e in constraints.items()]
    out = {}
    for exps, c in p._terms.items():
        if all(exps[i] == e for i, e in fixed):
            new = list(exps)
            for i, _ in fixed:
                new[i] = 0
            out[tuple(new)] = c
    return Poly._raw(p.registry, out)


def degree_bound(polys: Iterable, n: int, m: int) -> Exponent:
    """``(m + n + 1) * Delta`` with Delta the largest absolute exponent in ``polys``."""
    delta = 0
    for p in polys:
        for exps in p._terms:
            for e in exps:
                if abs(e) > delta:
                    delta = abs(e)
    return (m + n + 1) * delta


class DegreeChecker:
    """Callable that raises :class:`DegreeBoundViolation` past a fixed bound.

    Every exponent of every checked polynomial must satisfy
    ``abs(e) <= bound``.  Non-polynomial elements are ignored.
    """

    def __init__(self, bound: Exponent):
        self.bound = bound
        self.checked = 0

    @classmethod
    def for_instance(cls, instance) -> "DegreeChecker":
        return cls(degree_bound(instance.all_scores(), instance.n, instance.m))

    def __call__(self, p):
        if isinstance(p, Poly):
            self.checked += 1
            for exps in p._terms:
                for e in exps:
                    if abs(e) > self.bound:
                        raise DegreeBoundViolation(
                            f"exponent {e} exceeds bound {self.bound} in {render(p)}")
        return p


# ---------------------------------------------------------------------------
# rendering and parsing

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9']*")

_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<body>
          (?:\d+|[A-Za-z_][A-Za-z_0-9']*(?:\^-?\d+(?:\.\d+)?(?:/\d+)?)?)
          (?:\s*\*\s*(?:\d+|[A-Za-z_][A-Za-z_0-9']*(?:\^-?\d+(?:\.\d+)?(?:/\d+)?)?))*
        )\s*""",
    re.VERBOSE,
)


def _format_exp(e: Exponent) -> str:
    if isinstance(e, Fraction) and e.denominator != 1:
        return f"{e.numerator}/{e.denominator}"
    return str(int(e))


def render(p: Poly) -> str:
    """Canonical text: ``2 + 6*z^2``; exponent 1 and coefficient 1 elided."""
    if p.is_zero():
        return "0"
    names = p.registry.names
    parts = []
    for exps, c in p.terms:
        factors = [name if e == 1 else f"{name}^{_format_exp(e)}"
                   for name, e in zip(names, exps) if e]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def parse(text: str, registry: Registry) -> Poly:
    """Inverse of :func:`render`.  Repeated factors multiply."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    width = len(registry)
    out: dict = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        first = False
        pos = m.end()
        coeff = -1 if m.group("sign") == "-" else 1
        exps = [0] * width
        for factor in m.group("body").split("*"):
            factor = factor.strip()
            if factor.isdigit():
                coeff *= int(factor)
                continue
            name, _, exp = factor.partition("^")
            i = registry.index(name)
            exps[i] = exps[i] + (to_exponent(exp) if exp else 1)
        key = tuple(int(e) if isinstance(e, Fraction) and e.denominator == 1 else e for e in exps)
        out[key] = out.get(key, 0) + coeff
    return Poly(registry, out)


def variables_in(text: str) -> list[str]:
    """Variable names appearing in polynomial text, in order of first appearance."""
    seen = []
    for name in _NAME_RE.findall(text):
        if name not in seen:
            seen.append(name)
    return seen


def write_zpoly(p: Poly) -> str:
    """Polynomial file: ``var <name>`` lines, then the canonical text."""
    return "".join(f"var {name}\n" for name in p.registry.names) + render(p) + "\n"


def read_zpoly(text: str) -> Poly:
    """Inverse of :func:`write_zpoly`; without ``var`` lines the registry is inferred."""
    names = []
    body = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("var "):
            names.append(line[4:].strip())
        else:
            body.append(line)
    text = " ".join(body)
    if not names:
        names = variables_in(text)
    return parse(text, Registry(names))
