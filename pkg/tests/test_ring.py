import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcsp.ring import (
    DegreeBoundViolation,
    DegreeChecker,
    FloatRing,
    Poly,
    PolyRing,
    Registry,
    RegistryMismatch,
    coefficient_of,
    evaluate,
    max_degree,
    min_degree,
    parse,
    prune_z,
    read_zpoly,
    render,
    to_exponent,
    write_zpoly,
)

R = PolyRing(["w", "w1", "w2", "z"])
z, w, w1, w2 = R.var("z"), R.var("w"), R.var("w1"), R.var("w2")


def P(text, ring=R):
    return ring.parse(text)


# --- arithmetic ------------------------------------------------------------

def test_add_doubles_terms():
    assert (z + 1) + (z + 1) == 2 * z + 2


def test_add_zero_is_identity():
    p = P("3*z^2 + w")
    assert p + R.zero == p


def test_add_disjoint_terms():
    assert P("2*z^2 + 3*z") + P("700 + z*w1") == P("2*z^2 + 3*z + 700 + z*w1")


def test_mul_monomials():
    assert z * w == R.monomial(1, z=1, w=1)


def test_binomial_square():
    assert (1 + z) * (1 + z) == 1 + 2 * z + z ** 2


def test_rational_exponents_add_exactly():
    half = R.monomial(1, z=Fraction(1, 2))
    assert half * half == z


def test_cancellation_removes_terms():
    assert (z - z).is_zero()
    assert len(z + 1 - 1) == 1


def test_registry_mismatch_raises():
    other = PolyRing(["z"]).var("z")
    with pytest.raises(RegistryMismatch):
        z + other
    with pytest.raises(RegistryMismatch):
        z * other


def test_bad_variable_name():
    with pytest.raises(ValueError):
        Registry(["z", "z"])
    with pytest.raises(ValueError):
        Registry(["2x"])


def test_to_exponent_is_exact_for_decimals():
    assert to_exponent(0.1) == Fraction(1, 10)
    assert to_exponent("2.5") == Fraction(5, 2)
    assert isinstance(to_exponent(Fraction(4, 2)), int)


# --- pruning ---------------------------------------------------------------

def test_prune_worked_example():
    # Worked example quoted in the source text of the pruning definition.
    p = P("2*z^2 + 3*z + 700 + z*w1 + z^2*w1 + z*w2 + z^10*w1*w2")
    assert prune_z(p, "z") == P("2*z^2 + z^2*w1 + z*w2 + z^10*w1*w2")


def test_prune_single_term():
    assert prune_z(5 * z ** 3, "z") == 5 * z ** 3


def test_prune_univariate_keeps_leading_term():
    assert prune_z(1 + z + z ** 2, "z") == z ** 2


def test_prune_refuses_negative_coefficients():
    with pytest.raises(ValueError):
        prune_z(z - 1, "z")


def test_prune_unknown_variable():
    with pytest.raises(KeyError):
        prune_z(z, "q")


# --- evaluation and degree queries -----------------------------------------

def test_evaluate_examples():
    assert evaluate(P("2 + 6*z^2"), {"z": 1}) == 8
    assert evaluate(1 + w, {"w": math.exp(-1)}) == pytest.approx(1.36787944117144, rel=1e-12)
    assert evaluate(R.monomial(1, z=Fraction(1, 2)), {"z": 4}) == 2


def test_evaluate_errors():
    with pytest.raises(KeyError):
        evaluate(z, {})
    with pytest.raises(ValueError):
        evaluate(R.monomial(1, z=Fraction(1, 2)), {"z": -4.0})


def test_evaluate_negative_base_integer_power():
    assert evaluate(z ** 3, {"z": -2.0}) == -8


def test_max_degree_and_coefficient_of():
    assert max_degree(P("2 + 6*z^2"), "z") == 2
    assert min_degree(P("2 + 6*z^2"), "z") == 0
    clique = P("1 + 3*w + 3*w^2*z + w^3*z^3")
    assert coefficient_of(clique, {"w": 2}) == 3 * z
    assert coefficient_of(clique, {}) == clique


def test_max_degree_of_zero_raises():
    with pytest.raises(ValueError):
        max_degree(R.zero, "z")


# --- text ------------------------------------------------------------------

def test_render_format():
    assert render(P("6*z^2 + 2")) == "2 + 6*z^2"
    assert render(R.monomial(3, z=Fraction(-1, 2), w=1)) == "3*w*z^-1/2"
    assert render(R.zero) == "0"


def test_zpoly_file_round_trip():
    p = P("2 + 6*z^2*w")
    assert read_zpoly(write_zpoly(p)) == p


# --- debug degree bound ----------------------------------------------------

def test_degree_checker():
    chk = DegreeChecker(4)
    assert chk(z ** 4) == z ** 4
    assert chk(R.monomial(1, z=-4)) is not None
    with pytest.raises(DegreeBoundViolation):
        chk(z ** 5)
    assert chk.checked == 3


def test_float_ring_identities():
    F = FloatRing()
    assert F.zero == 0.0 and F.one == 1.0


# --- properties ------------------------------------------------------------

SMALL = PolyRing(["w", "z"])
exponents = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def polys(draw, nonneg=False):
    n = draw(st.integers(0, 4))
    p = SMALL.zero
    for _ in range(n):
        c = draw(st.integers(0 if nonneg else -5, 5))
        p = p + SMALL.monomial(c, w=draw(exponents), z=draw(exponents))
    return p


@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert p * SMALL.one == p
    assert p + SMALL.zero == p


@given(polys())
def test_parse_render_round_trip(p):
    assert parse(render(p), SMALL.registry) == p


@given(polys(nonneg=True), polys(nonneg=True))
def test_prune_commutes_with_ring_operations(p, q):
    assert prune_z(p + q, "z") == prune_z(prune_z(p, "z") + prune_z(q, "z"), "z")
    assert prune_z(p * q, "z") == prune_z(prune_z(p, "z") * prune_z(q, "z"), "z")


@settings(max_examples=60)
@given(polys(), polys(), st.floats(0.2, 3), st.floats(0.2, 3))
def test_evaluate_is_multiplicative(p, q, a, b):
    point = {"w": a, "z": b}
    lhs = evaluate(p * q, point)
    rhs = evaluate(p, point) * evaluate(q, point)
    assert math.isclose(lhs, rhs, rel_tol=1e-9, abs_tol=1e-9)


@given(st.fractions(max_denominator=10 ** 30), st.fractions(max_denominator=10 ** 30))
def test_exponent_arithmetic_exact(a, b):
    reg = Registry(["z"])
    p = Poly.monomial(reg, 1, {"z": a}) * Poly.monomial(reg, 1, {"z": b})
    assert max_degree(p, "z") == a + b
