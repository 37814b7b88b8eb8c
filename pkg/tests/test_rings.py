"""Sparse polynomial arithmetic, the expression parser, and jets."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matfac import (
    Jet,
    MatfacError,
    PolynomialRing,
    UndecidableError,
    cyclotomic_field,
    monomial_coprime,
    parse_polynomial,
)

F = cyclotomic_field(3)
R = PolynomialRing(F, ("x", "y", "w"))
x, y, w = (R.variable(v) for v in ("x", "y", "w"))


def poly_strategy(ring=R, max_terms=4, max_exp=3):
    nvars = len(ring.vars)
    term = st.tuples(
        st.lists(st.integers(0, max_exp), min_size=nvars, max_size=nvars),
        st.integers(-9, 9),
    )
    def build(terms):
        p = ring.zero()
        for exps, c in terms:
            p = p + ring.monomial(tuple(exps), c)
        return p
    return st.lists(term, max_size=max_terms).map(build)


def test_basic_arithmetic():
    f = x * y + w
    g = x * y - w
    assert f + g == R.scalar(2) * x * y
    assert f * g == x * x * y * y - w * w
    assert (f - f).is_zero()


def test_scalar_coercion_and_zeta_coefficients():
    z = F.zeta(1)
    p = R.scalar(z) * x + y
    q = R.scalar(z * z) * x + y
    # zeta + zeta^2 = -1
    assert p + q == -x + R.scalar(2) * y


@settings(max_examples=50, deadline=None)
@given(f=poly_strategy(), g=poly_strategy(), h=poly_strategy())
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)


def test_degrees_and_order():
    f = x * y + w * w * w
    assert f.total_degree() == 3
    assert f.order_of() == 2
    assert R.zero().total_degree() == -1
    with pytest.raises(MatfacError):
        R.zero().order_of()
    assert R.one().order_of() == 0


def test_constant_term_and_variables_used():
    f = x * y + R.scalar(5)
    assert f.constant_term() == F.rational(5)
    assert f.variables_used() == frozenset({"x", "y"})
    assert R.scalar(7).variables_used() == frozenset()


def test_reduce_mod_vars():
    f = x * y + y * w + w
    assert f.reduce_mod_vars({"w"}) == x * y
    # every term of f touches x or w, so killing both leaves nothing
    assert f.reduce_mod_vars({"x", "w"}).is_zero()
    with pytest.raises(ValueError):
        f.reduce_mod_vars({"nope"})


def test_divexact():
    f = (x + y) * (x - y) * w
    assert f.divexact(x + y) == (x - y) * w
    assert f.divexact(w) == (x + y) * (x - y)
    with pytest.raises(MatfacError):
        (x + y).divexact(w)
    with pytest.raises(ZeroDivisionError):
        x.divexact(R.zero())


def test_truncate_and_homogeneous_part():
    f = R.one() + x + x * y + x * y * w
    assert f.truncate(2) == R.one() + x
    assert f.homogeneous_part(2) == x * y
    assert f.homogeneous_part(5).is_zero()


def test_monomial_coprime():
    assert monomial_coprime([x, y, w])
    assert not monomial_coprime([x * y, y * w])
    with pytest.raises(UndecidableError):
        monomial_coprime([x + y, w])
    with pytest.raises(UndecidableError):
        monomial_coprime([R.zero(), x])


def test_parser_basics():
    assert R.parse("x*y + 2*w^3") == x * y + R.scalar(2) * w * w * w
    assert R.parse("(x + y)^2") == x * x + R.scalar(2) * x * y + y * y
    assert R.parse("-x") == -x
    assert R.parse("z*x") == R.scalar(F.zeta(1)) * x
    assert R.parse("z^2*x") == R.scalar(F.zeta(2)) * x
    assert R.parse("1/3*x") == R.scalar(Fraction(1, 3)) * x
    assert R.parse("0").is_zero()


def test_parser_errors_carry_position():
    with pytest.raises(MatfacError) as e:
        R.parse("x + * y")
    assert "position" in str(e.value)
    with pytest.raises(MatfacError):
        R.parse("unknown_var + 1")
    with pytest.raises(MatfacError):
        R.parse("x +")


@settings(max_examples=60, deadline=None)
@given(f=poly_strategy())
def test_str_parse_round_trip(f):
    assert parse_polynomial(str(f), R) == f


def test_str_round_trip_with_cyclotomic_coefficients():
    z = F.zeta(1)
    f = R.scalar(z) * x + R.scalar(z * z - F.rational(Fraction(1, 2))) * y * w
    assert R.parse(str(f)) == f


def test_jets_truncate_arithmetic():
    f = Jet(R.one() + x, 3)
    g = Jet(R.one() - x, 3)
    prod = f * g
    assert prod == Jet(R.one() - x * x, 3)
    # degree-3 terms fall off
    h = Jet(x, 3)
    assert (h * h * h).is_zero()


def test_jet_inverse():
    f = Jet(R.one() + x + y, 4)
    inv = f.inverse()
    assert (f * inv) == Jet(R.one(), 4)
    with pytest.raises(MatfacError):
        Jet(x, 3).inverse()  # zero constant term: not a unit


def test_jet_mixed_precision_rejected():
    with pytest.raises(ValueError):
        Jet(x, 2) + Jet(x, 3)
