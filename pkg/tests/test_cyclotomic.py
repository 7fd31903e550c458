from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ncgeo import Cyclotomic, OMEGA, OMEGA2, ONE, ZERO, cyc

rationals = st.fractions(
    min_value=Fraction(-20), max_value=Fraction(20), max_denominator=12
)
cycs = st.builds(Cyclotomic, rationals, rationals)
nonzero_cycs = cycs.filter(bool)


def test_omega_is_a_primitive_cube_root():
    assert OMEGA**3 == ONE
    assert OMEGA != ONE
    assert OMEGA**2 == OMEGA2
    assert ONE + OMEGA + OMEGA2 == ZERO


def test_basic_arithmetic():
    assert cyc(2) + cyc(3) == cyc(5)
    assert cyc(1, 2) - cyc(1, 2) == ZERO
    assert cyc(0, 1) * cyc(0, 1) == cyc(-1, -1)
    assert 3 * cyc(Fraction(1, 3)) == ONE
    assert cyc(2) ** 0 == ONE


@given(cycs, cycs, cycs)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a
    assert a * ONE == a
    assert a + (-a) == ZERO


@given(nonzero_cycs)
def test_multiplicative_inverse(a):
    assert a * a.inverse() == ONE


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


@given(cycs, cycs)
def test_conjugation_is_a_ring_map(a, b):
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert a.conjugate().conjugate() == a


@given(cycs)
def test_norm_is_conjugate_product(a):
    prod = a * a.conjugate()
    assert prod.om == 0
    assert prod.re == a.norm()
    assert a.norm() >= 0


@given(cycs, cycs)
def test_norm_is_multiplicative(a, b):
    assert (a * b).norm() == a.norm() * b.norm()


@given(cycs)
def test_json_roundtrip(a):
    assert Cyclotomic.from_json(a.to_json()) == a


def test_json_shapes():
    assert cyc(Fraction(3, 4)).to_json() == "3/4"
    assert cyc(5).to_json() == "5"
    assert cyc(1, -2).to_json() == {"re": "1", "om": "-2"}
    assert Cyclotomic.from_json("7/2") == cyc(Fraction(7, 2))


@given(cycs, cycs)
def test_hash_respects_equality(a, b):
    if a == b:
        assert hash(a) == hash(b)
    # rational values hash like their Fraction
    if a.om == 0:
        assert hash(a) == hash(a.re)


def test_str_formats():
    assert str(cyc(3)) == "3"
    assert str(cyc(0, Fraction(1, 2))) == "1/2w"
    assert "w" in str(cyc(1, 1))
    assert str(ZERO) == "0"


@given(cycs, st.integers(min_value=0, max_value=6))
def test_integer_powers(a, k):
    expected = ONE
    for _ in range(k):
        expected = expected * a
    assert a**k == expected


@given(st.fractions(max_denominator=40))
def test_rational_embedding(q):
    a = cyc(q)
    assert a.om == 0
    assert bool(a) == (q != 0)
