import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toda_atlas.gaussrat import GaussRat
from toda_atlas.puiseux import PuiseuxMatrix, PuiseuxPoly, SesquiPoly

exps = st.fractions(min_value=0, max_value=6, max_denominator=4)
coefs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
gauss = st.builds(lambda a, b: GaussRat(a, b).simplify(), coefs, coefs)
polys = st.dictionaries(exps, st.one_of(coefs, gauss), max_size=4).map(PuiseuxPoly)


@settings(max_examples=80, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert a - a == PuiseuxPoly()
    assert (a * b) * c == a * (b * c)


@settings(max_examples=80, deadline=None)
@given(polys)
def test_integrate_then_differentiate(a):
    assert a.integrate().derivative() == a
    # the antiderivative vanishes at 0: no constant term
    assert Fraction(0) not in a.integrate().terms


@settings(max_examples=80, deadline=None)
@given(polys)
def test_json_round_trip(a):
    q = a.denom
    assert PuiseuxPoly.from_json(a.to_json(q), q) == a


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_evaluation_is_a_homomorphism(a, b):
    z = 0.7 - 1.3j
    assert abs((a * b)(z) - a(z) * b(z)) <= 1e-9 * (1 + abs(a(z) * b(z)))
    assert abs((a + b)(z) - (a(z) + b(z))) <= 1e-9 * (1 + abs(a(z)) + abs(b(z)))


def test_principal_branch():
    half = PuiseuxPoly.monomial(Fraction(1), Fraction(1, 2))
    assert half(4.0) == pytest.approx(2.0)
    assert half(-1 + 1e-12j) == pytest.approx(1j)
    assert half(-1 - 1e-12j) == pytest.approx(-1j)


def test_continuation_examples():
    half = PuiseuxPoly.monomial(Fraction(3), Fraction(1, 2))
    assert half.continue_around_origin()(2.0) == pytest.approx(-half(2.0))
    integral = PuiseuxPoly({Fraction(0): Fraction(1), Fraction(2): Fraction(5, 3)})
    assert integral.continue_around_origin() == integral
    third = PuiseuxPoly.monomial(Fraction(1), Fraction(1, 3))
    assert third.continue_around_origin()(1.0) == pytest.approx(cmath.exp(-2j * cmath.pi / 3))


def test_continuation_matches_crossing_the_cut():
    p = PuiseuxPoly({Fraction(1, 2): Fraction(2), Fraction(7, 4): GaussRat(Fraction(1), Fraction(-3))})
    above, below = -2 + 1e-14j, -2 - 1e-14j
    # going once clockwise from just above the cut lands just below it
    assert p.continue_around_origin()(above) == pytest.approx(p(below), abs=1e-10)


def test_integrating_z_inverse_is_refused():
    with pytest.raises(ValueError):
        PuiseuxPoly.monomial(Fraction(1), Fraction(-1)).integrate()


def test_string_form():
    p = PuiseuxPoly({Fraction(0): Fraction(1), Fraction(12): Fraction(-64, 312455), Fraction(1, 2): Fraction(2)})
    s = str(p)
    assert s == "1 + 2 z^(1/2) - 64/312455 z^12"
    assert str(PuiseuxPoly.monomial(Fraction(-64, 312455), Fraction(12))) == "-64/312455 z^12"
    assert "2 z^(1/2)" in s


def test_matrix_json_round_trip_and_pretty():
    m = PuiseuxMatrix([[1, 0], [PuiseuxPoly.monomial(Fraction(2), Fraction(1, 2)), 1]])
    back = PuiseuxMatrix.from_json(m.to_json())
    assert back == m
    assert m.to_json()["q"] == 2
    assert m.pretty().splitlines()[1] == "(2,1): 2 z^(1/2)"
    assert m.is_lower_unitriangular()


def test_matrix_product_with_constant():
    z = PuiseuxPoly.monomial(Fraction(1), Fraction(1))
    m = PuiseuxMatrix([[1, 0], [z, 1]])
    c = [[Fraction(1), Fraction(0)], [Fraction(3), Fraction(1)]]
    prod = m.lmul_constant(c)
    assert np.allclose(prod(0.5 + 0.5j), np.array(c, dtype=float) @ m(0.5 + 0.5j))
    assert np.allclose((m @ m)(2.0), m(2.0) @ m(2.0))


def test_sesqui_a1_closed_form():
    z = PuiseuxPoly.monomial(Fraction(1), Fraction(1))
    p = SesquiPoly.norm_squared([(1, PuiseuxPoly.constant(Fraction(1))), (1, z)])
    assert p.terms == {(0, 0): 1, (1, 1): 1}
    assert p.is_hermitian()
    # (log(1+|z|^2))_{z zbar} = 1/(1+|z|^2)^2 so the numerator is 1
    assert p.log_laplacian_numerator().terms == {(0, 0): 1}
    w = 1.5 - 0.5j
    assert p(w) == pytest.approx(1 + abs(w) ** 2)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 3), polys), min_size=1, max_size=3))
def test_norm_squared_hermitian_and_positive(rows):
    p = SesquiPoly.norm_squared(rows)
    assert p.is_hermitian()
    z = 0.3 + 0.9j
    val = p(z)
    assert abs(val.imag) <= 1e-9 * (1 + abs(val))
    assert val.real >= -1e-9
