from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toda_atlas import _linalg
from toda_atlas.liealg import (
    GammaData,
    LieType,
    LieTypeError,
    RootSystem,
    cartan_matrix,
    degrees,
    delta_gamma,
    minus_kappa,
    positive_roots,
)

ALL_TYPES = ["A1", "A2", "A3", "A6", "B2", "B3", "B5", "C2", "C3", "C5", "D3", "D4", "D5", "D6",
             "G2", "F4", "E6", "E7", "E8"]


@pytest.mark.parametrize("label", ["B1", "C1", "D2", "G3", "F5", "E5", "E9", "A0", "X3", "", "D"])
def test_invalid_types_rejected(label):
    with pytest.raises(LieTypeError):
        LieType.parse(label)


def test_parse_accepts_underscore_and_case():
    assert LieType.parse("d_4") == LieType("D", 4)
    assert str(LieType.parse(" e6 ")) == "E6"


def test_cartan_examples():
    assert cartan_matrix("A1") == ((2,),)
    assert cartan_matrix("A2") == ((2, -1), (-1, 2))
    assert cartan_matrix("G2") == ((2, -1), (-3, 2))
    # the -2 sits in the last column for B and in the last row for C
    assert cartan_matrix("B3") == ((2, -1, 0), (-1, 2, -2), (0, -1, 2))
    assert cartan_matrix("C3") == ((2, -1, 0), (-1, 2, -1), (0, -2, 2))
    assert cartan_matrix("D4") == ((2, -1, 0, 0), (-1, 2, -1, -1), (0, -1, 2, 0), (0, -1, 0, 2))


@pytest.mark.parametrize("label", ALL_TYPES)
def test_cartan_axioms_and_inverse(label):
    a = cartan_matrix(label)
    n = len(a)
    for i in range(n):
        assert a[i][i] == 2
        for j in range(n):
            if i != j:
                assert a[i][j] <= 0
                assert (a[i][j] == 0) == (a[j][i] == 0)
    rs = RootSystem.of(label)
    prod = _linalg.matmul([list(map(Fraction, r)) for r in a], [list(r) for r in rs.inv_cartan])
    assert prod == _linalg.identity(n)


@pytest.mark.parametrize("label", ALL_TYPES)
def test_root_count_and_degree_identity(label):
    t = LieType.parse(label)
    roots = positive_roots(t)
    assert len(roots) == (t.dimension - t.rank) // 2
    assert len(set(roots)) == len(roots)
    assert sum(2 * d - 1 for d in degrees(t)) == t.dimension
    # simple roots first, each exactly once
    for i, m in enumerate(roots[: t.rank]):
        assert m == tuple(int(k == i) for k in range(t.rank))
    heights = [sum(m) for m in roots]
    assert heights == sorted(heights)
    assert RootSystem.of(t).coxeter_number == max(degrees(t))


@pytest.mark.parametrize("label", ALL_TYPES)
def test_root_closure(label):
    rs = RootSystem.of(label)
    roots = set(rs.positive_roots)
    # every root above height 1 is a root plus a simple root
    for m in roots:
        if sum(m) > 1:
            assert any(tuple(x - int(k == i) for k, x in enumerate(m)) in roots for i in range(rs.rank))
    # closure: alpha + beta is a root exactly when the alpha-string says so
    for a in roots:
        for i in range(rs.rank):
            b = tuple(x + int(k == i) for k, x in enumerate(a))
            if b in roots:
                assert rs.is_root(b)


def test_positive_roots_examples():
    assert positive_roots("A1") == ((1,),)
    assert set(positive_roots("A2")) == {(1, 0), (0, 1), (1, 1)}
    assert len(positive_roots("D4")) == 12
    assert RootSystem.of("G2").highest_root == (3, 2)


def test_degree_tables():
    assert degrees("A4") == (2, 3, 4, 5)
    assert degrees("D4") == (2, 4, 6, 4)
    assert degrees("G2") == (2, 6)
    assert degrees("B3") == (2, 4, 6)
    assert degrees("E6") == (2, 5, 6, 8, 9, 12)


def test_minus_kappa_examples():
    assert minus_kappa("A3") == (2, 1, 0)
    assert minus_kappa("D4") == (0, 1, 2, 3)
    assert minus_kappa("D5") == (0, 1, 2, 4, 3)
    assert minus_kappa("E6") == (5, 1, 4, 3, 2, 0)
    assert minus_kappa("E7") == tuple(range(7))
    assert minus_kappa("B4") == tuple(range(4))


@pytest.mark.parametrize("label", ALL_TYPES)
def test_minus_kappa_is_diagram_involution(label):
    s = minus_kappa(label)
    a = cartan_matrix(label)
    n = len(s)
    assert all(s[s[i]] == i for i in range(n))
    assert all(a[s[i]][s[j]] == a[i][j] for i in range(n) for j in range(n))


def test_gamma_data_basics():
    g = GammaData.of("D4", ("-1/2", 1, 2, 3))
    assert g.mu == (Fraction(1, 2), 2, 3, 4)
    assert g.gamma_up == (3, Fraction(13, 2), Fraction(17, 4), Fraction(19, 4))
    assert g.w0_pairing((1, 1, 0, 0)) == Fraction(5, 2)
    with pytest.raises(ValueError):
        GammaData.of("A2", (-1, 0))
    with pytest.raises(ValueError):
        GammaData.of("A2", (0,))
    with pytest.raises(TypeError):
        GammaData.of("A2", (0.5, 0))


def test_gamma_up_solves_cartan_system():
    g = GammaData.of("B3", ("1/3", "-1/2", "5/7"))
    a = cartan_matrix("B3")
    for i in range(3):
        assert sum(a[i][j] * g.gamma_up[j] for j in range(3)) == g.gamma[i]


def test_delta_gamma_examples():
    rs = RootSystem.of("D4")
    d = delta_gamma(rs, GammaData.of("D4", ("-1/2", 1, 2, 3)))
    assert d == tuple(m for m in rs.positive_roots if m[0] == 0)
    a2 = RootSystem.of("A2")
    assert delta_gamma(a2, GammaData.of("A2", ("1/2", "1/2"))) == ((1, 1),)
    assert delta_gamma(a2, GammaData.of("A2", (3, 0))) == a2.positive_roots


fractions = st.fractions(min_value=Fraction(-5, 6), max_value=5, max_denominator=6)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A3", "B3", "C3", "D4", "G2"]), st.data())
def test_delta_gamma_integer_shift_invariance(label, data):
    rs = RootSystem.of(label)
    g = data.draw(st.lists(fractions, min_size=rs.rank, max_size=rs.rank))
    shift = data.draw(st.lists(st.integers(0, 4), min_size=rs.rank, max_size=rs.rank))
    a = delta_gamma(rs, GammaData(rs, tuple(g)))
    b = delta_gamma(rs, GammaData(rs, tuple(x + k for x, k in zip(g, shift))))
    assert a == b
