import math
from fractions import Fraction

import numpy as np
import pytest

from toda_atlas.golden import check_a2_p1
from toda_atlas.kostant import compute_phi
from toda_atlas.repgen import standard_rep
from toda_atlas.solution import (
    SingularPointError,
    Solution,
    SolutionParams,
    build_P,
    c_matrix,
    in_n_gamma,
    lambda_factors,
    lambda_from_diagonal,
    monodromy_defect,
    n_gamma_roots,
    parse_root_key,
    product_coords_from_matrix,
    random_params,
    root_key,
)
from toda_atlas.verify import sample_points

F = Fraction
D4_GAMMA = (F(-1, 2), F(1), F(2), F(3))


def test_a1_closed_form():
    sol = Solution(SolutionParams("A1", (0,), None))
    assert sol.U(np.array([1.0]))[0, 0] == pytest.approx(-math.log(2), abs=1e-15)
    z = np.array([0.3 + 0.4j, -2 + 1j, 10j])
    assert np.allclose(sol.U(z)[0], -np.log1p(np.abs(z) ** 2), rtol=1e-14)
    assert np.allclose(sol.eu(z)[0], 1 / (1 + np.abs(z) ** 2) ** 2, rtol=1e-13)


def test_a2_p1_against_explicit_formula():
    ok, detail = check_a2_p1()
    assert ok, detail


def test_a2_p1_general_draw():
    """``P_1`` equals the squared norm of the first column of ``Lambda C Phi``."""
    rng = np.random.default_rng(0)
    for _ in range(5):
        p = random_params("A2", (F(1, 3), F(-1, 4)), rng, exact=True)
        rep = standard_rep("A2")
        lam = np.array([float(x) for x in lambda_factors(rep, p.lambda_coords)])
        cm = np.array(c_matrix(rep, p.c_items), dtype=complex)
        for z in (0.5 + 0.5j, -1.0 + 0.2j, 3.0):
            col = lam * (cm @ compute_phi(rep, p.gamma)(z))[:, 0]
            assert build_P(p, 0)(z).real == pytest.approx(np.sum(np.abs(col) ** 2), rel=1e-13)


def test_d4_first_coefficient_with_identity_group_elements():
    p = SolutionParams("D4", D4_GAMMA, None)
    z = 0.7 + 0.4j
    # entries of the first column of the frame, exponent -> coefficient
    col = [(0, 1), (F(1, 2), 2), (F(5, 2), F(1, 5)), (F(11, 2), F(2, 165)), (F(13, 2), F(1, 156)),
           (F(19, 2), F(-1, 1026)), (F(23, 2), F(1, 6210)), (12, F(-64, 312455))]
    want = sum(abs(float(c) * z ** float(e)) ** 2 for e, c in col)
    assert build_P(p, 0)(z).real == pytest.approx(want, rel=1e-14)


def test_identity_gives_unit_coefficient_at_origin():
    for label, gamma in (("A3", (0, F(1, 2), 1)), ("D4", D4_GAMMA), ("B3", (1, 0, 0)), ("G2", (0, 0))):
        sol = Solution(SolutionParams(label, gamma, None))
        lp, _ = sol.logp_and_laplacian(np.array([1e-13 + 1e-13j]))
        assert np.allclose(lp[:, 0], 0.0, atol=1e-11)


def test_in_n_gamma_examples():
    assert in_n_gamma(SolutionParams("B2", (1, 2), None, {(1, 0): 3.0, (1, 2): 1j}))
    assert not in_n_gamma(SolutionParams("D4", D4_GAMMA, None, {(1, 0, 0, 0): 1.0}))
    assert in_n_gamma(SolutionParams("D4", D4_GAMMA, None, {(0, 1, 1, 0): 1.0}))
    assert in_n_gamma(SolutionParams("D4", D4_GAMMA, None))
    assert set(n_gamma_roots(SolutionParams("D4", D4_GAMMA, None))) == {
        m for m in SolutionParams("D4", D4_GAMMA, None).root_system.positive_roots if m[0] == 0}


def test_singular_point_rejected():
    sol = Solution(SolutionParams("A2", (0, 0), None))
    with pytest.raises(SingularPointError):
        sol.U(np.array([0.0]))


@pytest.mark.parametrize("label", ["A3", "B3", "C3", "D5", "G2"])
def test_positivity_and_relations(label):
    rng = np.random.default_rng(len(label))
    rank = int(label[1])
    gamma = tuple(F(int(k), 3) for k in rng.integers(-2, 7, rank))
    p = random_params(label, gamma, rng)
    sol = Solution(p)
    z = sample_points(64, 1e-3, 1e3)
    lp, _ = sol.logp_and_laplacian(z)
    assert np.all(np.isfinite(lp))
    U = sol.U(z)
    assert np.allclose(sol.u(z), sol.cartan @ U)
    # e^{u_i} = |z|^{2 gamma_i} prod_j P_j^{-a_ij}
    direct = np.exp(2 * sol.gamma[:, None] * np.log(np.abs(z))[None, :] - sol.cartan @ lp)
    assert np.allclose(sol.eu(z), direct, rtol=1e-12)


def test_lambda_shift_at_origin():
    """Scaling ``lambda_i`` by ``e^tau`` shifts ``-log P_i`` by ``-2 tau`` near 0."""
    base = SolutionParams("C3", (F(1, 2), 0, 1), None)
    tau = (0.3, -0.2, 0.7)
    moved = SolutionParams("C3", base.gamma, tuple(math.exp(t) for t in tau))
    z = np.array([1e-10 + 0j])
    a = Solution(base).logp_and_laplacian(z)[0][:, 0]
    b = Solution(moved).logp_and_laplacian(z)[0][:, 0]
    assert np.allclose(-(b - a), -2 * np.array(tau), atol=1e-9)


def test_lambda_diagonal_conversion_d4():
    rep = standard_rep("D4")
    lam = (1.5, 0.5, 2.0, 0.8)
    diag = lam + tuple(1 / x for x in reversed(lam))
    coords = lambda_from_diagonal(rep, diag)
    assert np.allclose(lambda_factors(rep, coords), diag)
    with pytest.raises(ValueError):
        lambda_from_diagonal(rep, (1, 1, 1, 1, 1, 1, 1, 2))


@pytest.mark.parametrize("label", ["A3", "B2", "C3", "D4"])
def test_product_coordinates_round_trip(label):
    rng = np.random.default_rng(5)
    rep = standard_rep(label)
    p = random_params(label, (0,) * rep.rank, rng)
    got = product_coords_from_matrix(rep, c_matrix(rep, p.c_items))
    want = dict(p.c_items)
    for m in p.root_system.positive_roots:
        assert abs(complex(got.get(m, 0)) - complex(want.get(m, 0))) < 1e-10


def test_params_json_round_trip():
    p = SolutionParams("D4", ("-1/2", 1, 2, 3), (1.5, "2/3", 1, 1), {"0,1,1,0": [1.0, -2.0], (0, 1, 0, 0): 3})
    data = p.to_json()
    assert data["gamma"] == ["-1/2", "1", "2", "3"]
    assert SolutionParams.from_json(data) == p
    assert parse_root_key(root_key((0, 1, 1, 0))) == (0, 1, 1, 0)
    with pytest.raises(ValueError):
        SolutionParams("A2", (0, 0), (1, -1))
    with pytest.raises(ValueError):
        SolutionParams("A2", (0, 0), None, {(2, 0): 1.0})


def test_monodromy_examples():
    z = sample_points(40, 0.1, 10.0)
    assert np.max(monodromy_defect(SolutionParams("D4", D4_GAMMA, None), z)) < 1e-10
    bad = SolutionParams("D4", D4_GAMMA, None, {(1, 0, 0, 0): 1.0})
    assert np.max(monodromy_defect(bad, z)) > 1e-2
    with pytest.raises(ValueError):
        random_params("A2", (0, 1), np.random.default_rng(0), in_group=False)


def test_float_gamma_monodromy_detects_violation():
    rng = np.random.default_rng(9)
    g = (math.sqrt(2) - 1, 0.0)
    z = sample_points(24, 0.1, 10.0)
    good = random_params("A2", g, rng)
    assert in_n_gamma(good)
    assert np.max(monodromy_defect(good, z)) < 1e-10
    bad = SolutionParams("A2", g, None, {(1, 0): 1.0})
    assert not in_n_gamma(bad)
    assert np.max(monodromy_defect(bad, z)) > 1e-4
