"""Reference data for the A2 and D4 examples and a runner that diffs against it."""

from __future__ import annotations

import math
from fractions import Fraction

import sympy as sp

from .kostant import compute_phi
from .liealg import GammaData
from .puiseux import PuiseuxPoly
from .repgen import standard_rep
from .solution import SolutionParams, Solution, build_P

D4_GAMMA = ("-1/2", "1", "2", "3")
D4_GAMMA_UP = (Fraction(3), Fraction(13, 2), Fraction(17, 4), Fraction(19, 4))

# (row, col) 1-based -> (coefficient, exponent); every other entry below the
# diagonal vanishes
D4_PHI = {
    (2, 1): ("2", "1/2"),
    (3, 1): ("1/5", "5/2"), (3, 2): ("1/2", "2"),
    (4, 1): ("2/165", "11/2"), (4, 2): ("1/15", "5"), (4, 3): ("1/3", "3"),
    (5, 1): ("1/156", "13/2"), (5, 2): ("1/24", "6"), (5, 3): ("1/4", "4"),
    (6, 1): ("-1/1026", "19/2"), (6, 2): ("-1/108", "9"), (6, 3): ("-1/12", "7"),
    (6, 4): ("-1/4", "4"), (6, 5): ("-1/3", "3"),
    (7, 1): ("1/6210", "23/2"), (7, 2): ("1/540", "11"), (7, 3): ("11/540", "9"),
    (7, 4): ("1/12", "6"), (7, 5): ("1/10", "5"), (7, 6): ("-1/2", "2"),
    (8, 1): ("-64/312455", "12"), (8, 2): ("-768/312455", "23/2"), (8, 3): ("-384/13585", "19/2"),
    (8, 4): ("-8/65", "13/2"), (8, 5): ("-8/55", "11/2"), (8, 6): ("4/5", "5/2"),
    (8, 7): ("-2", "1/2"),
}


def d4_expected_phi():
    rows = []
    for r in range(1, 9):
        row = []
        for c in range(1, 9):
            if r == c:
                row.append(PuiseuxPoly.constant(Fraction(1)))
            elif (r, c) in D4_PHI:
                co, ex = D4_PHI[(r, c)]
                row.append(PuiseuxPoly.monomial(Fraction(co), Fraction(ex)))
            else:
                row.append(PuiseuxPoly())
        rows.append(row)
    return rows


def check_d4_phi():
    phi = compute_phi(standard_rep("D4"), GammaData.of("D4", D4_GAMMA))
    want = d4_expected_phi()
    bad = [(r + 1, c + 1) for r in range(8) for c in range(8) if not phi.rows[r][c] == want[r][c]]
    return not bad, f"mismatched entries {bad}" if bad else "all 64 entries exact"


def check_d4_gamma_up():
    g = GammaData.of("D4", D4_GAMMA).gamma_up
    return g == D4_GAMMA_UP, "gamma^i = " + ", ".join(map(str, g))


def a2_symbols():
    return sp.symbols("mu1 mu2", positive=True)


def a2_expected_phi():
    m1, m2 = a2_symbols()
    return {(1, 0): (1 / m1, m1), (2, 0): (1 / (m2 * (m1 + m2)), m1 + m2), (2, 1): (1 / m2, m2)}


def check_a2_phi():
    m1, m2 = a2_symbols()
    phi = compute_phi(standard_rep("A2"), [m1 - 1, m2 - 1], mode="symbolic")
    want = a2_expected_phi()
    bad = []
    for r in range(3):
        for c in range(3):
            terms = phi.rows[r][c].terms
            if r == c:
                ok = terms == {0: 1}
            elif (r, c) in want:
                co, ex = want[(r, c)]
                ok = len(terms) == 1 and sp.simplify(list(terms)[0] - ex) == 0 \
                    and sp.simplify(list(terms.values())[0] - co) == 0
            else:
                ok = not terms
            if not ok:
                bad.append((r + 1, c + 1))
    return not bad, f"mismatched entries {bad}" if bad else "symbolic entries exact"


def check_a2_p1(z=0.8 + 0.3j):
    """``P_1`` against the explicit three-term formula for a fixed exact draw."""
    g = (Fraction(1, 3), Fraction(-1, 2))
    mu1, mu2 = (x + 1 for x in g)
    lam = (Fraction(3, 2), Fraction(2, 5))
    c = {(1, 0): Fraction(1, 2), (0, 1): Fraction(-2), (1, 1): Fraction(3, 4)}
    p = SolutionParams("A2", g, lam, c)
    val = build_P(p, 0)(z)
    # lambda_0..2 of the diagonal form, from lambda coordinates
    l0, l1, l2 = lam[0], lam[1] / lam[0], 1 / lam[1]
    # c_ij of the matrix C = exp(c_a1 f1) exp(c_a2 f2) exp(c_a12 f12)
    from .solution import c_matrix
    cm = c_matrix(standard_rep("A2"), p.c_items)
    c10, c20, c21 = cm[1][0], cm[2][0], cm[2][1]
    zm1, zm2 = z ** float(mu1), z ** float(mu2)
    t1 = zm1 / float(mu1) + float(c10)
    t2 = zm1 * zm2 / float(mu2 * (mu1 + mu2)) + float(c21) * zm1 / float(mu1) + float(c20)
    want = float(l0) ** 2 + float(l1) ** 2 * abs(t1) ** 2 + float(l2) ** 2 * abs(t2) ** 2
    err = abs(val.real - want) / want
    return err < 1e-13, f"relative gap {err:.2e}"


def check_d4_quantization():
    from .verify import quantization

    rep = quantization(SolutionParams("D4", D4_GAMMA, None))
    want = [math.pi * k for k in (1, 4, 6, 8)]
    ok = max(abs(a - b) / b for a, b in zip(rep.combos, want)) < 1e-3
    return ok, "combos/pi = " + ", ".join(f"{x / math.pi:.8f}" for x in rep.combos)


def check_d4_slopes():
    from .verify import asymptotic_slope

    rep = asymptotic_slope(SolutionParams("D4", D4_GAMMA, None))
    ok = max(rep.deviations) < 0.02 and rep.targets[0] == -3.0
    return ok, "slopes " + ", ".join(f"{x:.4f}" for x in rep.slopes)


def check_a2_quantization():
    from .verify import quantization

    rep = quantization(SolutionParams("A2", (0, 0), None))
    ok = max(rep.rel_errors) < 1e-4
    return ok, "combos/pi = " + ", ".join(f"{x / math.pi:.10f}" for x in rep.combos)


CHECKS = (
    ("A2 Phi (symbolic mu)", check_a2_phi),
    ("A2 P_1 explicit formula", check_a2_p1),
    ("A2 quantization gamma=0", check_a2_quantization),
    ("D4 Phi entries", check_d4_phi),
    ("D4 gamma^i", check_d4_gamma_up),
    ("D4 quantization", check_d4_quantization),
    ("D4 slopes", check_d4_slopes),
)


def run_all():
    out = []
    for name, fn in CHECKS:
        ok, detail = fn()
        out.append((name, bool(ok), detail))
    return out
