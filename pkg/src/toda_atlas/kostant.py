"""The holomorphic frame ``Phi`` with ``Phi^-1 Phi_z = sum z**gamma_i f_i``.

``Phi(0) = Id`` and ``Phi`` is a finite sum of Puiseux monomials because the
``f_i`` are nilpotent: the Picard iteration ``Phi <- Id + int_0^z Phi zeta``
adds exactly one layer (one step further below the top weight) per pass and
stops once a pass contributes nothing.

Three arithmetic modes share the same code:

``exact``
    ``Fraction`` exponents and coefficients (``gamma`` rational).
``float``
    float exponents and coefficients, for irrational ``gamma``.
``symbolic``
    sympy exponents and coefficients, for ``mu`` left as symbols.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .liealg import GammaData
from .puiseux import PuiseuxMatrix, PuiseuxPoly
from .repgen import MatrixRep

MODES = ("exact", "float", "symbolic")


def _exponents(gamma, mode):
    if mode == "exact":
        if isinstance(gamma, GammaData):
            return tuple(gamma.gamma)
        return tuple(Fraction(g) if not isinstance(g, float) else _reject_float(g) for g in gamma)
    if mode == "float":
        g = gamma.gamma if isinstance(gamma, GammaData) else gamma
        out = tuple(float(x) for x in g)
        if any(x <= -1 for x in out):
            raise ValueError("every gamma_i must satisfy gamma_i > -1")
        return out
    if mode == "symbolic":
        import sympy as sp

        g = gamma.gamma if isinstance(gamma, GammaData) else gamma
        return tuple(sp.sympify(x) for x in g)
    raise ValueError(f"mode must be one of {MODES}")


def _reject_float(g):
    raise TypeError(f"exact mode needs rational gamma, got float {g!r}; use mode='float'")


def _one(mode):
    if mode == "float":
        return 1.0
    if mode == "symbolic":
        import sympy as sp

        return sp.Integer(1)
    return Fraction(1)


def _scalar(x, mode):
    if mode == "float":
        return complex(x) if not isinstance(x, (int, Fraction)) else float(x)
    if mode == "symbolic":
        import sympy as sp

        return sp.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else sp.sympify(x)
    return x


def compute_phi(rep: MatrixRep, gamma, mode: str = "exact") -> PuiseuxMatrix:
    """Solve ``Phi^-1 Phi_z = sum_i z**gamma_i rho(f_i)``, ``Phi(0) = Id``.

    Parameters
    ----------
    rep : MatrixRep
    gamma : GammaData or sequence
        Source strengths; in ``symbolic`` mode entries may be sympy
        expressions (``gamma_i = mu_i - 1`` with ``mu_i`` symbols).
    mode : {"exact", "float", "symbolic"}

    Returns
    -------
    PuiseuxMatrix
        Lower unitriangular; entry ``(r, c)`` is a single monomial of
        exponent ``<drop_r - drop_c, mu>``.
    """
    key = tuple(str(x) for x in (gamma.gamma if isinstance(gamma, GammaData) else gamma))
    return _compute_phi_cached(rep, key, _exponents(gamma, mode), mode)


@lru_cache(maxsize=256)
def _compute_phi_cached(rep, _key, gam, mode):
    n = rep.dim
    # sparse zeta: list of (row, col, coefficient, exponent)
    zeta = []
    for f, g in zip(rep.gen_lower, gam):
        for r in range(n):
            for c in range(n):
                if f[r][c] != 0:
                    zeta.append((r, c, _scalar(f[r][c], mode), g))
    one = _one(mode)
    layer = [[PuiseuxPoly.constant(one) if i == j else PuiseuxPoly() for j in range(n)] for i in range(n)]
    total = [row[:] for row in layer]
    for _ in range(n + 1):
        nxt = [[PuiseuxPoly() for _ in range(n)] for _ in range(n)]
        touched = False
        for i in range(n):
            row = layer[i]
            for r, c, x, g in zeta:
                e = row[r]
                if e.is_zero():
                    continue
                nxt[i][c] = nxt[i][c] + PuiseuxPoly({p + g: a * x for p, a in e.terms.items()})
                touched = True
        if not touched:
            break
        layer = [[e.integrate() for e in row] for row in nxt]
        if all(e.is_zero() for row in layer for e in row):
            break
        total = [[a + b if not b.is_zero() else a for a, b in zip(ra, rb)] for ra, rb in zip(total, layer)]
    else:  # pragma: no cover - nilpotency bounds the loop
        raise RuntimeError("Picard iteration did not terminate")
    return PuiseuxMatrix(total)


def ode_defect(phi: PuiseuxMatrix, rep: MatrixRep, gamma, mode: str = "exact") -> PuiseuxMatrix:
    """``Phi_z - Phi zeta`` as a Puiseux matrix (identically zero for a solution)."""
    gam = _exponents(gamma, mode)
    n = rep.dim
    rows = [[e.derivative() for e in row] for row in phi.rows]
    for f, g in zip(rep.gen_lower, gam):
        for r in range(n):
            for c in range(n):
                if f[r][c] != 0:
                    x = _scalar(f[r][c], mode)
                    for i in range(n):
                        e = phi.rows[i][r]
                        if not e.is_zero():
                            rows[i][c] = rows[i][c] - PuiseuxPoly({p + g: a * x for p, a in e.terms.items()})
    return PuiseuxMatrix(rows)


def kostant_sum(rep: MatrixRep, gamma, mode: str = "exact") -> PuiseuxMatrix:
    """Independent route: ``sum_s z**phi(s) f_s / p(s)`` over index sequences.

    ``s = (i_1, ..., i_k)``, ``f_s = f_{i_1} ... f_{i_k}``,
    ``phi(s) = mu_{i_1} + ... + mu_{i_k}`` and ``p(s)`` is the product of the
    prefix sums ``mu_{i_1} (mu_{i_1} + mu_{i_2}) ...``.  Sequences whose
    matrix product vanishes are pruned.  Exponential in the depth; used as a
    test oracle only.
    """
    gam = _exponents(gamma, mode)
    one = _one(mode)
    mu = tuple(g + 1 for g in gam)
    n = rep.dim
    gens = [[[_scalar(x, mode) for x in row] for row in f] for f in rep.gen_lower]

    def matmul(a, b):
        return [[sum((a[i][k] * b[k][j] for k in range(n) if a[i][k] != 0 and b[k][j] != 0), 0 * one)
                 for j in range(n)] for i in range(n)]

    acc = {}

    def walk(prod, expo, denom):
        for i, f in enumerate(gens):
            new = matmul(prod, f)
            if all(x == 0 for row in new for x in row):
                continue
            e = expo + mu[i]
            d = denom * e
            for r in range(n):
                for c in range(n):
                    if new[r][c] != 0:
                        acc.setdefault((r, c), []).append((e, new[r][c] / d))
            walk(new, e, d)

    ident = [[one if i == j else 0 * one for j in range(n)] for i in range(n)]
    walk(ident, 0 * one, one)
    rows = [[PuiseuxPoly.constant(one) if i == j else PuiseuxPoly() for j in range(n)] for i in range(n)]
    for (r, c), terms in acc.items():
        poly = {}
        for e, v in terms:
            poly[e] = poly[e] + v if e in poly else v
        rows[r][c] = rows[r][c] + PuiseuxPoly(poly)
    return PuiseuxMatrix(rows)


def continue_around_origin(m: PuiseuxMatrix) -> PuiseuxMatrix:
    """Continuation along ``z -> z exp(-2 pi i)``: ``c z**p -> c exp(-2 pi i p) z**p``."""
    return m.continue_around_origin()


def t_gamma(rep: MatrixRep, g: GammaData) -> np.ndarray:
    """Diagonal of ``t_Gamma = exp(-2 pi i <drop_v, mu>)`` (entry 1 on the top).

    ``Ad t_Gamma`` multiplies the root space of ``-alpha`` by
    ``exp(-2 pi i alpha_Gamma)``, and the continued frame is
    ``t_Gamma Phi t_Gamma^-1``.
    """
    out = []
    for d in rep.drops:
        p = g.w0_pairing(d)
        frac = p - math.floor(p)
        out.append(1.0 + 0j if frac == 0 else cmath.exp(-2j * math.pi * float(frac)))
    return np.array(out)


def exponent_grid_ok(phi: PuiseuxMatrix, rep: MatrixRep, mu) -> bool:
    """Every monomial of entry ``(r, c)`` has exponent ``<drop_r - drop_c, mu>``."""
    for r, row in enumerate(phi.rows):
        for c, e in enumerate(row):
            want = sum(((a - b) * m for a, b, m in zip(rep.drops[r], rep.drops[c], mu)), 0 * mu[0])
            for p in e.terms:
                if p != want:
                    return False
    return True
