"""The solution family ``U_i = -log P_i + 2 gamma^i log|z|``.

``P_i(z) = <i| Phi^* C^* Lambda^2 C Phi |i>`` is the highest matrix
coefficient of ``X = Lambda C Phi`` in the ``i``-th fundamental
representation.  It is assembled as ``sum_u w_u |f_u(z)|**2`` from
*components* ``f_u``: the entries of the highest weight column of ``C Phi``
for spin-type indices, the leading ``k x k`` minors otherwise.  The
resulting list of weighted Puiseux polynomials is the only thing the
numeric kernel needs.

Parametrisation
---------------
``Lambda = exp(sum tau_k h_k)`` is stored as ``lambda_k = exp(tau_k)`` and
acts on a weight ``beta`` by ``prod lambda_k ** beta(h_k)``.
``C = prod_alpha exp(c_alpha f_alpha)`` over the positive roots in root
order, ``f_alpha`` as in :func:`toda_atlas.repgen.root_vectors`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import kernels
from .gaussrat import GaussRat
from .kostant import compute_phi
from .liealg import GammaData, LieType, RootSystem, _as_type, delta_gamma
from .puiseux import PuiseuxPoly, SesquiPoly
from .repgen import highest_coeff_rep, mul, root_vectors, standard_rep


class SingularPointError(ValueError):
    """Evaluation requested at ``z = 0``."""


def _parse_scalar(x):
    """Rational strings stay exact; ``[re, im]`` pairs become complex or GaussRat."""
    if isinstance(x, (list, tuple)):
        re, im = (_parse_scalar(v) for v in x)
        if isinstance(re, Fraction) and isinstance(im, Fraction):
            return GaussRat(re, im).simplify()
        return complex(float(re), float(im))
    if isinstance(x, str):
        s = x.strip()
        try:
            return Fraction(s)
        except ValueError:
            return complex(s.replace("i", "j"))
    return x


def root_key(m) -> str:
    return ",".join(str(x) for x in m)


def parse_root_key(s) -> tuple:
    return tuple(int(x) for x in str(s).split(","))


@dataclass(frozen=True)
class SolutionParams:
    """``(gamma, Lambda, C)`` for one solution.

    ``gamma`` holds ``Fraction`` entries (exact mode) or floats (float mode
    for irrational strengths).  ``c_items`` is a tuple of ``(root, value)``
    pairs with nonzero values, in root order.
    """

    lie_type: LieType
    gamma: tuple
    lambda_coords: tuple
    c_items: tuple = ()

    def __post_init__(self):
        t = _as_type(self.lie_type)
        object.__setattr__(self, "lie_type", t)
        n = t.rank
        g = tuple(self._coerce_gamma(x) for x in self.gamma)
        if len(g) != n:
            raise ValueError(f"need {n} gamma values, got {len(g)}")
        if any(x <= -1 for x in g):
            raise ValueError("every gamma_i must satisfy gamma_i > -1")
        lam = tuple(_parse_scalar(x) for x in self.lambda_coords) if self.lambda_coords else (1,) * n
        if len(lam) != n or any(x <= 0 for x in lam):
            raise ValueError(f"need {n} positive lambda coordinates")
        rs = RootSystem.of(t)
        pairs = self.c_items.items() if isinstance(self.c_items, dict) else self.c_items
        items = {parse_root_key(k) if isinstance(k, str) else tuple(k): v for k, v in pairs}
        cleaned = []
        for m in rs.positive_roots:
            if m in items:
                v = _parse_scalar(items.pop(m))
                if v != 0:
                    cleaned.append((m, v))
        if items:
            raise ValueError(f"not positive roots of {t}: {sorted(items)}")
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "lambda_coords", lam)
        object.__setattr__(self, "c_items", tuple(cleaned))

    @staticmethod
    def _coerce_gamma(x):
        if isinstance(x, float):
            return x
        if isinstance(x, str):
            try:
                return Fraction(x.strip())
            except ValueError:
                return float(x)
        return Fraction(x)

    # -- derived data ---------------------------------------------------
    @property
    def root_system(self) -> RootSystem:
        return RootSystem.of(self.lie_type)

    @property
    def exact_gamma(self) -> bool:
        return all(isinstance(x, Fraction) for x in self.gamma)

    @property
    def gamma_data(self) -> GammaData:
        if not self.exact_gamma:
            raise TypeError("gamma is not rational")
        return GammaData(self.root_system, self.gamma)

    @property
    def c(self) -> dict:
        return dict(self.c_items)

    @cached_property
    def gamma_up(self) -> tuple:
        if self.exact_gamma:
            return self.gamma_data.gamma_up
        inv = np.array(self.root_system.inv_cartan, dtype=float)
        return tuple(inv @ np.array(self.gamma, dtype=float))

    def alpha_gamma(self, m):
        return sum(k * (g + 1) for k, g in zip(m, self.gamma))

    def is_gamma_integral(self, m, tol=1e-12) -> bool:
        a = self.alpha_gamma(m)
        if isinstance(a, Fraction):
            return a.denominator == 1
        return abs(a - round(a)) < tol

    # -- conversions ------------------------------------------------------
    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, GaussRat):
                return [str(v.re), str(v.im)]
            if isinstance(v, Fraction):
                return [str(v), "0"]
            v = complex(v)
            return [v.real, v.imag]

        return {
            "type": str(self.lie_type),
            "gamma": [str(x) if isinstance(x, Fraction) else x for x in self.gamma],
            "lambda": [str(x) if isinstance(x, Fraction) else x for x in self.lambda_coords],
            "c": {root_key(m): enc(v) for m, v in self.c_items},
        }

    @classmethod
    def from_json(cls, data: dict) -> "SolutionParams":
        t = LieType.parse(data["type"])
        lam = data.get("lambda") or [1] * t.rank
        lam = [_parse_scalar(x) if isinstance(x, str) else x for x in lam]
        c = {parse_root_key(k): v for k, v in (data.get("c") or {}).items()}
        return cls(t, tuple(data["gamma"]), tuple(lam), c)


def in_n_gamma(p: SolutionParams) -> bool:
    """``C`` commutes with ``t_Gamma``: ``c_alpha = 0`` whenever ``alpha_Gamma`` is not an integer."""
    return all(p.is_gamma_integral(m) for m, _ in p.c_items)


def n_gamma_roots(p: SolutionParams) -> tuple:
    if p.exact_gamma:
        return delta_gamma(p.root_system, p.gamma_data)
    return tuple(m for m in p.root_system.positive_roots if p.is_gamma_integral(m))


# -- group elements ------------------------------------------------------

def exp_nilpotent(x):
    """``exp(X)`` for strictly lower triangular ``X`` (finite sum)."""
    n = len(x)
    one, zero = Fraction(1), Fraction(0)
    out = [[one if i == j else zero for j in range(n)] for i in range(n)]
    term = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        term = mul(term, x)
        term = [[v / k for v in row] for row in term]
        if all(v == 0 for row in term for v in row):
            break
        out = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(out, term)]
    return out


def c_matrix(rep, c_items):
    """``prod_alpha exp(c_alpha rho(f_alpha))`` in root order."""
    rs = RootSystem.of(rep.lie_type)
    fs = root_vectors(rep)
    n = rep.dim
    out = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    c = dict(c_items)
    for m in rs.positive_roots:
        if m in c:
            f = fs[rs.root_index[m]]
            out = mul(out, exp_nilpotent([[c[m] * v for v in row] for row in f]))
    return out


def lambda_factors(rep, lam):
    """Diagonal of ``Lambda`` in ``rep``: ``prod_k lambda_k ** beta_v(h_k)``."""
    out = []
    for wt in rep.weights:
        v = 1
        for x, e in zip(lam, wt):
            v = v * x**e
        out.append(v)
    return out


def lambda_from_diagonal(rep, diag):
    """Recover ``lambda`` coordinates from a diagonal ``Lambda`` in ``rep``.

    Solves ``sum_k tau_k beta_v(h_k) = log d_v``; raises if the diagonal is
    not of that form (e.g. the ``SO`` pairs do not multiply to 1).
    """
    w = np.array(rep.weights, dtype=float)
    rhs = np.log(np.asarray(diag, dtype=float))
    tau, *_ = np.linalg.lstsq(w, rhs, rcond=None)
    if np.max(np.abs(w @ tau - rhs)) > 1e-9:
        raise ValueError("diagonal matrix is not in the torus A of this representation")
    return tuple(np.exp(tau))


def product_coords_from_matrix(rep, cmat, tol=1e-10):
    """Product coordinates ``c_alpha`` of a unipotent matrix ``C`` in ``rep``.

    Peels off one height at a time: the lowest nonvanishing grade of the
    remainder is ``sum c_beta f_beta`` over the roots of that height.
    """
    rs = RootSystem.of(rep.lie_type)
    fs = root_vectors(rep)
    n = rep.dim
    rest = np.array(cmat, dtype=complex)
    height = {(r, c): sum(rep.drops[r]) - sum(rep.drops[c]) for r in range(n) for c in range(n)}
    coords = {}
    for h in range(1, max(rs.heights) + 1):
        group = [m for m in rs.positive_roots if sum(m) == h]
        cells = [(r, c) for (r, c), d in height.items() if d == h]
        a = np.array([[complex(fs[rs.root_index[m]][r][c]) for m in group] for r, c in cells])
        b = np.array([rest[r, c] for r, c in cells])
        sol, *_ = np.linalg.lstsq(a, b, rcond=None)
        if np.max(np.abs(a @ sol - b), initial=0.0) > tol:
            raise ValueError("matrix is not in the unipotent group of this representation")
        factor = np.eye(n, dtype=complex)
        for m, v in zip(group, sol):
            if abs(v) > tol:
                coords[m] = complex(v)
            f = np.array(fs[rs.root_index[m]], dtype=complex)
            factor = factor @ _np_expm_nilpotent(v * f)
        rest = np.linalg.solve(factor, rest)
    if np.max(np.abs(rest - np.eye(n))) > tol:
        raise ValueError("matrix is not in the unipotent group of this representation")
    return coords


def _np_expm_nilpotent(x):
    n = x.shape[0]
    out = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        term = term @ x / k
        out = out + term
    return out


# -- components and P -----------------------------------------------------

def _minor_components(rows, k):
    """``{S: det rows[S, :k]}`` over row subsets ``S`` (nonzero minors only)."""
    level = {(s,): rows[s][0] for s in range(len(rows)) if not rows[s][0].is_zero()}
    for j in range(1, k):
        nxt = {}
        for sub, d in level.items():
            for s in range(len(rows)):
                x = rows[s][j]
                if s in sub or x.is_zero():
                    continue
                new = tuple(sorted(sub + (s,)))
                pos = new.index(s)
                term = x * d
                if (pos + j) % 2:
                    term = -term
                nxt[new] = nxt[new] + term if new in nxt else term
        level = {s: d for s, d in nxt.items() if not d.is_zero()}
    return level


def components(params: SolutionParams, i: int, phi=None, mode=None):
    """Weighted components ``[(w_u, f_u), ...]`` with ``P_i = sum w_u |f_u|**2``.

    ``phi`` overrides the frame (used for the continued frame in monodromy
    checks); ``mode`` defaults to exact for rational ``gamma``.
    """
    strat = highest_coeff_rep(params.lie_type, i)
    rep = strat.rep
    mode = mode or ("exact" if params.exact_gamma else "float")
    if phi is None:
        phi = compute_phi(rep, params.gamma, mode)
    cm = c_matrix(rep, params.c_items)
    x = phi.lmul_constant(cm).rows
    lam = lambda_factors(rep, params.lambda_coords)
    scale = [lam[v] * lam[v] * rep.gram[v] for v in range(rep.dim)]
    if strat.kind == "rep":
        top = rep.hw_index
        norm = rep.gram[top]
        return [(scale[v] / norm, x[v][top]) for v in range(rep.dim) if not x[v][top].is_zero()]
    k = strat.order
    norm = 1
    for j in range(k):
        norm *= rep.gram[j]
    out = []
    for sub, d in sorted(_minor_components(x, k).items()):
        w = 1
        for s in sub:
            w *= scale[s]
        out.append((w / norm, d))
    return out


def build_P(params: SolutionParams, i: int, phi=None) -> SesquiPoly:
    """``P_i(z, zbar)`` as an exact (when the data are exact) sesquilinear polynomial."""
    return SesquiPoly.norm_squared(components(params, i, phi))


@dataclass(frozen=True)
class CompiledP:
    """CSR arrays of the components, ready for the numeric kernel."""

    row_ptr: np.ndarray
    exps: np.ndarray
    coefs: np.ndarray
    weights: np.ndarray

    @classmethod
    def from_components(cls, comps):
        row_ptr = [0]
        exps, coefs, weights = [], [], []
        for w, f in comps:
            e, c = f.numeric()
            exps.extend(e)
            coefs.extend(c)
            row_ptr.append(len(exps))
            weights.append(float(w))
        return cls(np.array(row_ptr, dtype=np.int_), np.array(exps, dtype=float),
                   np.array(coefs, dtype=complex), np.array(weights, dtype=float))

    def evaluate(self, logr, theta, backend=None):
        return kernels.logp_and_laplacian(self.row_ptr, self.exps, self.coefs, self.weights,
                                          logr, theta, backend=backend)


def polar(z):
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(z == 0):
        raise SingularPointError("z = 0 is the singular source")
    return np.log(np.abs(z)), np.angle(z)


class Solution:
    """Numeric evaluation of one member of the solution family.

    Parameters
    ----------
    params : SolutionParams
    continued : bool
        Use the frame continued once clockwise around the origin instead of
        ``Phi`` itself (the two agree iff ``C`` lies in ``N_Gamma``).
    """

    def __init__(self, params: SolutionParams, continued: bool = False):
        self.params = params
        self.continued = continued
        rs = params.root_system
        self.cartan = np.array(rs.cartan, dtype=float)
        self.gamma_up = np.array([float(x) for x in params.gamma_up])
        self.gamma = np.array([float(x) for x in params.gamma])
        mode = "exact" if params.exact_gamma else "float"
        compiled = []
        for i in range(rs.rank):
            phi = None
            if continued:
                rep = highest_coeff_rep(params.lie_type, i).rep
                phi = compute_phi(rep, params.gamma, mode).continue_around_origin()
            compiled.append(CompiledP.from_components(components(params, i, phi, mode)))
        self.compiled = compiled

    @property
    def rank(self) -> int:
        return len(self.compiled)

    def logp_and_laplacian(self, z, backend=None):
        """Arrays ``(rank, npts)``: ``log P_i`` and ``(log P_i)_{z zbar}``."""
        return self.logp_and_laplacian_polar(*polar(z), backend=backend)

    def logp_and_laplacian_polar(self, logr, theta, backend=None):
        logr = np.atleast_1d(np.asarray(logr, dtype=float))
        theta = np.array(np.broadcast_to(np.asarray(theta, dtype=float), logr.shape))
        lp = np.empty((self.rank, logr.size))
        lap = np.empty_like(lp)
        for i, c in enumerate(self.compiled):
            lp[i], lap[i] = c.evaluate(logr, theta, backend)
        return lp, lap

    def U(self, z):
        logr, _ = polar(z)
        lp, _ = self.logp_and_laplacian(z)
        return -lp + 2.0 * self.gamma_up[:, None] * logr[None, :]

    def u(self, z):
        """``u_i = sum_j a_ij U_j``, which is also ``log e^{u_i}``."""
        return self.cartan @ self.U(z)

    def eu(self, z):
        return np.exp(self.u(z))

    def u_polar(self, logr, theta):
        """``u_i`` at ``z = exp(logr + i theta)``; safe for ``|z|`` far from 1."""
        logr = np.atleast_1d(np.asarray(logr, dtype=float))
        lp, _ = self.logp_and_laplacian_polar(logr, theta)
        return self.cartan @ (-lp + 2.0 * self.gamma_up[:, None] * logr[None, :])

    def residual(self, z, backend=None):
        """``U_{i,z zbar} + exp(sum_j a_ij U_j)`` with the magnitude it is compared to.

        Returns ``(residual, scale)`` arrays of shape ``(rank, npts)`` where
        ``scale = max(|U_{i,z zbar}|, e^{u_i})``.
        """
        logr, _ = polar(z)
        lp, lap = self.logp_and_laplacian(z, backend)
        U = -lp + 2.0 * self.gamma_up[:, None] * logr[None, :]
        eu = np.exp(self.cartan @ U)
        return -lap + eu, np.maximum(lap, eu)


def monodromy_defect(params: SolutionParams, z) -> np.ndarray:
    """Per-index ``max |U_i~ - U_i|`` where ``U~`` uses the continued frame."""
    a = Solution(params).logp_and_laplacian(z)[0]
    b = Solution(params, continued=True).logp_and_laplacian(z)[0]
    return np.max(np.abs(a - b), axis=1)


def random_params(t, gamma, rng, *, in_group=True, lam_spread=0.5, c_scale=1.0, exact=False,
                  violate=None) -> SolutionParams:
    """Random ``Lambda`` and ``C``.

    ``in_group=True`` draws ``C`` in ``N_Gamma``; otherwise one root outside
    ``Delta_Gamma`` (``violate`` or a random one) gets a coefficient of
    modulus at least ``c_scale / 2``.  ``exact=True`` draws Gaussian
    rationals with small denominators.
    """
    t = _as_type(t)
    base = SolutionParams(t, tuple(gamma), (1,) * t.rank)
    rs = base.root_system
    good = set(n_gamma_roots(base))
    if exact:
        lam = tuple(Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 9))) for _ in range(t.rank))

        def draw():
            return GaussRat(Fraction(int(rng.integers(-8, 9)), int(rng.integers(1, 5))),
                            Fraction(int(rng.integers(-8, 9)), int(rng.integers(1, 5)))).simplify()
    else:
        lam = tuple(float(np.exp(rng.uniform(-lam_spread, lam_spread))) for _ in range(t.rank))

        def draw():
            return complex(rng.normal(scale=c_scale), rng.normal(scale=c_scale))

    c = {m: draw() for m in rs.positive_roots if m in good}
    if not in_group:
        bad = [m for m in rs.positive_roots if m not in good]
        if not bad:
            raise ValueError("every root is Gamma-integral; N_Gamma = N")
        m = tuple(violate) if violate is not None else bad[int(rng.integers(len(bad)))]
        v = draw()
        while abs(complex(v)) < c_scale / 2:
            v = draw()
        c[m] = v
    return SolutionParams(t, base.gamma, lam, c)


def u_slope_target(params: SolutionParams) -> np.ndarray:
    """``-2 (2 + gamma_{sigma(i)})``: large-``|z|`` slope of ``u_i`` against ``log|z|``."""
    sigma = params.root_system.minus_kappa()
    return np.array([-2.0 * (2.0 + float(params.gamma[sigma[i]])) for i in range(params.lie_type.rank)])


def quantization_target(params: SolutionParams) -> np.ndarray:
    """``pi (2 + gamma_i + gamma_{sigma(i)})``."""
    sigma = params.root_system.minus_kappa()
    g = [float(x) for x in params.gamma]
    return np.array([math.pi * (2.0 + g[i] + g[sigma[i]]) for i in range(len(g))])


__all__ = [
    "SolutionParams",
    "Solution",
    "SingularPointError",
    "in_n_gamma",
    "n_gamma_roots",
    "build_P",
    "components",
    "c_matrix",
    "lambda_factors",
    "lambda_from_diagonal",
    "product_coords_from_matrix",
    "monodromy_defect",
    "random_params",
    "u_slope_target",
    "quantization_target",
    "PuiseuxPoly",
]
