"""Numerical certification of solutions.

* PDE residual ``U_{i,z zbar} + exp(sum_j a_ij U_j)`` from exact derivatives.
* Quantization ``sum_j a_ij int e^{u_j} = pi (2 + gamma_i + gamma_{sigma(i)})``.
* Large-``|z|`` slopes of ``u_i`` against ``log|z|``.
* Float-mode evaluation for irrational ``gamma``.
* Independent oracles: the Jacobi identity for highest coefficients and a
  numerical ODE integration of the frame equation.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.integrate import quad_vec, solve_ivp

from .kostant import compute_phi, kostant_sum
from .repgen import highest_coeff_rep, wedge_rep
from .solution import (
    Solution,
    SolutionParams,
    c_matrix,
    in_n_gamma,
    lambda_factors,
    quantization_target,
    u_slope_target,
)


class QuadratureError(RuntimeError):
    """The quadrature did not reach the requested tolerance."""


def sample_points(n=100, rmin=1e-2, rmax=1e2, nangles=8, seed=None):
    """Log-uniform radii times evenly spread angles (offset from the cut).

    With ``seed`` the radii and angles are drawn at random instead.
    """
    if seed is not None:
        rng = np.random.default_rng(seed)
        r = np.exp(rng.uniform(math.log(rmin), math.log(rmax), n))
        th = rng.uniform(-math.pi, math.pi, n)
        return r * np.exp(1j * th)
    nr = max(1, -(-n // nangles))
    r = np.exp(np.linspace(math.log(rmin), math.log(rmax), nr))
    th = -math.pi + (np.arange(nangles) + 0.5) * (2 * math.pi / nangles)
    return (r[:, None] * np.exp(1j * th[None, :])).ravel()[:n]


@dataclass
class ResidualReport:
    max_abs: float
    max_rel: float
    per_index_abs: list
    npoints: int


def pde_residual(p: SolutionParams, points=None, solution: Solution | None = None) -> ResidualReport:
    """Maximal ``|U_{i,z zbar} + exp(sum_j a_ij U_j)|`` over the points.

    ``max_rel`` divides by ``max(|U_{i,z zbar}|, e^{u_i})`` pointwise.
    """
    z = sample_points() if points is None else np.asarray(points, dtype=complex)
    sol = solution or Solution(p)
    res, scale = sol.residual(z)
    a = np.abs(res)
    return ResidualReport(float(a.max()), float((a / scale).max()), a.max(axis=1).tolist(), int(z.size))


# -- quantization -------------------------------------------------------

@dataclass
class QuantizationReport:
    integrals: list
    integral_errors: list
    combos: list
    targets: list
    rel_errors: list
    nangles: int
    diagnostics: dict = field(default_factory=dict)

    def to_json(self):
        return asdict(self)


def _angular_means(sol: Solution, logr: float, nangles: int) -> np.ndarray:
    # midpoint nodes never touch the cut theta = +-pi
    th = -math.pi + (np.arange(nangles) + 0.5) * (2 * math.pi / nangles)
    u = sol.u_polar(np.full(nangles, logr), th)
    return np.exp(u).sum(axis=1) * (2 * math.pi / nangles)


def integrals_e_u(sol: Solution, nangles=64, epsabs=1e-10, epsrel=1e-9, limit=4000):
    """``(I, err)`` with ``I_i = int_C e^{u_i} dx`` in polar coordinates.

    The radial integral is split at ``r = 1``; the tail uses ``r = 1/s``.
    """
    def inner(s):
        if s <= 0.0:
            return np.zeros(sol.rank)
        return s * _angular_means(sol, math.log(s), nangles)

    def outer(s):
        if s <= 0.0:
            return np.zeros(sol.rank)
        return _angular_means(sol, -math.log(s), nangles) / s**3

    kw = dict(epsabs=epsabs, epsrel=epsrel, limit=limit, norm="max")
    i1, e1, info1 = quad_vec(inner, 0.0, 1.0, full_output=True, **kw)
    i2, e2, info2 = quad_vec(outer, 0.0, 1.0, full_output=True, **kw)
    ok = info1.success and info2.success
    return i1 + i2, np.full(sol.rank, e1 + e2), ok


def quantization(p: SolutionParams, nangles=64, check_refinement=False, **kw) -> QuantizationReport:
    """Compare ``sum_j a_ij I_j`` with ``pi (2 + gamma_i + gamma_{sigma(i)})``.

    Only defined for single-valued solutions, so ``C`` must lie in
    ``N_Gamma``.  With ``check_refinement`` the computation is repeated with
    twice the angles and tighter tolerances; the relative change is
    reported under ``diagnostics["refinement_change"]``.
    """
    if not in_n_gamma(p):
        raise ValueError("C is not in N_Gamma: e^{u_i} is multivalued and has no integral over C*")
    sol = Solution(p)
    ints, errs, ok = integrals_e_u(sol, nangles, **kw)
    if not ok:
        raise QuadratureError(f"radial quadrature did not converge (integrals {ints}, error {errs})")
    a = sol.cartan
    combos = a @ ints
    targets = quantization_target(p)
    rel = np.abs(combos - targets) / np.abs(targets)
    diag = {"combo_error_bound": (np.abs(a) @ errs).tolist()}
    if check_refinement:
        kw2 = dict(kw)
        kw2["epsrel"] = kw.get("epsrel", 1e-9) / 2
        ints2, _, _ = integrals_e_u(sol, 2 * nangles, **kw2)
        diag["refinement_change"] = float(np.max(np.abs(a @ ints2 - combos) / np.abs(combos)))
    return QuantizationReport(ints.tolist(), errs.tolist(), combos.tolist(), targets.tolist(),
                              rel.tolist(), nangles, diag)


# -- asymptotics -----------------------------------------------------------

@dataclass
class SlopeReport:
    slopes: list
    targets: list
    deviations: list
    radii: list
    circle_means: list


def asymptotic_slope(p: SolutionParams, radii=None, nangles=16) -> SlopeReport:
    """Least-squares slope of the circle mean of ``u_i`` against ``log r``."""
    radii = np.logspace(3, 5, 9) if radii is None else np.asarray(radii, dtype=float)
    if np.any(np.diff(radii) <= 0):
        raise ValueError("radii must increase")
    sol = Solution(p)
    th = -math.pi + (np.arange(nangles) + 0.5) * (2 * math.pi / nangles)
    means = np.array([sol.u_polar(np.full(nangles, math.log(r)), th).mean(axis=1) for r in radii])
    x = np.log(radii)
    xc = x - x.mean()
    slopes = (xc @ (means - means.mean(axis=0))) / (xc @ xc)
    targets = u_slope_target(p)
    return SlopeReport(slopes.tolist(), targets.tolist(), np.abs(slopes - targets).tolist(),
                       radii.tolist(), means.tolist())


# -- float mode ------------------------------------------------------------

def float_mode_eval(p: SolutionParams, z) -> np.ndarray:
    """``U`` computed with float exponents, whatever the type of ``gamma``."""
    fp = SolutionParams(p.lie_type, tuple(float(x) for x in p.gamma), p.lambda_coords, p.c_items)
    return Solution(fp).U(z)


# -- oracles ---------------------------------------------------------------

def _numeric_x(p: SolutionParams, rep, z):
    phi = compute_phi(rep, p.gamma, "exact" if p.exact_gamma else "float")
    cm = np.array(c_matrix(rep, p.c_items), dtype=complex)
    lam = np.array([float(x) for x in lambda_factors(rep, p.lambda_coords)])
    return lam[:, None] * (cm @ phi(z))


def jacobi_defect(p: SolutionParams, i: int, z) -> float:
    """Relative defect of the Jacobi identity for the ``i``-th coefficient at ``z``.

    With ``g = X^* X``, ``X = Lambda C Phi(z)``::

        <i|g|i><i|e_i g f_i|i> - <i|g f_i|i><i|e_i g|i> = prod_{j != i} <j|g|j>^(-a_ij)

    The left side is computed from matrices in the ``i``-th fundamental
    representation, the right side from the highest coefficients used by
    the solution, so the two routes share only ``Phi``'s defining equation.
    """
    strat = highest_coeff_rep(p.lie_type, i)
    rep = strat.rep if strat.kind == "rep" or strat.order == 1 else wedge_rep(strat.rep, strat.order)
    x = _numeric_x(p, rep, z)
    w = np.array([float(v) for v in rep.gram])
    g = (x.conj().T * w) @ x / w[:, None]
    e = np.array(rep.gen_upper[i], dtype=float)
    f = np.array(rep.gen_lower[i], dtype=float)
    top = rep.hw_index
    lhs = g[top, top] * (e @ g @ f)[top, top] - (g @ f)[top, top] * (e @ g)[top, top]
    sol = Solution(p)
    lp = sol.logp_and_laplacian(np.array([z]))[0][:, 0]
    a = p.root_system.cartan
    rhs = math.exp(sum(-a[i][j] * lp[j] for j in range(p.lie_type.rank) if j != i))
    # <i|g|i> itself must match the column-norm/minor route too
    self_check = abs(g[top, top].real - math.exp(lp[i])) / math.exp(lp[i])
    return max(abs(lhs - rhs) / abs(rhs), self_check)


def ode_oracle_defect(rep, gamma, z, t0=0.01, rtol=1e-13, atol=1e-15) -> float:
    """Relative gap between ``Phi(z)`` and a DOP853 integration along the ray.

    The ODE ``dPhi/dt = Phi zeta(t e^{i theta}) e^{i theta}`` is started at
    ``t0 * e^{i theta}`` from the Kostant-sum value there.  ``z`` may be a
    single point or a sequence; the worst gap is returned.
    """
    gam = [float(g) for g in (gamma.gamma if hasattr(gamma, "gamma") else gamma)]
    fs = [np.array(f, dtype=float) for f in rep.gen_lower]
    n = rep.dim
    start_frame = kostant_sum(rep, gamma)
    exact_frame = compute_phi(rep, gamma)
    worst = 0.0
    for w in np.atleast_1d(np.asarray(z, dtype=complex)):
        theta = math.atan2(w.imag, w.real)
        unit = complex(math.cos(theta), math.sin(theta))

        def rhs(t, y):
            zt = t * unit
            zeta = sum(np.exp(g * np.log(zt)) * f for g, f in zip(gam, fs))
            return (y.reshape(n, n) @ zeta * unit).ravel()

        start = start_frame(t0 * unit)
        sol = solve_ivp(rhs, (t0, abs(w)), start.ravel().astype(complex), method="DOP853",
                        rtol=rtol, atol=atol)
        if not sol.success:  # pragma: no cover
            raise RuntimeError(sol.message)
        num = sol.y[:, -1].reshape(n, n)
        exact = exact_frame(w)
        worst = max(worst, float(np.max(np.abs(num - exact)) / np.max(np.abs(exact))))
    return worst
