"""Command-line front end: ``toda-atlas <command> ...``.

Exit status: 0 success, 1 a verification failed, 2 bad input or IO error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .kostant import compute_phi
from .liealg import GammaData, LieType, LieTypeError, RootSystem
from .repgen import UnsupportedTypeError, g2_rep, spin_rep, standard_rep
from .solution import (
    Solution,
    SolutionParams,
    in_n_gamma,
    monodromy_defect,
    n_gamma_roots,
    root_key,
)
from . import verify, winvariant


class InputError(Exception):
    """Malformed command-line input (exit status 2)."""


# -- parsing helpers -----------------------------------------------------

def _split_list(text):
    return [x for x in (s.strip() for s in text.split(",")) if x]


def _load_json_arg(text):
    if text is None:
        return None
    p = Path(text)
    try:
        if p.exists():
            return json.loads(p.read_text())
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {text!r}: {exc}") from exc


def params_from_args(args) -> SolutionParams:
    data = _load_json_arg(getattr(args, "params", None)) or {}
    if args.type:
        data["type"] = args.type
    if args.gamma:
        data["gamma"] = _split_list(args.gamma)
    if getattr(args, "lam", None):
        data["lambda"] = [float(x) if "/" not in x else x for x in _split_list(args.lam)]
    if getattr(args, "c", None):
        data["c"] = _load_json_arg(args.c)
    if "type" not in data or "gamma" not in data:
        raise InputError("need --type and --gamma (or --params with both)")
    try:
        return SolutionParams.from_json(data)
    except (ValueError, TypeError, KeyError, LieTypeError) as exc:
        raise InputError(str(exc)) from exc


def parse_grid(text):
    try:
        rmin, rmax, nr, nt = text.split(":")
        rmin, rmax, nr, nt = float(rmin), float(rmax), int(nr), int(nt)
    except ValueError as exc:
        raise InputError(f"--grid wants rmin:rmax:nr:ntheta, got {text!r}") from exc
    if not (0 < rmin <= rmax) or nr < 1 or nt < 1:
        raise InputError("--grid needs 0 < rmin <= rmax and positive counts")
    r = np.exp(np.linspace(math.log(rmin), math.log(rmax), nr))
    th = -math.pi + (np.arange(nt) + 0.5) * (2 * math.pi / nt)
    return (r[:, None] * np.exp(1j * th[None, :])).ravel()


def _frac(x):
    return str(Fraction(x)) if isinstance(x, Fraction) else x


def _emit(args, text):
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_frac) + "\n"


# -- commands --------------------------------------------------------------

def cmd_info(args):
    t = LieType.parse(args.lie_type)
    rs = RootSystem.of(t)
    info = {
        "type": str(t),
        "rank": t.rank,
        "dimension": t.dimension,
        "cartan": [list(r) for r in rs.cartan],
        "degrees": list(rs.degrees()),
        "minus_kappa": [s + 1 for s in rs.minus_kappa()],
        "positive_roots": [list(m) for m in rs.positive_roots],
        "n_positive_roots": len(rs.positive_roots),
        "coxeter_number": rs.coxeter_number,
    }
    if args.format == "json":
        return _emit(args, _dump(info))
    lines = [f"type {t}  rank {t.rank}  dim {t.dimension}",
             "cartan matrix a_ij = alpha_i(h_j):"]
    lines += ["  " + " ".join(f"{x:3d}" for x in row) for row in rs.cartan]
    lines.append("degrees " + " ".join(map(str, info["degrees"])))
    lines.append("-kappa  " + " ".join(f"{i + 1}->{s}" for i, s in enumerate(info["minus_kappa"])))
    lines.append(f"{len(rs.positive_roots)} positive roots:")
    lines += ["  " + " ".join(map(str, m)) for m in rs.positive_roots]
    _emit(args, "\n".join(lines) + "\n")


def _rep_for(t, name):
    if name == "standard":
        return g2_rep() if t.family == "G" else standard_rep(t)
    if name in ("spin", "half_plus", "half_minus"):
        return spin_rep(t, name)
    raise InputError(f"unknown representation {name!r}")


def cmd_phi(args):
    t = LieType.parse(args.type)
    try:
        g = GammaData.of(t, _split_list(args.gamma))
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    phi = compute_phi(_rep_for(t, args.rep), g)
    if args.format == "json":
        return _emit(args, json.dumps(phi.to_json(), sort_keys=True) + "\n")
    _emit(args, phi.pretty() + "\n")


def cmd_solve(args):
    p = params_from_args(args)
    z = parse_grid(args.grid)
    sol = Solution(p)
    U = sol.U(z)
    u = sol.cartan @ U
    n = p.lie_type.rank
    if args.format == "json":
        rows = [{"x1": float(w.real), "x2": float(w.imag), "U": U[:, k].tolist(), "u": u[:, k].tolist()}
                for k, w in enumerate(z)]
        return _emit(args, _dump({"params": p.to_json(), "points": rows}))
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["x1", "x2"] + [f"U_{i + 1}" for i in range(n)] + [f"u_{i + 1}" for i in range(n)])
    for k, w in enumerate(z):
        wr.writerow([repr(float(w.real)), repr(float(w.imag))]
                    + [repr(float(x)) for x in U[:, k]] + [repr(float(x)) for x in u[:, k]])
    _emit(args, buf.getvalue())


def cmd_verify_pde(args):
    p = params_from_args(args)
    z = parse_grid(args.grid) if args.grid else verify.sample_points()
    rep = verify.pde_residual(p, z)
    ok = rep.max_abs < args.tol
    _emit(args, _dump({"ok": ok, "tolerance": args.tol, **rep.__dict__}))
    return 0 if ok else 1


def cmd_verify_quant(args):
    p = params_from_args(args)
    try:
        rep = verify.quantization(p, nangles=args.nangles)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    ok = max(rep.rel_errors) < args.tol
    _emit(args, _dump({"ok": ok, "tolerance": args.tol, **rep.to_json()}))
    return 0 if ok else 1


def cmd_verify_asymp(args):
    p = params_from_args(args)
    radii = np.logspace(math.log10(args.rmin), math.log10(args.rmax), args.nr)
    rep = verify.asymptotic_slope(p, radii)
    ok = max(rep.deviations) < args.tol
    if args.format == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        n = p.lie_type.rank
        wr.writerow(["r", "log_r"] + [f"mean_u_{i + 1}" for i in range(n)])
        for r, m in zip(rep.radii, rep.circle_means):
            wr.writerow([repr(r), repr(math.log(r))] + [repr(x) for x in m])
        _emit(args, buf.getvalue())
    else:
        _emit(args, _dump({"ok": ok, "tolerance": args.tol, **rep.__dict__}))
    return 0 if ok else 1


def cmd_monodromy(args):
    p = params_from_args(args)
    z = parse_grid(args.grid) if args.grid else verify.sample_points(40, 0.1, 10.0)
    d = monodromy_defect(p, z)
    member = in_n_gamma(p)
    single_valued = bool(np.max(d) < args.tol)
    out = {
        "defects": d.tolist(),
        "in_N_Gamma": member,
        "single_valued": single_valued,
        "consistent": member == single_valued,
        "delta_gamma": [root_key(m) for m in n_gamma_roots(p)],
    }
    _emit(args, _dump(out))
    return 0 if out["consistent"] else 1


def cmd_winv(args):
    t = LieType.parse(args.type)
    try:
        g = GammaData.of(t, _split_list(args.gamma))
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    res = winvariant.w_invariants(t, g.gamma_up)
    rows = [{"degree": d, "coefficient": str(w.get(-d, Fraction(0))),
             "pure_pole": set(w) <= {-d}} for d, w in res]
    if args.format == "json":
        _emit(args, _dump({"type": str(t), "gamma": [str(x) for x in g.gamma], "invariants": rows}))
    else:
        _emit(args, "".join(f"d={r['degree']}  w={r['coefficient']}  z^-{r['degree']}\n" for r in rows))
    return 0 if all(r["pure_pole"] for r in rows) else 1


def cmd_golden(args):
    from . import golden

    results = golden.run_all()
    width = max(len(name) for name, _, _ in results)
    lines = [f"{'PASS' if ok else 'FAIL'}  {name:<{width}}  {detail}" for name, ok, detail in results]
    _emit(args, "\n".join(lines) + "\n")
    return 0 if all(ok for _, ok, _ in results) else 1


# -- parser ------------------------------------------------------------------

def _add_params(sp_):
    sp_.add_argument("--params", help="solution parameters as a JSON file or inline JSON")
    sp_.add_argument("--type", help="Lie type, e.g. D4")
    sp_.add_argument("--gamma", help="comma-separated gamma_i, rationals like -1/2")
    sp_.add_argument("--lambda", dest="lam", help="comma-separated positive lambda coordinates")
    sp_.add_argument("--c", help='JSON object of c_alpha, e.g. {"0,1,1,0": [1, 0]}')


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="toda-atlas", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, fmt=("json",), default=None):
        sp_ = sub.add_parser(name, help=help_)
        sp_.set_defaults(func=fn)
        sp_.add_argument("--out", help="write output to this file")
        sp_.add_argument("--format", choices=fmt, default=default or fmt[0])
        return sp_

    sp_ = add("info", cmd_info, "Cartan matrix, degrees and roots", ("text", "json"))
    sp_.add_argument("lie_type")

    sp_ = add("phi", cmd_phi, "exact frame Phi as a Puiseux matrix", ("text", "json"))
    sp_.add_argument("--type", required=True)
    sp_.add_argument("--gamma", required=True)
    sp_.add_argument("--rep", default="standard", choices=("standard", "spin", "half_plus", "half_minus"))

    sp_ = add("solve", cmd_solve, "evaluate U and u on a polar grid", ("csv", "json"))
    _add_params(sp_)
    sp_.add_argument("--grid", default="0.1:10:10:8", help="rmin:rmax:nr:ntheta")

    sp_ = add("verify-pde", cmd_verify_pde, "PDE residual from exact derivatives")
    _add_params(sp_)
    sp_.add_argument("--grid")
    sp_.add_argument("--tol", type=float, default=1e-9)

    sp_ = add("verify-quant", cmd_verify_quant, "quantization of the integrals of e^{u_i}")
    _add_params(sp_)
    sp_.add_argument("--nangles", type=int, default=64)
    sp_.add_argument("--tol", type=float, default=1e-3)

    sp_ = add("verify-asymp", cmd_verify_asymp, "large-|z| slopes of u_i", ("json", "csv"))
    _add_params(sp_)
    sp_.add_argument("--rmin", type=float, default=1e3)
    sp_.add_argument("--rmax", type=float, default=1e5)
    sp_.add_argument("--nr", type=int, default=9)
    sp_.add_argument("--tol", type=float, default=0.02)

    sp_ = add("monodromy", cmd_monodromy, "single-valuedness defect and the N_Gamma test")
    _add_params(sp_)
    sp_.add_argument("--grid")
    sp_.add_argument("--tol", type=float, default=1e-10)

    sp_ = add("winv", cmd_winv, "basic W-invariants of the pure-pole connection", ("text", "json"))
    sp_.add_argument("--type", required=True)
    sp_.add_argument("--gamma", required=True)

    add("golden", cmd_golden, "reproduce the A2 and D4 reference data", ("text",))
    return ap


_VALUE_FLAGS = ("--gamma", "--lambda")


def _glue_negative_values(argv):
    # "--gamma -1/2,1" would otherwise read "-1/2,1" as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and not nxt.startswith("--"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv=None) -> int:
    ap = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = ap.parse_args(_glue_negative_values(argv))
    try:
        rc = args.func(args)
    except (InputError, LieTypeError, UnsupportedTypeError) as exc:
        print(f"toda-atlas: error: {exc}", file=sys.stderr)
        return 2
    return rc or 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
