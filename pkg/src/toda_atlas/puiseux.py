"""Puiseux polynomials ``sum c_p z**p`` and matrices of them.

Exponents are ``Fraction`` in exact mode, ``float`` in float mode and
sympy expressions in symbolic mode; coefficients are whatever scalar type
the caller feeds in (``Fraction``, ``GaussRat``, ``complex``, sympy).
``z**p`` always means the principal branch ``exp(p * Log z)`` on the plane
cut along the non-positive reals.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from math import lcm

import numpy as np

from .gaussrat import GaussRat, conj, re_im_fractions

try:  # sympy is only needed for symbolic exponents
    import sympy as _sp
except ImportError:  # pragma: no cover
    _sp = None


def _clean(c):
    if _sp is not None and isinstance(c, _sp.Basic):
        return _sp.cancel(c)
    if isinstance(c, GaussRat):
        return c.simplify()
    return c


def _is_zero(c) -> bool:
    return c == 0


def _exp_sort_key(p):
    try:
        return (0, float(p), "")
    except TypeError:
        return (1, 0.0, str(p))


class PuiseuxPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        for p, c in (terms or {}).items():
            c = _clean(c)
            if not _is_zero(c):
                out[p] = c
        self.terms = out

    @classmethod
    def constant(cls, c):
        return cls({Fraction(0): c})

    @classmethod
    def monomial(cls, c, p):
        return cls({p: c})

    @classmethod
    def zero(cls):
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: _exp_sort_key(kv[0]))

    @property
    def exponents(self):
        return [p for p, _ in self.items()]

    @property
    def denom(self) -> int:
        """Least common denominator of the (rational) exponents."""
        q = 1
        for p in self.terms:
            q = lcm(q, Fraction(p).denominator)
        return q

    # -- arithmetic ------------------------------------------------------
    def _combine(self, other, sign=1):
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out[p] + sign * c if p in out else sign * c
        return PuiseuxPoly(out)

    def __add__(self, other):
        if not isinstance(other, PuiseuxPoly):
            other = PuiseuxPoly.constant(other)
        return self._combine(other)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, PuiseuxPoly):
            other = PuiseuxPoly.constant(other)
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return PuiseuxPoly({p: -c for p, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PuiseuxPoly):
            if _is_zero(other):
                return PuiseuxPoly()
            return PuiseuxPoly({p: c * other for p, c in self.terms.items()})
        out = {}
        for p, c in self.terms.items():
            for q, d in other.terms.items():
                s = p + q
                out[s] = out[s] + c * d if s in out else c * d
        return PuiseuxPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PuiseuxPoly):
            other = PuiseuxPoly.constant(other)
        return (self - other).is_zero()

    def __hash__(self):  # pragma: no cover - mutable-looking but value type
        return hash(frozenset(self.terms.items()))

    # -- calculus --------------------------------------------------------
    def integrate(self):
        """Antiderivative vanishing at 0; needs every exponent ``> -1``."""
        out = {}
        for p, c in self.terms.items():
            q = p + 1
            try:
                if q <= 0:
                    raise ValueError(f"cannot integrate z**({p}) from 0")
            except TypeError:
                pass  # symbolic exponent, assumed admissible
            out[q] = c / q if not isinstance(q, int) else c * Fraction(1, q)
        return PuiseuxPoly(out)

    def derivative(self):
        return PuiseuxPoly({p - 1: c * p for p, c in self.terms.items() if p != 0})

    def map_coefficients(self, fn):
        return PuiseuxPoly({p: fn(p, c) for p, c in self.terms.items()})

    def conjugate_coefficients(self):
        return PuiseuxPoly({p: conj(c) for p, c in self.terms.items()})

    def continue_around_origin(self):
        """Analytic continuation along ``z -> z*exp(-2*pi*i)``."""
        out = {}
        for p, c in self.terms.items():
            fp = Fraction(p) if isinstance(p, (int, Fraction)) else None
            if fp is not None and fp.denominator == 1:
                out[p] = c
            else:
                out[p] = complex(c) * cmath.exp(-2j * math.pi * float(p))
        return PuiseuxPoly(out)

    def numeric(self):
        """``(exponents, coefficients)`` as float/complex numpy arrays."""
        items = self.items()
        exps = np.array([float(p) for p, _ in items], dtype=float)
        coefs = np.array([complex(c) for _, c in items], dtype=complex)
        return exps, coefs

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        logz = np.log(z)
        out = np.zeros(z.shape, dtype=complex)
        for p, c in self.terms.items():
            out = out + complex(c) * np.exp(float(p) * logz)
        return out if out.shape else complex(out)

    # -- text / json -------------------------------------------------------
    def __repr__(self):
        return f"PuiseuxPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for p, c in self.items():
            cs = str(c)
            if p == 0:
                parts.append(cs)
            else:
                ps = str(p)
                simple = ps.lstrip("-").replace(".", "").isdigit()
                parts.append(f"{cs} z^{ps}" if simple else f"{cs} z^({ps})")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self, q: int | None = None):
        q = q or self.denom
        out = []
        for p, c in self.items():
            k = Fraction(p) * q
            if k.denominator != 1:
                raise ValueError(f"exponent {p} not on the 1/{q} grid")
            re, im = re_im_fractions(c)
            out.append([int(k), re.numerator, re.denominator, im.numerator, im.denominator])
        return out

    @classmethod
    def from_json(cls, entries, q: int):
        terms = {}
        for k, rn, rd, im_n, im_d in entries:
            c = GaussRat(Fraction(rn, rd), Fraction(im_n, im_d)).simplify()
            terms[Fraction(k, q)] = c
        return cls(terms)


class PuiseuxMatrix:
    """Dense square matrix of ``PuiseuxPoly`` entries."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = [[e if isinstance(e, PuiseuxPoly) else PuiseuxPoly.constant(e) for e in r] for r in rows]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n):
        return cls([[PuiseuxPoly.constant(Fraction(1)) if i == j else PuiseuxPoly() for j in range(n)]
                    for i in range(n)])

    @classmethod
    def from_constant(cls, mat):
        return cls([[PuiseuxPoly.constant(x) for x in row] for row in mat])

    def __getitem__(self, rc):
        r, c = rc
        return self.rows[r][c]

    def column(self, j):
        return [row[j] for row in self.rows]

    def __add__(self, other):
        return PuiseuxMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return PuiseuxMatrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __eq__(self, other):
        return isinstance(other, PuiseuxMatrix) and self.dim == other.dim and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __matmul__(self, other):
        n = self.dim
        if isinstance(other, PuiseuxMatrix):
            out = [[PuiseuxPoly() for _ in range(n)] for _ in range(n)]
            for i in range(n):
                for k in range(n):
                    a = self.rows[i][k]
                    if a.is_zero():
                        continue
                    for j in range(n):
                        b = other.rows[k][j]
                        if not b.is_zero():
                            out[i][j] = out[i][j] + a * b
            return PuiseuxMatrix(out)
        # constant matrix on the right
        out = [[PuiseuxPoly() for _ in range(n)] for _ in range(n)]
        nz = [(k, j, other[k][j]) for k in range(n) for j in range(n) if other[k][j] != 0]
        for i in range(n):
            row = self.rows[i]
            for k, j, x in nz:
                if not row[k].is_zero():
                    out[i][j] = out[i][j] + row[k] * x
        return PuiseuxMatrix(out)

    def __rmatmul__(self, other):
        return self.lmul_constant(other)

    def lmul_constant(self, other):
        """``other @ self`` for a constant (nested list or array) matrix."""
        n = self.dim
        out = [[PuiseuxPoly() for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for k in range(n):
                x = other[i][k]
                if x == 0:
                    continue
                rk = self.rows[k]
                for j in range(n):
                    if not rk[j].is_zero():
                        out[i][j] = out[i][j] + rk[j] * x
        return PuiseuxMatrix(out)

    def scale_by_monomials(self, per_entry):
        """Multiply entry ``(r, c)`` by the monomial ``per_entry(r, c)``."""
        return PuiseuxMatrix([[e * per_entry(r, c) if not e.is_zero() else e for c, e in enumerate(row)]
                              for r, row in enumerate(self.rows)])

    def integrate(self):
        return PuiseuxMatrix([[e.integrate() for e in row] for row in self.rows])

    def continue_around_origin(self):
        return PuiseuxMatrix([[e.continue_around_origin() for e in row] for row in self.rows])

    def is_lower_unitriangular(self) -> bool:
        for i, row in enumerate(self.rows):
            for j, e in enumerate(row):
                if j > i and not e.is_zero():
                    return False
                if j == i and not e == 1:
                    return False
        return True

    def nonzero_count(self) -> int:
        return sum(not e.is_zero() for row in self.rows for e in row)

    def __call__(self, z):
        return np.array([[complex(e(z)) for e in row] for row in self.rows])

    @property
    def denom(self) -> int:
        q = 1
        for row in self.rows:
            for e in row:
                q = lcm(q, e.denom)
        return q

    def to_json(self):
        q = self.denom
        return {"dim": self.dim, "q": q,
                "entries": [[e.to_json(q) for e in row] for row in self.rows]}

    @classmethod
    def from_json(cls, data):
        q = data["q"]
        return cls([[PuiseuxPoly.from_json(e, q) for e in row] for row in data["entries"]])

    def __repr__(self):
        return f"PuiseuxMatrix(dim={self.dim})"

    def pretty(self) -> str:
        lines = []
        for i, row in enumerate(self.rows):
            for j, e in enumerate(row):
                if not e.is_zero():
                    lines.append(f"({i + 1},{j + 1}): {e}")
        return "\n".join(lines)


class SesquiPoly:
    """``P(z, zbar) = sum c * z**p * zbar**q`` keyed by ``(p, q)``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        for k, c in (terms or {}).items():
            c = _clean(c)
            if not _is_zero(c):
                out[k] = c
        self.terms = out

    @classmethod
    def norm_squared(cls, rows):
        """``sum_v w_v |f_v|**2`` for ``rows = [(w_v, f_v), ...]``."""
        out = {}
        for w, f in rows:
            for p, c in f.terms.items():
                for q, d in f.terms.items():
                    k = (p, q)
                    v = w * c * conj(d)
                    out[k] = out[k] + v if k in out else v
        return cls(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] - c if k in out else -c
        return SesquiPoly(out)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return SesquiPoly(out)

    def __mul__(self, other):
        out = {}
        for (p, q), c in self.terms.items():
            for (r, s), d in other.terms.items():
                k = (p + r, q + s)
                out[k] = out[k] + c * d if k in out else c * d
        return SesquiPoly(out)

    def __eq__(self, other):
        return isinstance(other, SesquiPoly) and (self - other).terms == {}

    def d_z(self):
        return SesquiPoly({(p - 1, q): c * p for (p, q), c in self.terms.items() if p != 0})

    def d_zbar(self):
        return SesquiPoly({(p, q - 1): c * q for (p, q), c in self.terms.items() if q != 0})

    def is_hermitian(self, tol=0.0) -> bool:
        for (p, q), c in self.terms.items():
            d = self.terms.get((q, p), 0)
            if tol == 0.0:
                if c != conj(d):
                    return False
            elif abs(complex(c) - complex(conj(d))) > tol:
                return False
        return True

    def log_laplacian_numerator(self):
        """``P * P_zzbar - P_z * P_zbar``; ``(log P)_zzbar`` is this over ``P**2``."""
        return self * self.d_z().d_zbar() - self.d_z() * self.d_zbar()

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        logr, theta = np.log(np.abs(z)), np.angle(z)
        out = np.zeros(z.shape, dtype=complex)
        for (p, q), c in self.terms.items():
            out = out + complex(c) * np.exp(float(p + q) * logr + 1j * float(p - q) * theta)
        return out if out.shape else complex(out)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"SesquiPoly({len(self.terms)} terms)"
