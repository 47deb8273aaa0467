"""Root systems, Cartan data and the principal grading of simple Lie algebras.

Conventions
-----------
The Cartan matrix is ``a[i][j] = alpha_i(h_j)``, copied from the table used
throughout this package (so the ``-2`` of ``B_n`` sits in row ``n-1`` and
the one of ``C_n`` in row ``n``; this is the transpose of Bourbaki).
Exceptional labels follow Bourbaki/Knapp: ``E_n`` has the chain
``1-3-4-5-...`` with node 2 attached to node 4.

Indices are 0-based in code.  A root is an integer tuple ``m`` meaning
``sum(m[i] * alpha_i)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from . import _linalg

FAMILIES = "ABCDEFG"

_DIMENSION = {
    "A": lambda n: n * (n + 2),
    "B": lambda n: n * (2 * n + 1),
    "C": lambda n: n * (2 * n + 1),
    "D": lambda n: n * (2 * n - 1),
    "G": lambda n: 14,
    "F": lambda n: 52,
    "E": lambda n: {6: 78, 7: 133, 8: 248}[n],
}


class LieTypeError(ValueError):
    """Invalid family/rank combination."""


@dataclass(frozen=True, order=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        if f not in FAMILIES:
            raise LieTypeError(f"unknown family {f!r}")
        if not isinstance(n, int) or n < 1:
            raise LieTypeError(f"rank must be a positive integer, got {n!r}")
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,
            "G": n == 2,
            "F": n == 4,
            "E": n in (6, 7, 8),
        }[f]
        if not ok:
            raise LieTypeError(f"{f}{n} is not a valid simple type (B,C need n>=2, D n>=3, G2, F4, E6-8)")

    @classmethod
    def parse(cls, label: str) -> "LieType":
        m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", str(label))
        if not m:
            raise LieTypeError(f"cannot parse Lie type {label!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.family}{self.rank}"

    @property
    def dimension(self) -> int:
        return _DIMENSION[self.family](self.rank)

    @property
    def is_classical(self) -> bool:
        return self.family in "ABCD"


def _as_type(t) -> LieType:
    return t if isinstance(t, LieType) else LieType.parse(t)


def cartan_matrix(t) -> tuple[tuple[int, ...], ...]:
    """Integer Cartan matrix ``a[i][j] = alpha_i(h_j)``."""
    t = _as_type(t)
    n, f = t.rank, t.family
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j], a[j][i] = aij, aji

    if f == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif f == "G":
        link(0, 1, -1, -3)
    elif f == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    else:
        chain = n - 1 if f != "D" else n - 2
        for i in range(chain):
            link(i, i + 1)
        if f == "B":
            a[n - 2][n - 1] = -2
        elif f == "C":
            a[n - 1][n - 2] = -2
        elif f == "D":
            link(n - 3, n - 1)
    return tuple(tuple(r) for r in a)


def degrees(t) -> tuple[int, ...]:
    """Degrees of the primitive invariant polynomials, in table order."""
    t = _as_type(t)
    n = t.rank
    return {
        "A": lambda: tuple(range(2, n + 2)),
        "B": lambda: tuple(range(2, 2 * n + 1, 2)),
        "C": lambda: tuple(range(2, 2 * n + 1, 2)),
        "D": lambda: tuple(range(2, 2 * n - 1, 2)) + (n,),
        "G": lambda: (2, 6),
        "F": lambda: (2, 6, 8, 12),
        "E": lambda: {6: (2, 5, 6, 8, 9, 12),
                      7: (2, 6, 8, 10, 12, 14, 18),
                      8: (2, 8, 12, 14, 18, 20, 24, 30)}[n],
    }[t.family]()


def minus_kappa(t) -> tuple[int, ...]:
    """Diagram action of minus the longest Weyl element.

    ``sigma[i] = k`` means ``-kappa(alpha_i) = alpha_k`` (0-based).
    """
    t = _as_type(t)
    n = t.rank
    sigma = list(range(n))
    if t.family == "A":
        sigma = [n - 1 - i for i in range(n)]
    elif t.family == "D" and n % 2 == 1:
        sigma[n - 2], sigma[n - 1] = n - 1, n - 2
    elif t.family == "E" and n == 6:
        sigma[0], sigma[5] = 5, 0
        sigma[2], sigma[4] = 4, 2
    return tuple(sigma)


def root_sort_key(m):
    # height first; among equal heights larger leading coefficients first,
    # which puts alpha_1, alpha_2, ... in their natural order
    return (sum(m), tuple(-x for x in m))


@lru_cache(maxsize=None)
def _positive_roots(cartan) -> tuple[tuple[int, ...], ...]:
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = set()
        for beta in layer:
            for j in range(n):
                # alpha_j-string through beta: beta - p*alpha_j, ..., beta + q*alpha_j
                p = 0
                probe = list(beta)
                while True:
                    probe[j] -= 1
                    if tuple(probe) in roots:
                        p += 1
                    else:
                        break
                pairing = sum(beta[k] * cartan[k][j] for k in range(n))  # beta(h_j)
                q = p - pairing
                if q > 0:
                    up = list(beta)
                    up[j] += 1
                    up = tuple(up)
                    if up not in roots:
                        nxt.add(up)
        roots |= nxt
        layer = list(nxt)
    return tuple(sorted(roots, key=root_sort_key))


def positive_roots(t) -> tuple[tuple[int, ...], ...]:
    return _positive_roots(cartan_matrix(t))


@dataclass(frozen=True)
class RootSystem:
    lie_type: LieType
    cartan: tuple = field(init=False)
    positive_roots: tuple = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "cartan", cartan_matrix(self.lie_type))
        object.__setattr__(self, "positive_roots", positive_roots(self.lie_type))

    @classmethod
    def of(cls, t) -> "RootSystem":
        return _root_system(_as_type(t))

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    @cached_property
    def inv_cartan(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(r) for r in _linalg.inverse(self.cartan))

    @cached_property
    def heights(self) -> tuple[int, ...]:
        return tuple(sum(m) for m in self.positive_roots)

    @cached_property
    def root_index(self) -> dict:
        return {m: k for k, m in enumerate(self.positive_roots)}

    @property
    def highest_root(self) -> tuple[int, ...]:
        return self.positive_roots[-1]

    @property
    def coxeter_number(self) -> int:
        return sum(self.highest_root) + 1

    def is_root(self, m) -> bool:
        return tuple(m) in self.root_index

    def pairing(self, m, j) -> int:
        """``beta(h_j)`` for ``beta = sum m_k alpha_k``."""
        return sum(m[k] * self.cartan[k][j] for k in range(self.rank))

    def minus_kappa(self) -> tuple[int, ...]:
        return minus_kappa(self.lie_type)

    def degrees(self) -> tuple[int, ...]:
        return degrees(self.lie_type)


@lru_cache(maxsize=None)
def _root_system(t: LieType) -> RootSystem:
    return RootSystem(t)


def _to_fraction(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("exact gamma data needs rationals (use strings like '1/3' or Fraction)")
    return Fraction(x)


@dataclass(frozen=True)
class GammaData:
    """Source strengths ``gamma_i > -1`` together with derived quantities."""

    root_system: RootSystem
    gamma: tuple

    def __post_init__(self):
        n = self.root_system.rank
        if len(self.gamma) != n:
            raise ValueError(f"need {n} gamma values, got {len(self.gamma)}")
        g = tuple(_to_fraction(x) for x in self.gamma)
        if any(x <= -1 for x in g):
            raise ValueError("every gamma_i must satisfy gamma_i > -1")
        object.__setattr__(self, "gamma", g)

    @classmethod
    def of(cls, t, gamma) -> "GammaData":
        return cls(RootSystem.of(t), tuple(gamma))

    @property
    def mu(self) -> tuple[Fraction, ...]:
        return tuple(g + 1 for g in self.gamma)

    @cached_property
    def gamma_up(self) -> tuple[Fraction, ...]:
        inv = self.root_system.inv_cartan
        n = self.root_system.rank
        return tuple(sum(inv[i][j] * self.gamma[j] for j in range(n)) for i in range(n))

    def w0_pairing(self, m) -> Fraction:
        """``alpha_Gamma = sum m_i mu_i`` for a root-lattice vector ``m``."""
        return sum((Fraction(k) * mu for k, mu in zip(m, self.mu)), Fraction(0))


def delta_gamma(rs: RootSystem, g: GammaData) -> tuple[tuple[int, ...], ...]:
    """Positive roots with integral ``alpha_Gamma``, in root order."""
    return tuple(m for m in rs.positive_roots if g.w0_pairing(m).denominator == 1)
