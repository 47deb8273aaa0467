"""Explicit matrix representations with exact ``Q(i)`` entries.

Every representation carries a diagonal Hermitian form ``<x, y> = sum
w_v conj(x_v) y_v`` (the *Gram weights* ``w``) for which ``e_i`` is the
adjoint of ``f_i``:  ``e_i = G^-1 f_i^T G``.  Weights other than 1 appear
only where an orthonormal basis would force ``sqrt(2)`` into the matrices
(the middle vector of the odd orthogonal representation and the zero
weight vector of the 7-dimensional ``G2`` representation).

Basis vectors are ordered by depth below the highest weight, so every
``f_i`` is strictly lower triangular and the group ``N`` acts by unipotent
lower-triangular matrices.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .gaussrat import re_im_fractions
from .liealg import LieType, RootSystem, _as_type

Matrix = tuple  # tuple of row tuples


class UnsupportedTypeError(ValueError):
    """No explicit representation is implemented for this type."""


# -- small matrix helpers (exact) --------------------------------------

def zeros(n):
    return [[Fraction(0)] * n for _ in range(n)]


def mat(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


def mul(a, b):
    n, m = len(a), len(b[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i, row in enumerate(a):
        for k, x in enumerate(row):
            if x == 0:
                continue
            bk = b[k]
            for j in range(m):
                if bk[j] != 0:
                    out[i][j] += x * bk[j]
    return out


def commutator(a, b):
    ab, ba = mul(a, b), mul(b, a)
    return mat([[x - y for x, y in zip(r, s)] for r, s in zip(ab, ba)])


def transpose(a):
    return [list(r) for r in zip(*a)]


def is_zero(a) -> bool:
    return all(x == 0 for r in a for x in r)


def is_diagonal(a) -> bool:
    return all(x == 0 for i, r in enumerate(a) for j, x in enumerate(r) if i != j)


def adjoint(x, gram):
    """``G^-1 X^H G`` for a diagonal Gram matrix ``G``."""
    n = len(x)
    return mat([[_conj(x[j][i]) * gram[j] / gram[i] for j in range(n)] for i in range(n)])


def _conj(x):
    return x.conjugate() if hasattr(x, "conjugate") and not isinstance(x, (int, Fraction)) else x


def _elem(n, entries):
    m = zeros(n)
    for (r, c), v in entries.items():
        m[r][c] = Fraction(v)
    return mat(m)


# -- the representation record ------------------------------------------

@dataclass(frozen=True)
class MatrixRep:
    """A finite-dimensional representation in a weight basis.

    Attributes
    ----------
    gen_lower, gen_upper, gen_cartan
        ``rho(f_i)``, ``rho(e_i)`` and the diagonal ``rho(h_i)``.
    weights
        ``(beta(h_1), ..., beta(h_n))`` for each basis vector.
    drops
        ``omega - beta_v`` in simple-root coordinates.
    gram
        Diagonal of the invariant Hermitian form.
    hw_index
        Position of the highest weight vector (always 0 after sorting).
    """

    lie_type: LieType
    name: str
    gen_lower: tuple
    gram: tuple
    gen_upper: tuple = field(init=False)
    gen_cartan: tuple = field(init=False)
    weights: tuple = field(init=False)
    drops: tuple = field(init=False)
    hw_index: int = field(init=False)

    def __post_init__(self):
        ups = tuple(adjoint(f, self.gram) for f in self.gen_lower)
        hs = tuple(commutator(e, f) for e, f in zip(ups, self.gen_lower))
        for h in hs:
            if not is_diagonal(h):
                raise ValueError(f"{self.name}: [e_i, f_i] is not diagonal")
        n = len(self.gen_lower)
        weights = tuple(tuple(int(h[v][v]) for h in hs) for v in range(self.dim))
        tops = [v for v in range(self.dim) if all(e[r][v] == 0 for e in ups for r in range(self.dim))]
        if len(tops) != 1:
            raise ValueError(f"{self.name}: expected one highest weight vector, found {len(tops)}")
        top = tops[0]
        inv = RootSystem.of(self.lie_type).inv_cartan
        drops = []
        for wt in weights:
            diff = [weights[top][j] - wt[j] for j in range(n)]
            d = tuple(sum(diff[j] * inv[j][k] for j in range(n)) for k in range(n))
            if any(x.denominator != 1 or x < 0 for x in d):
                raise ValueError(f"{self.name}: weight {wt} is not below the highest weight")
            drops.append(tuple(int(x) for x in d))
        object.__setattr__(self, "gen_upper", ups)
        object.__setattr__(self, "gen_cartan", hs)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "drops", tuple(drops))
        object.__setattr__(self, "hw_index", top)

    @property
    def dim(self) -> int:
        return len(self.gram)

    @property
    def rank(self) -> int:
        return len(self.gen_lower)

    @property
    def highest_weight(self) -> tuple:
        return self.weights[self.hw_index]

    def check_relations(self) -> list[str]:
        """Exact check of the Chevalley relations; returns the failures."""
        rs = RootSystem.of(self.lie_type)
        a = rs.cartan
        n = self.rank
        bad = []
        for i in range(n):
            for j in range(n):
                c = commutator(self.gen_upper[i], self.gen_lower[j])
                if i == j and c != self.gen_cartan[i]:
                    bad.append(f"[e{i + 1},f{i + 1}] != h{i + 1}")
                if i != j and not is_zero(c):
                    bad.append(f"[e{i + 1},f{j + 1}] != 0")
                h = self.gen_cartan[i]
                for sign, x in ((1, self.gen_upper[j]), (-1, self.gen_lower[j])):
                    lhs = commutator(h, x)
                    rhs = [[sign * a[j][i] * y for y in r] for r in x]
                    if [list(r) for r in lhs] != rhs:
                        bad.append(f"[h{i + 1}, {'e' if sign > 0 else 'f'}{j + 1}] wrong")
                if i != j:
                    # Serre: (ad f_i)^(1 - a_ji) f_j = 0
                    y = self.gen_lower[j]
                    for _ in range(1 - a[j][i]):
                        y = commutator(self.gen_lower[i], y)
                    if not is_zero(y):
                        bad.append(f"Serre f{i + 1},f{j + 1}")
        for h in self.gen_cartan:
            if sum(h[v][v] for v in range(self.dim)) != 0:
                bad.append("traceful h")
        return bad

    def to_json(self) -> dict:
        def enc(m):
            return [[[str(p) for p in re_im_fractions(x)] for x in r] for r in m]

        return {
            "type": str(self.lie_type),
            "name": self.name,
            "dim": self.dim,
            "gram": [str(w) for w in self.gram],
            "gen_lower": [enc(m) for m in self.gen_lower],
            "gen_upper": [enc(m) for m in self.gen_upper],
            "gen_cartan": [[str(m[v][v]) for v in range(self.dim)] for m in self.gen_cartan],
            "weights": [list(w) for w in self.weights],
            "drops": [list(d) for d in self.drops],
            "hw_index": self.hw_index,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _sorted_rep(t, name, f_mats, gram) -> MatrixRep:
    """Build the rep, then reorder the basis by depth below the top."""
    raw = MatrixRep(t, name, tuple(mat(f) for f in f_mats), tuple(Fraction(w) for w in gram))
    order = sorted(range(raw.dim), key=lambda v: (sum(raw.drops[v]), tuple(-x for x in raw.drops[v]), v))
    if order == list(range(raw.dim)):
        return raw
    perm = lambda m: mat([[m[order[r]][order[c]] for c in range(raw.dim)] for r in range(raw.dim)])
    return MatrixRep(t, name, tuple(perm(f) for f in raw.gen_lower), tuple(raw.gram[v] for v in order))


# -- standard representations ------------------------------------------

def _standard_lower(t: LieType):
    n = t.rank
    f = t.family
    # 0-based elementary entries (row, col): value
    if f == "A":
        d = n + 1
        gens = [{(i + 1, i): 1} for i in range(n)]
        gram = [1] * d
    elif f in "CD":
        d = 2 * n
        gens = [{(i + 1, i): 1, (d - 1 - i, d - 2 - i): -1} for i in range(n - 1)]
        gens.append({(n, n - 1): 1} if f == "C" else {(n, n - 2): 1, (n + 1, n - 1): -1})
        gram = [1] * d
    elif f == "B":
        d = 2 * n + 1
        gens = [{(i + 1, i): 1, (d - 1 - i, d - 2 - i): -1} for i in range(n - 1)]
        gens.append({(n, n - 1): 1, (n + 1, n): -2})
        gram = [1] * n + [2] + [1] * n
    else:
        raise UnsupportedTypeError(f"no standard representation for {t}")
    return [_elem(d, g) for g in gens], gram


@lru_cache(maxsize=None)
def standard_rep(t) -> MatrixRep:
    """First fundamental representation of a classical type.

    ``SL`` acts on ``C^(n+1)``, ``SO`` and ``Sp`` on ``C^m`` preserving the
    antidiagonal forms returned by :func:`bilinear_form`.
    """
    t = _as_type(t)
    gens, gram = _standard_lower(t)
    return _sorted_rep(t, f"{t}:standard", gens, gram)


def bilinear_form(t):
    """``(kind, matrix)`` preserved by the standard representation.

    For ``B_n`` the middle entry is 2 rather than 1: the middle basis vector
    is scaled by ``sqrt(2)`` relative to an orthonormal one, which keeps the
    generators rational.
    """
    t = _as_type(t)
    n = t.rank
    if t.family == "A":
        return "none", None
    if t.family == "D":
        d = 2 * n
        return "symmetric_antidiag", mat([[Fraction(int(i + j == d - 1)) for j in range(d)] for i in range(d)])
    if t.family == "B":
        d = 2 * n + 1
        m = [[Fraction(int(i + j == d - 1)) for j in range(d)] for i in range(d)]
        m[n][n] = Fraction(2)
        return "symmetric_antidiag", mat(m)
    if t.family == "C":
        d = 2 * n
        m = zeros(d)
        for i in range(n):
            m[i][d - 1 - i] = Fraction(1)
            m[d - 1 - i][i] = Fraction(-1)
        return "symplectic", mat(m)
    raise UnsupportedTypeError(f"no bilinear form for {t}")


def preserves_form(x, form) -> bool:
    """``X^T K + K X == 0``."""
    xt = transpose(x)
    a, b = mul(xt, form), mul(form, x)
    return all(p + q == 0 for r, s in zip(a, b) for p, q in zip(r, s))


# -- spin representations via fermionic modes -------------------------

def _fermion_ops(n):
    """Creation operators on ``2**n`` occupation states (Jordan-Wigner)."""
    states = list(itertools.product((0, 1), repeat=n))
    index = {s: k for k, s in enumerate(states)}
    dim = len(states)
    creators = []
    for k in range(n):
        m = zeros(dim)
        for s, col in index.items():
            if s[k] == 0:
                sign = -1 if sum(s[:k]) % 2 else 1
                t = list(s)
                t[k] = 1
                m[index[tuple(t)]][col] = Fraction(sign)
        creators.append(m)
    return states, creators


def _annihilator(c):
    return transpose(c)


@lru_cache(maxsize=None)
def spin_rep(t, which: str = "spin") -> MatrixRep:
    """Spin representation of ``B_n`` or a half-spin representation of ``D_n``.

    Parameters
    ----------
    which
        ``"spin"`` for ``B_n`` (dimension ``2**n``, highest weight
        ``omega_n``); ``"half_plus"`` / ``"half_minus"`` for ``D_n``
        (dimension ``2**(n-1)``, highest weight ``omega_n`` resp.
        ``omega_{n-1}``).
    """
    t = _as_type(t)
    n = t.rank
    if t.family == "B":
        if which != "spin":
            raise UnsupportedTypeError("B_n only has the spin representation")
    elif t.family == "D":
        if which not in ("half_plus", "half_minus"):
            raise UnsupportedTypeError("D_n half-spin choice must be half_plus or half_minus")
    else:
        raise UnsupportedTypeError(f"no spin representation for {t}")
    states, cdag = _fermion_ops(n)
    c = [_annihilator(x) for x in cdag]
    gens = [mul(cdag[i], c[i + 1]) for i in range(n - 1)]
    if t.family == "B":
        gens.append(cdag[n - 1])
        keep = list(range(len(states)))
    else:
        gens[n - 1:] = []
        gens.append(mul(cdag[n - 2], cdag[n - 1]))
        parity = 0 if which == "half_plus" else 1
        keep = [k for k, s in enumerate(states) if sum(s) % 2 == parity]
        gens = [[[g[r][cc] for cc in keep] for r in keep] for g in gens]
    return _sorted_rep(t, f"{t}:{which}", gens, [1] * len(keep))


# -- G2 -------------------------------------------------------------------

@lru_cache(maxsize=None)
def g2_rep() -> MatrixRep:
    """The 7-dimensional representation of ``G2`` (highest weight ``omega_1``).

    The weight chain is ``omega_1`` minus ``0, a1, a1+a2, 2a1+a2, 3a1+a2,
    3a1+2a2, 4a1+2a2``; the zero weight vector carries Gram weight 2.
    """
    t = LieType("G", 2)
    f1 = _elem(7, {(1, 0): 1, (3, 2): 1, (4, 3): 2, (6, 5): 1})
    f2 = _elem(7, {(2, 1): 1, (5, 4): 1})
    return _sorted_rep(t, "G2:7", [f1, f2], [1, 1, 1, 2, 1, 1, 1])


# -- wedge powers ---------------------------------------------------------

def _minor(m, rows, cols):
    """Exact determinant of the submatrix by Laplace on small sizes / elimination."""
    sub = [[m[r][c] for c in cols] for r in rows]
    k = len(sub)
    det = Fraction(1)
    for col in range(k):
        piv = next((r for r in range(col, k) if sub[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            sub[col], sub[piv] = sub[piv], sub[col]
            det = -det
        p = sub[col][col]
        det = det * p
        for r in range(col + 1, k):
            if sub[r][col] != 0:
                f = sub[r][col] / p
                sub[r] = [a - f * b for a, b in zip(sub[r], sub[col])]
    return det


@lru_cache(maxsize=None)
def wedge_rep(rep: MatrixRep, k: int) -> MatrixRep:
    """``k``-th exterior power, cut down to the module generated by the top.

    The full exterior power is reducible for ``B/C/D/G``; only the
    submodule generated from ``v_1 ^ ... ^ v_k`` by the ``f_i`` is kept,
    which is the fundamental module whose highest matrix coefficient is the
    leading ``k x k`` minor.  The basis is the induced one on ``k``-subsets,
    with Gram weight the product of the member weights.
    """
    subsets = list(itertools.combinations(range(rep.dim), k))
    index = {s: i for i, s in enumerate(subsets)}

    def lift(x):
        m = zeros(len(subsets))
        for col, s in enumerate(subsets):
            for pos, v in enumerate(s):
                for r in range(rep.dim):
                    a = x[r][v]
                    if a == 0 or (r != v and r in s):
                        continue
                    if r == v:
                        m[col][col] += a
                        continue
                    new = list(s)
                    new[pos] = r
                    srt = sorted(new)
                    # sign of the permutation sorting ``new``
                    sign = 1
                    for i in range(k):
                        for j in range(i + 1, k):
                            if new[i] > new[j]:
                                sign = -sign
                    m[index[tuple(srt)]][col] += sign * a
        return m

    lowers = [lift(f) for f in rep.gen_lower]
    # span generated from the top subset
    top = index[tuple(range(k))]
    reached = {top}
    frontier = [top]
    while frontier:
        nxt = []
        for col in frontier:
            for f in lowers:
                for r in range(len(subsets)):
                    if f[r][col] != 0 and r not in reached:
                        reached.add(r)
                        nxt.append(r)
        frontier = nxt
    # the coordinate span of the reached subsets is f-stable by construction;
    # if it is reducible MatrixRep rejects it (several highest weight vectors)
    keep = sorted(reached)
    gens = [[[f[r][c] for c in keep] for r in keep] for f in lowers]
    gram = []
    for i in keep:
        w = Fraction(1)
        for v in subsets[i]:
            w *= rep.gram[v]
        gram.append(w)
    return _sorted_rep(rep.lie_type, f"{rep.name}^{k}", gens, gram)


# -- root vectors ---------------------------------------------------------

def nonsimple_root_vector(rep: MatrixRep, alpha, rs: RootSystem | None = None):
    """``rho(f_alpha) = [f_i, f_beta]`` with the smallest ``i`` such that
    ``alpha - alpha_i = beta`` is a positive root."""
    rs = rs or RootSystem.of(rep.lie_type)
    alpha = tuple(alpha)
    if not rs.is_root(alpha):
        raise ValueError(f"{alpha} is not a positive root")
    if sum(alpha) == 1:
        raise ValueError(f"{alpha} is simple; use gen_lower")
    return root_vectors(rep)[rs.root_index[alpha]]


@lru_cache(maxsize=None)
def root_vectors(rep: MatrixRep) -> tuple:
    """``rho(f_alpha)`` for every positive root, in root order."""
    rs = RootSystem.of(rep.lie_type)
    out = {}
    for m in rs.positive_roots:
        if sum(m) == 1:
            out[m] = rep.gen_lower[m.index(1)]
            continue
        for i in range(rs.rank):
            beta = list(m)
            beta[i] -= 1
            beta = tuple(beta)
            if rs.is_root(beta):
                out[m] = commutator(rep.gen_lower[i], out[beta])
                break
    return tuple(out[m] for m in rs.positive_roots)


# -- highest matrix coefficient strategies ------------------------------

@dataclass(frozen=True)
class HighestCoeffStrategy:
    """How to evaluate ``<i| g^* g |i>``.

    ``kind == "minor"``: weighted sum of squared ``order x order`` minors of
    the leading columns of ``g`` in ``rep`` (Cauchy-Binet in the wedge
    power).  ``kind == "rep"``: weighted squared norm of the highest weight
    column of ``g`` in ``rep``.  Either way the result is normalised so the
    identity gives 1.
    """

    kind: str
    rep: MatrixRep
    order: int
    index: int


def highest_coeff_rep(t, i: int) -> HighestCoeffStrategy:
    """Strategy for the ``i``-th fundamental coefficient (0-based ``i``)."""
    t = _as_type(t)
    n = t.rank
    if not 0 <= i < n:
        raise ValueError(f"fundamental index {i} out of range for {t}")
    f = t.family
    if f in "AC" or (f == "B" and i < n - 1) or (f == "D" and i < n - 2):
        return HighestCoeffStrategy("minor", standard_rep(t), i + 1, i)
    if f == "B":
        return HighestCoeffStrategy("rep", spin_rep(t, "spin"), 1, i)
    if f == "D":
        which = "half_minus" if i == n - 2 else "half_plus"
        return HighestCoeffStrategy("rep", spin_rep(t, which), 1, i)
    if f == "G":
        return HighestCoeffStrategy("minor", g2_rep(), i + 1, i)
    raise UnsupportedTypeError(f"no explicit representation for {t}")


def fundamental_reps(t):
    """Distinct representations needed to cover all fundamental indices."""
    seen = {}
    for i in range(_as_type(t).rank):
        s = highest_coeff_rep(t, i)
        seen.setdefault(s.rep.name, s.rep)
    return list(seen.values())
