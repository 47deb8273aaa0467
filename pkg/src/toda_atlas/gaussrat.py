"""Exact elements of Q(i)."""

from __future__ import annotations

import numbers
from fractions import Fraction


class GaussRat:
    """``re + i*im`` with ``Fraction`` parts.

    Mixing with a Python ``complex`` or ``float`` degrades to ``complex``;
    mixing with ``int``/``Fraction`` stays exact.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        return None

    def simplify(self):
        """Return a plain ``Fraction`` when the imaginary part vanishes."""
        return self.re if self.im == 0 else self

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = GaussRat.coerce(other)
        if o is None:
            return complex(self) + other if isinstance(other, numbers.Number) else NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = GaussRat.coerce(other)
        if o is None:
            return complex(self) * other if isinstance(other, numbers.Number) else NotImplemented
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussRat.coerce(other)
        if o is None:
            return complex(self) / other if isinstance(other, numbers.Number) else NotImplemented
        d = o.re * o.re + o.im * o.im
        return self * GaussRat(o.re / d, -o.im / d)

    def __rtruediv__(self, other):
        o = GaussRat.coerce(other)
        if o is None:
            return other / complex(self)
        return o / self

    def __abs__(self):
        return abs(complex(self))

    def __eq__(self, other):
        o = GaussRat.coerce(other)
        if o is None:
            try:
                return complex(self) == complex(other)
            except TypeError:
                return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*I"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*I)"


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussRat))


def re_im_fractions(x) -> tuple[Fraction, Fraction]:
    if isinstance(x, GaussRat):
        return x.re, x.im
    return Fraction(x), Fraction(0)


def conj(x):
    return x.conjugate() if hasattr(x, "conjugate") else x
