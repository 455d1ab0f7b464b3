"""Exact arithmetic in Q(i, sqrt 2, sqrt 3, ...).

Window amplitudes produced by the constructors are rational multiples of
``1/sqrt(M)``.  Their correlation sums are rational, so a Parseval or dual
verdict can be checked with zero tolerance if the arithmetic is exact.

A real number is stored as ``{d: q}`` meaning ``sum(q * sqrt(d))`` with
``d`` square-free and ``q`` a :class:`~fractions.Fraction`.  Square roots of
distinct square-free integers are linearly independent over Q, so a value
is zero exactly when every coefficient is zero.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def _split_square(n: int) -> tuple[int, int]:
    """Write ``n = s**2 * d`` with ``d`` square-free; return ``(s, d)``."""
    s, d, f = 1, 1, 2
    while f * f <= n:
        while n % (f * f) == 0:
            n //= f * f
            s *= f
        if n % f == 0:
            n //= f
            d *= f
        f += 1
    return s, d * n


class Surd:
    """Finite sum of rational multiples of square roots of square-free integers."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        self.terms = {d: q for d, q in (terms or {}).items() if q}

    @classmethod
    def rational(cls, q: Rational) -> "Surd":
        return cls({1: Fraction(q)})

    @classmethod
    def sqrt(cls, q: Rational) -> "Surd":
        """sqrt(q) for a nonnegative rational q."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("sqrt of a negative rational")
        # sqrt(a/b) = sqrt(a*b)/b
        s, d = _split_square(q.numerator * q.denominator)
        return cls({d: Fraction(s, q.denominator)})

    def __add__(self, other: "Surd") -> "Surd":
        out = dict(self.terms)
        for d, q in other.terms.items():
            out[d] = out.get(d, 0) + q
        return Surd(out)

    def __neg__(self) -> "Surd":
        return Surd({d: -q for d, q in self.terms.items()})

    def __sub__(self, other: "Surd") -> "Surd":
        return self + (-other)

    def __mul__(self, other: "Surd") -> "Surd":
        out: dict[int, Fraction] = {}
        for d1, q1 in self.terms.items():
            for d2, q2 in other.terms.items():
                s, d = _split_square(d1 * d2)
                out[d] = out.get(d, 0) + q1 * q2 * s
        return Surd(out)

    def is_zero(self) -> bool:
        return not self.terms

    def __float__(self) -> float:
        return float(sum(float(q) * d ** 0.5 for d, q in self.terms.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Surd):
            other = Surd.rational(other)
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{q}" if d == 1 else f"{q}*sqrt({d})" for d, q in sorted(self.terms.items()))


class ExactComplex:
    """``re + i*im`` with :class:`Surd` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Surd | Rational = 0, im: Surd | Rational = 0):
        self.re = re if isinstance(re, Surd) else Surd.rational(re)
        self.im = im if isinstance(im, Surd) else Surd.rational(im)

    def __add__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ExactComplex":
        return ExactComplex(-self.re, -self.im)

    def __mul__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactComplex):
            other = ExactComplex(other)
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        if self.im.is_zero():
            return repr(self.re)
        return f"({self.re!r}) + i*({self.im!r})"


ZERO = ExactComplex()
