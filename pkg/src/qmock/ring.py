"""Exact arithmetic in Q, Q(i) and Q(w), w a primitive cube root of unity.

Elements are stored in the power basis {1, z} of the cyclotomic field
Q(z_n) for n in {1, 3, 4}; reduction uses i^2 = -1 and w^2 = -1 - w.
Rationals embed silently into either quadratic field; mixing Q(i) with
Q(w) is refused, since Q(z_12) is not supported.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt
from typing import Union

from .errors import BranchError, DivisionByZero, RingError

CONDUCTORS = (1, 3, 4)
DEGREE = {1: 1, 3: 2, 4: 2}
RING_NAMES = {1: "Q", 3: "Qw", 4: "Qi"}
RING_BY_NAME = {v: k for k, v in RING_NAMES.items()}
_SYMBOL = {3: "w", 4: "i"}

Scalar = Union[int, Fraction, "CycCoeff"]


def join_conductors(a: int, b: int) -> int:
    """Smallest supported conductor containing both fields."""
    if a == b or b == 1:
        return a
    if a == 1:
        return b
    raise RingError(f"conductor mismatch: Q(z_{a}) and Q(z_{b}) do not embed in a common supported field")


class CycCoeff:
    """Immutable element of Q(z_n), n in {1, 3, 4}."""

    __slots__ = ("conductor", "coords")

    def __init__(self, conductor: int, coords):
        if conductor not in DEGREE:
            raise RingError(f"unsupported conductor {conductor}")
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != DEGREE[conductor]:
            raise RingError(f"conductor {conductor} needs {DEGREE[conductor]} coordinates, got {len(coords)}")
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("CycCoeff is immutable")

    # constructors -----------------------------------------------------

    @classmethod
    def rational(cls, value) -> CycCoeff:
        return cls(1, (value,))

    @classmethod
    def i(cls) -> CycCoeff:
        return cls(4, (0, 1))

    @classmethod
    def w(cls) -> CycCoeff:
        return cls(3, (0, 1))

    @classmethod
    def coerce(cls, value: Scalar) -> CycCoeff:
        if isinstance(value, CycCoeff):
            return value
        return cls(1, (value,))

    # basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise RingError(f"{self} is not rational")
        return self.coords[0]

    def embed(self, conductor: int) -> CycCoeff:
        if conductor == self.conductor:
            return self
        if self.conductor == 1 and conductor in DEGREE:
            return CycCoeff(conductor, (self.coords[0],) + (Fraction(0),) * (DEGREE[conductor] - 1))
        raise RingError(f"cannot embed Q(z_{self.conductor}) into Q(z_{conductor})")

    def reduced(self) -> CycCoeff:
        """Drop to conductor 1 when the element is rational."""
        if self.conductor != 1 and self.is_rational():
            return CycCoeff(1, self.coords[:1])
        return self

    def _align(self, other: Scalar) -> tuple[CycCoeff, CycCoeff]:
        other = CycCoeff.coerce(other)
        n = join_conductors(self.conductor, other.conductor)
        return self.embed(n), other.embed(n)

    # arithmetic -------------------------------------------------------

    def __add__(self, other: Scalar) -> CycCoeff:
        a, b = self._align(other)
        return CycCoeff(a.conductor, [x + y for x, y in zip(a.coords, b.coords)])

    __radd__ = __add__

    def __neg__(self) -> CycCoeff:
        return CycCoeff(self.conductor, [-x for x in self.coords])

    def __sub__(self, other: Scalar) -> CycCoeff:
        a, b = self._align(other)
        return CycCoeff(a.conductor, [x - y for x, y in zip(a.coords, b.coords)])

    def __rsub__(self, other: Scalar) -> CycCoeff:
        return (-self) + other

    def __mul__(self, other: Scalar) -> CycCoeff:
        a, b = self._align(other)
        n = a.conductor
        if n == 1:
            return CycCoeff(1, (a.coords[0] * b.coords[0],))
        (x, y), (u, v) = a.coords, b.coords
        if n == 4:
            return CycCoeff(4, (x * u - y * v, x * v + y * u))
        # w^2 = -1 - w
        return CycCoeff(3, (x * u - y * v, x * v + y * u - y * v))

    __rmul__ = __mul__

    def conj(self) -> CycCoeff:
        """The nontrivial Galois automorphism (i -> -i, w -> w^2)."""
        if self.conductor == 1:
            return self
        x, y = self.coords
        if self.conductor == 4:
            return CycCoeff(4, (x, -y))
        return CycCoeff(3, (x - y, -y))

    def norm(self) -> Fraction:
        return (self * self.conj()).coords[0]

    def inv(self) -> CycCoeff:
        if self.is_zero():
            raise DivisionByZero("inverse of zero coefficient")
        if self.conductor == 1:
            return CycCoeff(1, (1 / self.coords[0],))
        nrm = self.norm()
        c = self.conj()
        return CycCoeff(self.conductor, [x / nrm for x in c.coords])

    def __truediv__(self, other: Scalar) -> CycCoeff:
        return self * CycCoeff.coerce(other).inv()

    def __rtruediv__(self, other: Scalar) -> CycCoeff:
        return CycCoeff.coerce(other) * self.inv()

    def __pow__(self, k: int) -> CycCoeff:
        if not isinstance(k, int):
            raise TypeError("CycCoeff powers must be integers")
        base = self if k >= 0 else self.inv()
        k = abs(k)
        result = CycCoeff(self.conductor, (1,) + (0,) * (DEGREE[self.conductor] - 1))
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sqrt(self) -> CycCoeff:
        """Principal square root (real part > 0, or real part 0 and imaginary part > 0).

        Raises BranchError when the root lies outside Q, Q(i), Q(w).
        """
        if self.is_zero():
            return self
        if self.is_rational():
            r = self.coords[0]
            s = _rational_sqrt(abs(r))
            if s is None:
                raise BranchError(f"sqrt({r}) is irrational")
            if r > 0:
                return CycCoeff(self.conductor, (s,) + (0,) * (DEGREE[self.conductor] - 1))
            if self.conductor == 3:
                raise BranchError(f"sqrt({r}) is not in Q(w)")
            return CycCoeff(4, (0, s))
        if self.conductor == 4:
            return _gauss_sqrt(*self.coords)
        return _eisenstein_sqrt(self)

    # comparisons / hashing -------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycCoeff(1, (other,))
        if not isinstance(other, CycCoeff):
            return NotImplemented
        a, b = self.reduced(), other.reduced()
        return a.conductor == b.conductor and a.coords == b.coords

    def __hash__(self) -> int:
        r = self.reduced()
        return hash((r.conductor, r.coords))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # text -------------------------------------------------------------

    def __str__(self) -> str:
        return format_coeff(self)

    def __repr__(self) -> str:
        return f"CycCoeff({RING_NAMES[self.conductor]}, {format_coeff(self)!r})"


def _rational_sqrt(r: Fraction) -> Fraction | None:
    r = Fraction(r)
    if r < 0:
        return None
    n, d = isqrt(r.numerator), isqrt(r.denominator)
    if n * n == r.numerator and d * d == r.denominator:
        return Fraction(n, d)
    return None


def _gauss_sqrt(a: Fraction, b: Fraction) -> CycCoeff:
    # (x + y i)^2 = a + b i  =>  x^2 = (a + |z|)/2, y = b / (2x)
    modulus = _rational_sqrt(a * a + b * b)
    if modulus is not None:
        x = _rational_sqrt((a + modulus) / 2)
        if x is not None and x != 0:
            return CycCoeff(4, (x, b / (2 * x)))
    raise BranchError(f"sqrt({format_coeff(CycCoeff(4, (a, b)))}) is not in Q(i)")


def _eisenstein_sqrt(c: CycCoeff) -> CycCoeff:
    w = CycCoeff.w()
    # principal roots of the nontrivial units: sqrt(w) = -w^2, sqrt(w^2) = -w
    for unit, root in ((w, -(w * w)), (w * w, -w)):
        r = c / unit
        if r.is_rational():
            s = _rational_sqrt(r.coords[0])
            if s is not None:
                return root * s
    raise BranchError(f"sqrt({format_coeff(c)}) is not in Q(w)")


def _fmt_q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_coeff(c: CycCoeff) -> str:
    """Serialize as 'a/b', 'a/b+c/d*i' or 'a/b+c/d*w' with zero parts omitted."""
    re_part = c.coords[0]
    im_part = c.coords[1] if c.conductor != 1 else Fraction(0)
    if im_part == 0:
        return _fmt_q(re_part)
    sym = _SYMBOL[c.conductor]
    im = f"{_fmt_q(abs(im_part))}*{sym}"
    if re_part == 0:
        return im if im_part > 0 else "-" + im
    return f"{_fmt_q(re_part)}{'+' if im_part > 0 else '-'}{im}"


_COEFF_RE = re.compile(
    r"^(?P<re>[+-]?\d+(?:/\d+)?(?![\d/]*\*))?"
    r"(?:(?P<sign>[+-])?(?P<im>\d+(?:/\d+)?)\*(?P<sym>[iw]))?$"
)


def parse_coeff(text: str, conductor: int | None = None) -> CycCoeff:
    """Inverse of format_coeff. ``conductor`` forces the ambient field."""
    text = text.strip()
    m = _COEFF_RE.match(text)
    if not text or m is None or (m.group("re") is None and m.group("im") is None):
        raise RingError(f"malformed coefficient {text!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    if m.group("im") is None:
        c = CycCoeff(1, (re_part,))
    else:
        if m.group("re") is not None and m.group("sign") is None:
            raise RingError(f"malformed coefficient {text!r}")
        im = Fraction(m.group("im"))
        if m.group("sign") == "-":
            im = -im
        c = CycCoeff(4 if m.group("sym") == "i" else 3, (re_part, im))
    return c.embed(conductor) if conductor is not None else c
