"""Truncated Laurent series in fractional powers of q with exact coefficients.

A series is stored densely on a grid: slot ``k`` holds the coefficient of
``q^(offset + k/step)``, scaled by a common positive integer denominator
``den``.  Each basis coordinate of the coefficient field (one for Q, two for
Q(i) and Q(w)) has its own integer list.  ``trunc`` is the exponent up to
which the series is known exactly; ``None`` marks an exact Laurent
polynomial.  Every operation recomputes the guaranteed truncation and never
reports a coefficient above it.

Products use Kronecker substitution: integer lists are packed into one big
integer, multiplied by CPython's Karatsuba, and unpacked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd, lcm
from typing import Iterable, Mapping

from .errors import AmbiguousSubstitution, InsufficientPrecision, NotInvertible, RingError, UsageError
from .ring import DEGREE, RING_BY_NAME, RING_NAMES, CycCoeff, format_coeff, join_conductors, parse_coeff

# ---------------------------------------------------------------------------
# integer polynomial kernels


def _bias(nslots: int, nbytes: int) -> int:
    return int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * nslots, "little")


def _pack(values: list[int], nbytes: int) -> int:
    half = 1 << (8 * nbytes - 1)
    raw = b"".join((v + half).to_bytes(nbytes, "little") for v in values)
    return int.from_bytes(raw, "little") - _bias(len(values), nbytes)


def kmul(a: list[int], b: list[int], n: int | None = None) -> list[int]:
    """First ``n`` coefficients of the product of two integer coefficient lists."""
    full = len(a) + len(b) - 1
    if not a or not b:
        return []
    if n is None or n > full:
        n = full
    if n <= 0:
        return []
    a, b = a[:n], b[:n]
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    if ma == 0 or mb == 0:
        return [0] * n
    if len(a) < 8 or len(b) < 8:
        out = [0] * n
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b[: n - i]):
                    out[i + j] += x * y
        return out
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 1
    nbytes = bits // 8 + 1
    width = 8 * nbytes
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    low = (prod + _bias(n, nbytes)) & ((1 << (width * n)) - 1)
    raw = low.to_bytes(nbytes * n, "little")
    half = 1 << (width - 1)
    return [int.from_bytes(raw[k * nbytes:(k + 1) * nbytes], "little") - half for k in range(n)]


def newton_inverse(u: list[int], n: int) -> list[int]:
    """First ``n`` coefficients of 1/u for an integer list with u[0] == 1."""
    if u[0] != 1:
        raise ValueError("newton_inverse needs a unit leading coefficient 1")
    w = [1]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        e = kmul(u[:prec], w, prec)
        e += [0] * (prec - len(e))
        e[0] -= 1
        corr = kmul(w, e, prec)
        corr += [0] * (prec - len(corr))
        w = [(w[i] if i < len(w) else 0) - corr[i] for i in range(prec)]
    return w[:n]


def int_inverse(u: list[int], n: int) -> tuple[list[int], int]:
    """1/u to ``n`` terms as (numerators, common denominator), u[0] != 0."""
    c0 = u[0]
    if c0 == 1:
        return newton_inverse(u, n), 1
    if c0 == -1:
        return [-x for x in newton_inverse([-x for x in u], n)], 1
    # u(c0*y)/c0 has integer coefficients and leading term 1
    scaled = [1] + [u[k] * c0 ** (k - 1) for k in range(1, min(len(u), n))]
    w = newton_inverse(scaled, n)
    den = c0 ** n
    nums = [w[k] * c0 ** (n - 1 - k) for k in range(n)]
    if den < 0:
        den = -den
        nums = [-x for x in nums]
    return nums, den


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Mismatch:
    exponent: Fraction
    left: CycCoeff
    right: CycCoeff


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _min_trunc(*ts):
    finite = [t for t in ts if t is not None]
    return min(finite) if finite else None


class QSeries:
    """Immutable truncated Laurent series in q^(1/D) over Q, Q(i) or Q(w)."""

    __slots__ = ("conductor", "offset", "step", "comps", "den", "trunc")

    def __init__(self, conductor, offset, step, comps, den=1, trunc=None):
        # raw constructor: callers go through _make, which normalizes
        self.conductor = conductor
        self.offset = offset
        self.step = step
        self.comps = comps
        self.den = den
        self.trunc = trunc

    # -- construction --------------------------------------------------

    @classmethod
    def _make(cls, conductor, offset, step, comps, den=1, trunc=None) -> QSeries:
        offset = _frac(offset)
        trunc = None if trunc is None else _frac(trunc)
        comps = [list(c) for c in comps]
        size = len(comps[0])
        if trunc is not None:
            last = floor((trunc - offset) * step)
            size = max(0, min(size, last + 1))
        nz = [k for k in range(size) if any(c[k] for c in comps)]
        if not nz:
            return cls.zero(conductor, trunc)
        first, stop = nz[0], nz[-1] + 1
        comps = [c[first:stop] for c in comps]
        offset += Fraction(first, step)
        g = step
        for k in nz:
            g = gcd(g, k - first)
            if g == 1:
                break
        if g > 1:
            comps = [c[::g] for c in comps]
            step //= g
        if den != 1:
            gd = den
            for c in comps:
                for x in c:
                    if x:
                        gd = gcd(gd, x)
                        if gd == 1:
                            break
                if gd == 1:
                    break
            if gd > 1:
                comps = [[x // gd for x in c] for c in comps]
                den //= gd
        # a rational element stored in a larger field stays in that field
        return cls(conductor, offset, step, tuple(comps), den, trunc)

    @classmethod
    def zero(cls, conductor: int = 1, trunc=None) -> QSeries:
        return cls(conductor, Fraction(0), 1, tuple([] for _ in range(DEGREE[conductor])), 1,
                   None if trunc is None else _frac(trunc))

    @classmethod
    def monomial(cls, coeff=1, exp=0, trunc=None) -> QSeries:
        c = CycCoeff.coerce(coeff)
        return cls.from_terms({_frac(exp): c}, trunc=trunc, conductor=c.conductor)

    @classmethod
    def one(cls, conductor: int = 1) -> QSeries:
        return cls.monomial(CycCoeff.rational(1).embed(conductor), 0)

    @classmethod
    def from_ints(cls, values: list[int], offset=0, step: int = 1, den: int = 1, trunc=None) -> QSeries:
        return cls._make(1, offset, step, [list(values)], den, trunc)

    @classmethod
    def from_terms(cls, terms: Mapping, trunc=None, conductor: int | None = None) -> QSeries:
        """Build from {exponent: coefficient}; zero coefficients are dropped."""
        items = []
        n = conductor or 1
        for e, c in terms.items():
            c = CycCoeff.coerce(c)
            if c.is_zero():
                continue
            n = join_conductors(n, c.conductor)
            items.append((_frac(e), c))
        if not items:
            return cls.zero(n, trunc)
        items = [(e, c.embed(n)) for e, c in items]
        offset = min(e for e, _ in items)
        step = 1
        den = 1
        for e, c in items:
            step = lcm(step, (e - offset).denominator)
            for x in c.coords:
                den = lcm(den, x.denominator)
        size = max(int((e - offset) * step) for e, _ in items) + 1
        comps = [[0] * size for _ in range(DEGREE[n])]
        for e, c in items:
            k = int((e - offset) * step)
            for j, x in enumerate(c.coords):
                comps[j][k] += int(x * den)
        return cls._make(n, offset, step, comps, den, trunc)

    # -- queries -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.comps[0])

    def is_zero(self) -> bool:
        return len(self.comps[0]) == 0

    @property
    def exact(self) -> bool:
        return self.trunc is None

    @property
    def valuation(self) -> Fraction | None:
        return None if self.is_zero() else self.offset

    def is_monomial(self) -> bool:
        return self.exact and len(self) == 1

    @property
    def denom(self) -> int:
        """Smallest D such that every stored exponent and the truncation lie in Z/D."""
        d = lcm(self.step, self.offset.denominator) if not self.is_zero() else 1
        if self.trunc is not None:
            d = lcm(d, self.trunc.denominator)
        return d

    def _slot(self, k: int) -> CycCoeff:
        return CycCoeff(self.conductor, [Fraction(c[k], self.den) for c in self.comps])

    def items(self) -> Iterable[tuple[Fraction, CycCoeff]]:
        for k in range(len(self)):
            if any(c[k] for c in self.comps):
                yield self.offset + Fraction(k, self.step), self._slot(k)

    def terms(self) -> dict[Fraction, CycCoeff]:
        return dict(self.items())

    def coeff(self, e) -> CycCoeff:
        e = _frac(e)
        if self.trunc is not None and e > self.trunc:
            raise InsufficientPrecision(f"coefficient of q^({e}) requested, series known only to q^({self.trunc})")
        if self.is_zero():
            return CycCoeff.rational(0).embed(self.conductor)
        k = (e - self.offset) * self.step
        if k.denominator != 1 or k < 0 or k >= len(self):
            return CycCoeff.rational(0).embed(self.conductor)
        return self._slot(int(k))

    def lead(self) -> tuple[Fraction, CycCoeff]:
        if self.is_zero():
            raise NotInvertible("zero series has no leading term")
        return self.offset, self._slot(0)

    def monomial_parts(self) -> tuple[CycCoeff, Fraction]:
        """(coefficient, exponent) of an exact single-term series."""
        if not self.is_monomial():
            raise UsageError("expected a monomial c*q^e")
        return self._slot(0), self.offset

    def constant_value(self) -> CycCoeff:
        c, e = self.monomial_parts() if not self.is_zero() else (CycCoeff.rational(0), Fraction(0))
        if e != 0 or not self.exact:
            raise UsageError("expected a constant")
        return c

    # -- comparison / conversion --------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.trunc != other.trunc:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.trunc, tuple(self.items())))

    def truncate(self, order) -> QSeries:
        order = _frac(order)
        t = order if self.trunc is None else min(order, self.trunc)
        return QSeries._make(self.conductor, self.offset, self.step, self.comps, self.den, t)

    def embed(self, conductor: int) -> QSeries:
        if conductor == self.conductor:
            return self
        n = join_conductors(self.conductor, conductor)
        if n == self.conductor:
            return self
        comps = list(self.comps) + [[0] * len(self) for _ in range(DEGREE[n] - DEGREE[self.conductor])]
        return QSeries(n, self.offset, self.step, tuple(comps), self.den, self.trunc)

    def reduce_ring(self) -> QSeries:
        """Drop to Q when every coefficient is rational."""
        if self.conductor != 1 and not any(any(c) for c in self.comps[1:]):
            return QSeries(1, self.offset, self.step, (self.comps[0],), self.den, self.trunc)
        return self

    # -- grid alignment -------------------------------------------------

    def _spread(self, base: Fraction, step: int, size: int) -> list[list[int]]:
        factor = step // self.step
        start = (self.offset - base) * step
        assert start.denominator == 1 and step % self.step == 0
        start = int(start)
        out = []
        for c in self.comps:
            lst = [0] * size
            if c:
                lst[start:start + factor * (len(c) - 1) + 1:factor] = c
            out.append(lst)
        return out

    def _respread(self, step: int) -> list[list[int]]:
        if step == self.step:
            return [list(c) for c in self.comps]
        return self._spread(self.offset, step, (len(self) - 1) * (step // self.step) + 1 if len(self) else 0)

    @staticmethod
    def _common_grid(a: QSeries, b: QSeries) -> tuple[Fraction, int]:
        step = lcm(a.step, b.step)
        d = (a.offset - b.offset) * step
        step *= d.denominator
        return min(a.offset, b.offset), step

    # -- ring operations -----------------------------------------------

    def __add__(self, other) -> QSeries:
        other = _as_series(other, self.conductor)
        n = join_conductors(self.conductor, other.conductor)
        a, b = self.embed(n), other.embed(n)
        trunc = _min_trunc(a.trunc, b.trunc)
        if a.is_zero():
            return b.truncate(trunc) if trunc is not None else b
        if b.is_zero():
            return a.truncate(trunc) if trunc is not None else a
        base, step = QSeries._common_grid(a, b)
        end = max(a.offset + Fraction(len(a) - 1, a.step), b.offset + Fraction(len(b) - 1, b.step))
        size = int((end - base) * step) + 1
        den = lcm(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        ca, cb = a._spread(base, step, size), b._spread(base, step, size)
        comps = [[x * fa + y * fb for x, y in zip(u, v)] for u, v in zip(ca, cb)]
        return QSeries._make(n, base, step, comps, den, trunc)

    __radd__ = __add__

    def __neg__(self) -> QSeries:
        return QSeries(self.conductor, self.offset, self.step,
                       tuple([-x for x in c] for c in self.comps), self.den, self.trunc)

    def __sub__(self, other) -> QSeries:
        return self + (-_as_series(other, self.conductor))

    def __rsub__(self, other) -> QSeries:
        return _as_series(other, self.conductor) - self

    def scale(self, c) -> QSeries:
        c = CycCoeff.coerce(c)
        if c.is_zero():
            return QSeries.zero(join_conductors(self.conductor, c.conductor), self.trunc)
        return self * QSeries.monomial(c, 0)

    def shift(self, e) -> QSeries:
        """Multiply by q^e."""
        e = _frac(e)
        return QSeries._make(self.conductor, self.offset + e, self.step, self.comps, self.den,
                             None if self.trunc is None else self.trunc + e)

    def _product_trunc(self, other: QSeries):
        a, b = self, other
        if a.is_zero() and a.exact or b.is_zero() and b.exact:
            return "zero"
        va = a.offset if not a.is_zero() else a.trunc
        vb = b.offset if not b.is_zero() else b.trunc
        cands = []
        if a.trunc is not None:
            cands.append(a.trunc + vb)
        if b.trunc is not None:
            cands.append(b.trunc + va)
        return min(cands) if cands else None

    def __mul__(self, other) -> QSeries:
        other = _as_series(other, self.conductor)
        n = join_conductors(self.conductor, other.conductor)
        a, b = self.embed(n), other.embed(n)
        trunc = a._product_trunc(b)
        if trunc == "zero":
            return QSeries.zero(n)
        if a.is_zero() or b.is_zero():
            return QSeries.zero(n, trunc)
        step = lcm(a.step, b.step)
        offset = a.offset + b.offset
        size = len(a) + len(b) - 1 if step == a.step == b.step else None
        ca, cb = a._respread(step), b._respread(step)
        size = len(ca[0]) + len(cb[0]) - 1
        if trunc is not None:
            size = min(size, floor((trunc - offset) * step) + 1)
            if size <= 0:
                return QSeries.zero(n, trunc)
        comps = _field_mul(n, ca, cb, size)
        return QSeries._make(n, offset, step, comps, a.den * b.den, trunc)

    __rmul__ = __mul__

    def conj(self) -> QSeries:
        """Apply the Galois automorphism coefficientwise."""
        if self.conductor == 1:
            return self
        x, y = self.comps
        if self.conductor == 4:
            comps = (x, [-v for v in y])
        else:
            comps = ([u - v for u, v in zip(x, y)], [-v for v in y])
        return QSeries(self.conductor, self.offset, self.step, comps, self.den, self.trunc)

    def inverse(self, order=None) -> QSeries:
        """Multiplicative inverse.

        For an inexact series the result is known to ``trunc - 2*valuation``;
        an exact non-monomial needs ``order``.  ``order`` also caps the work.
        """
        if self.is_zero():
            raise NotInvertible("series is zero up to its known truncation" if not self.exact else "inverse of zero")
        v = self.offset
        if self.is_monomial():
            c, e = self.monomial_parts()
            return QSeries.monomial(c.inv().embed(self.conductor), -e)
        if self.trunc is None and order is None:
            raise InsufficientPrecision("inverse of a Laurent polynomial needs a target order")
        target = _min_trunc(None if self.trunc is None else self.trunc - 2 * v,
                            None if order is None else _frac(order))
        if any(any(c) for c in self.comps[1:]):
            conj = self.conj()
            norm = (self * conj).reduce_ring()
            if norm.conductor != 1:
                raise RingError("norm series is not rational")
            # conj has valuation v, so 1/norm is needed to target - v
            inv_norm = norm.inverse(None if target is None else target - v)
            return (conj * inv_norm).truncate(target)
        nslots = floor((target + v) * self.step) + 1
        if nslots <= 0:
            return QSeries.zero(self.conductor, target)
        u = list(self.comps[0][:nslots])
        u += [0] * (nslots - len(u))
        nums, d = int_inverse(u, nslots)
        res = QSeries._make(1, -v, self.step, [[x * self.den for x in nums]], d, target)
        return res.embed(self.conductor)

    def __truediv__(self, other) -> QSeries:
        other = _as_series(other, self.conductor)
        if other.is_monomial():
            return self * other.inverse()
        order = None
        if self.trunc is None:
            raise InsufficientPrecision("division of a Laurent polynomial by a series needs an order; use inverse(order)")
        va = self.offset if not self.is_zero() else self.trunc
        order = self.trunc - (other.offset if not other.is_zero() else 0)
        return self * other.inverse(order - va)

    def __pow__(self, k: int) -> QSeries:
        if not isinstance(k, int):
            raise TypeError("series powers must be integers")
        if k < 0:
            return self.inverse() ** (-k)
        result = QSeries.one(self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_binomial(self, c, e) -> QSeries:
        """self * (1 - c*q^e)."""
        return self - self.shift(e).scale(c)

    def div_binomial(self, c, e, order=None) -> QSeries:
        """self / (1 - c*q^e) for e > 0, with a running-sum fast path for c = +-1."""
        e = _frac(e)
        c = CycCoeff.coerce(c)
        if e <= 0 or not c.is_rational() or abs(c.to_rational()) != 1:
            binom = QSeries.from_terms({Fraction(0): 1, e: -c})
            t = _min_trunc(self.trunc, order)
            if t is None:
                raise InsufficientPrecision("division needs a target order")
            return (self * binom.inverse(t - (self.offset if not self.is_zero() else 0))).truncate(t)
        trunc = _min_trunc(self.trunc, None if order is None else _frac(order))
        if trunc is None:
            raise InsufficientPrecision("division of a Laurent polynomial by a binomial needs an order")
        if self.is_zero():
            return QSeries.zero(self.conductor, trunc)
        step = lcm(self.step, e.denominator)
        shift = int(e * step)
        size = floor((trunc - self.offset) * step) + 1
        if size <= 0:
            return QSeries.zero(self.conductor, trunc)
        sign = int(c.to_rational())
        comps = []
        for lst in self._respread(step):
            lst = lst[:size] + [0] * (size - len(lst))
            if sign == 1:
                for i in range(shift, size):
                    lst[i] += lst[i - shift]
            else:
                for i in range(shift, size):
                    lst[i] -= lst[i - shift]
            comps.append(lst)
        return QSeries._make(self.conductor, self.offset, step, comps, self.den, trunc)

    # -- substitution ---------------------------------------------------

    def substitute(self, c=1, m=1) -> QSeries:
        """Apply q -> c*q^m (m > 0 rational, c a nonzero field element)."""
        c = CycCoeff.coerce(c)
        m = _frac(m)
        if m <= 0:
            raise UsageError("substitution exponent must be positive")
        if c.is_zero():
            raise UsageError("substitution coefficient must be nonzero")
        trunc = None if self.trunc is None else self.trunc * m
        if self.is_zero():
            return QSeries.zero(join_conductors(self.conductor, c.conductor), trunc)
        if c == 1:
            new_step = self.step * m.denominator
            comps = [[0] * ((len(self) - 1) * m.numerator + 1) for _ in self.comps]
            for dst, src in zip(comps, self.comps):
                dst[::m.numerator] = src
            return QSeries._make(self.conductor, self.offset * m, new_step, comps, self.den, trunc)
        if self.step != 1 or self.offset.denominator != 1:
            raise AmbiguousSubstitution("q -> c*q^m with c != 1 needs integer exponents")
        if c == -1:
            base = int(self.offset)
            comps = [[x if (base + k) % 2 == 0 else -x for k, x in enumerate(lst)] for lst in self.comps]
            flipped = QSeries(self.conductor, self.offset, 1, tuple(comps), self.den, self.trunc)
            return flipped.substitute(1, m)
        terms = {}
        for e, coef in self.items():
            terms[e * m] = coef * c ** int(e)
        n = join_conductors(self.conductor, c.conductor)
        return QSeries.from_terms(terms, trunc=trunc, conductor=n)

    # -- comparison to order --------------------------------------------

    def first_mismatch(self, other: QSeries, order) -> Mismatch | None:
        order = _frac(order)
        for s in (self, other):
            if s.trunc is not None and order > s.trunc:
                raise InsufficientPrecision(f"comparison to q^({order}) requested; a side is known only to q^({s.trunc})")
        diff = (self - other).truncate(order)
        if diff.is_zero():
            return None
        e = diff.offset
        return Mismatch(e, self.coeff(e), other.coeff(e))

    def eq_to_order(self, other: QSeries, order) -> bool:
        return self.first_mismatch(other, order) is None

    # -- text / json ----------------------------------------------------

    def to_json(self, denom: int | None = None) -> dict:
        d = self.denom if denom is None else lcm(self.denom, denom)
        return {
            "denom": d,
            "trunc": None if self.trunc is None else int(self.trunc * d),
            "ring": RING_NAMES[self.conductor],
            "terms": [[int(e * d), format_coeff(c)] for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> QSeries:
        d = int(data["denom"])
        n = RING_BY_NAME[data["ring"]]
        trunc = None if data.get("trunc") is None else Fraction(int(data["trunc"]), d)
        terms = {Fraction(int(e), d): parse_coeff(c, n) for e, c in data["terms"]}
        return cls.from_terms(terms, trunc=trunc, conductor=n)

    def render(self, denom: int | None = None) -> str:
        """Human form such as ``1 + q - 2*q^2 + O(q^3)``."""
        parts = []
        for e, c in self.items():
            parts.append(_render_term(c, e))
        text = ""
        for i, p in enumerate(parts):
            if i == 0:
                text = p
            elif p.startswith("-"):
                text += " - " + p[1:]
            else:
                text += " + " + p
        if self.trunc is not None:
            d = self.denom if denom is None else lcm(self.denom, denom)
            big_o = f"O({_render_power(self.trunc + Fraction(1, d))})"
            text = f"{text} + {big_o}" if text else big_o
        return text or "0"

    def __repr__(self) -> str:
        return f"QSeries({self.render()})"

    __str__ = render


def _render_power(e: Fraction) -> str:
    if e == 0:
        return "1"
    if e == 1:
        return "q"
    if e.denominator == 1 and e > 0:
        return f"q^{e}"
    return f"q^({e})"


def _render_term(c: CycCoeff, e: Fraction) -> str:
    power = _render_power(e)
    if not c.is_rational():
        body = f"({format_coeff(c)})"
        return body if e == 0 else f"{body}*{power}"
    r = c.to_rational()
    sign = "-" if r < 0 else ""
    r = abs(r)
    if e == 0:
        return sign + format_coeff(CycCoeff.rational(r))
    if r == 1:
        return sign + power
    return f"{sign}{format_coeff(CycCoeff.rational(r))}*{power}"


def _as_series(x, conductor: int = 1) -> QSeries:
    if isinstance(x, QSeries):
        return x
    return QSeries.monomial(CycCoeff.coerce(x), 0)


def _field_mul(n: int, ca, cb, size: int) -> list[list[int]]:
    if n == 1:
        return [kmul(ca[0], cb[0], size)]
    x0, x1 = ca
    y0, y1 = cb
    a_rat = not any(x1)
    b_rat = not any(y1)
    pad = lambda lst: lst + [0] * (size - len(lst))  # noqa: E731
    if a_rat and b_rat:
        return [pad(kmul(x0, y0, size)), [0] * size]
    if a_rat:
        return [pad(kmul(x0, y0, size)), pad(kmul(x0, y1, size))]
    if b_rat:
        return [pad(kmul(x0, y0, size)), pad(kmul(x1, y0, size))]
    p00 = pad(kmul(x0, y0, size))
    p11 = pad(kmul(x1, y1, size))
    s = pad(kmul([u + v for u, v in zip(x0, x1)] if len(x0) == len(x1) else _addl(x0, x1),
                 [u + v for u, v in zip(y0, y1)] if len(y0) == len(y1) else _addl(y0, y1), size))
    re = [u - v for u, v in zip(p00, p11)]
    if n == 4:
        im = [t - u - v for t, u, v in zip(s, p00, p11)]
    else:
        # w^2 = -1 - w contributes -x1*y1 to the w coordinate
        im = [t - u - 2 * v for t, u, v in zip(s, p00, p11)]
    return [re, im]


def _addl(a, b):
    m = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m)]
