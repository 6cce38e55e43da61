"""Pochhammer symbols, the theta function j(x;q), eta, and Theta_{n,m}.

All arguments are monomials ``c*q^e``; two-variable series are never built.
Bilateral sums are cut using the exact convex exponent of each term, so the
summation window is determined by the target order alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, lcm

from .errors import BranchError, DivergenceError, DivisionByZero, UsageError
from .ring import CycCoeff, join_conductors
from .series import QSeries


@dataclass(frozen=True)
class Monomial:
    """``coeff * q^exp`` with a nonzero coefficient."""

    coeff: CycCoeff
    exp: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeff", CycCoeff.coerce(self.coeff))
        object.__setattr__(self, "exp", Fraction(self.exp))
        if self.coeff.is_zero():
            raise UsageError("monomial coefficient must be nonzero")

    @classmethod
    def q(cls, exp=1, coeff=1) -> Monomial:
        return cls(CycCoeff.coerce(coeff), Fraction(exp))

    @classmethod
    def from_series(cls, s: QSeries) -> Monomial:
        c, e = s.monomial_parts()
        return cls(c.reduced(), e)

    def series(self) -> QSeries:
        return QSeries.monomial(self.coeff, self.exp)

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(self.coeff * other.coeff, self.exp + other.exp)

    def __pow__(self, k: int) -> Monomial:
        return Monomial(self.coeff ** k, self.exp * k)

    def inv(self) -> Monomial:
        return self ** -1

    def neg(self) -> Monomial:
        return Monomial(-self.coeff, self.exp)

    def __str__(self) -> str:
        return f"({self.coeff})*q^({self.exp})"


def _as_monomial(x) -> Monomial:
    if isinstance(x, Monomial):
        return x
    if isinstance(x, QSeries):
        return Monomial.from_series(x)
    return Monomial(CycCoeff.coerce(x), Fraction(0))


def convex_window(f, limit: Fraction, center: int) -> range:
    """Integers n with f(n) <= limit, for f convex on Z; ``center`` is near its minimum."""
    # slide to the true minimizer first
    while f(center - 1) < f(center):
        center -= 1
    while f(center + 1) < f(center):
        center += 1
    if f(center) > limit:
        return range(center, center)
    lo = center
    while f(lo - 1) <= limit:
        lo -= 1
    hi = center
    while f(hi + 1) <= limit:
        hi += 1
    return range(lo, hi + 1)


# ---------------------------------------------------------------------------
# Pochhammer symbols


def poch(x, rho, n: int, order) -> QSeries:
    """(x; q^rho)_n = prod_{i<n} (1 - x q^{rho i}), truncated at ``order``."""
    x = _as_monomial(x)
    rho = Fraction(rho)
    order = Fraction(order)
    if n < 0:
        raise UsageError("finite Pochhammer length must be >= 0")
    acc = QSeries.one(x.coeff.conductor)
    # factors with negative exponent shift the valuation down; truncate only
    # once all of them are in
    low = sum((x.exp + rho * i for i in range(n) if x.exp + rho * i < 0), Fraction(0))
    for i in range(n):
        e = x.exp + rho * i
        acc = acc.mul_binomial(x.coeff, e)
        if low >= 0:
            acc = acc.truncate(order)
    return acc.truncate(order)


def pochinf(x, rho, order) -> QSeries:
    """(x; q^rho)_infinity truncated at ``order``."""
    x = _as_monomial(x)
    rho = Fraction(rho)
    order = Fraction(order)
    if rho <= 0:
        raise UsageError("Pochhammer base exponent must be positive")
    if x.exp < 0:
        raise DivergenceError("(x;q)_inf with x of negative q-order has no formal expansion")
    if x.exp == 0 and x.coeff == 1:
        raise DivisionByZero("(1;q)_inf vanishes identically")
    c = x.coeff
    if c.is_rational() and abs(c.to_rational()) == 1 and x.exp > 0:
        return _pochinf_unit(int(c.to_rational()), x.exp, rho, order)
    acc = QSeries.one(c.conductor).truncate(order)
    i = 0
    while x.exp + rho * i <= order:
        acc = acc.mul_binomial(c, x.exp + rho * i)
        i += 1
    return acc


def _pochinf_unit(sign: int, a: Fraction, rho: Fraction, order: Fraction) -> QSeries:
    # dense in-place product of (1 - sign*q^(a + rho*i)) on the grid of a and rho
    step = lcm(a.denominator, rho.denominator)
    size = floor(order * step) + 1
    if size <= 0:
        return QSeries.zero(1, order)
    coeffs = [0] * size
    coeffs[0] = 1
    top = 0
    k = int(a * step)
    inc = int(rho * step)
    while k < size:
        new_top = min(size - 1, top + k)
        if sign == 1:
            for t in range(new_top, k - 1, -1):
                coeffs[t] -= coeffs[t - k]
        else:
            for t in range(new_top, k - 1, -1):
                coeffs[t] += coeffs[t - k]
        top = new_top
        k += inc
    return QSeries.from_ints(coeffs, 0, step, 1, order)


# ---------------------------------------------------------------------------
# theta functions


def _jt_exponent(x: Monomial, rho: Fraction):
    return lambda n: rho * n * (n - 1) / 2 + n * x.exp


def theta_is_zero(x, rho) -> bool:
    """j(c q^a; q^rho) vanishes identically iff c = 1 and a is a multiple of rho."""
    x = _as_monomial(x)
    return x.coeff == 1 and (x.exp / Fraction(rho)).denominator == 1


def jtheta_valuation(x, rho) -> Fraction:
    """Lowest q-exponent of j(x;q^rho); the caller checks theta_is_zero first."""
    x = _as_monomial(x)
    rho = Fraction(rho)
    return _convex_min(_jt_exponent(x, rho), floor(Fraction(1, 2) - x.exp / rho))


def _convex_min(f, center: int) -> Fraction:
    while f(center - 1) < f(center):
        center -= 1
    while f(center + 1) < f(center):
        center += 1
    return f(center)


def jtheta(x, rho, order) -> QSeries:
    """j(x; q^rho) = sum_n (-1)^n q^{rho n(n-1)/2} x^n, truncated at ``order``."""
    x = _as_monomial(x)
    rho = Fraction(rho)
    order = Fraction(order)
    if rho <= 0:
        raise UsageError("theta base exponent must be positive")
    f = _jt_exponent(x, rho)
    window = convex_window(f, order, floor(Fraction(1, 2) - x.exp / rho))
    c = x.coeff
    n = c.conductor
    terms: dict[Fraction, CycCoeff] = {}
    neg_c = -c
    unit = c.is_rational() and abs(c.to_rational()) == 1
    for k in window:
        # (-1)^k c^k = (-c)^k
        if unit:
            coef = CycCoeff.rational(int(neg_c.to_rational()) ** (k % 2))
        else:
            coef = neg_c ** k
        e = f(k)
        terms[e] = terms.get(e, CycCoeff.rational(0).embed(n)) + coef
    return QSeries.from_terms(terms, trunc=order, conductor=n)


def jtheta_product(x, rho, order) -> QSeries:
    """Product side (x)_inf (q^rho/x)_inf (q^rho)_inf, for checking the triple product."""
    x = _as_monomial(x)
    rho = Fraction(rho)
    order = Fraction(order)
    if x.exp < 0 or x.exp > rho:
        # move x into the fundamental window with the elliptic shift
        k = floor(x.exp / rho)
        base = jtheta_product(Monomial(x.coeff, x.exp - k * rho), rho, order + _shift_gain(x, rho, k))
        return _elliptic(base, Monomial(x.coeff, x.exp - k * rho), rho, k).truncate(order)
    if x.exp == 0:
        if x.coeff == 1:
            return QSeries.zero(x.coeff.conductor, order)
        lead = CycCoeff.rational(1) - x.coeff
        return (pochinf(Monomial(x.coeff, rho), rho, order) * pochinf(x.inv() * Monomial.q(rho), rho, order)
                * pochinf(Monomial.q(rho), rho, order)).scale(lead).truncate(order)
    if x.exp == rho:
        return jtheta_product(x.inv() * Monomial.q(rho), rho, order)
    return (pochinf(x, rho, order) * pochinf(x.inv() * Monomial.q(rho), rho, order)
            * pochinf(Monomial.q(rho), rho, order)).truncate(order)


def _shift_gain(x: Monomial, rho: Fraction, k: int) -> Fraction:
    # j(q^{rho k} y) = (-1)^k q^{-rho k(k-1)/2} y^{-k} j(y): exponent offset of the factor
    y_exp = x.exp - k * rho
    return rho * k * (k - 1) / 2 + k * y_exp


def _elliptic(base: QSeries, y: Monomial, rho: Fraction, k: int) -> QSeries:
    factor = CycCoeff.rational(-1 if k % 2 else 1) * y.coeff ** (-k)
    return base.shift(-rho * k * (k - 1) / 2 - k * y.exp).scale(factor)


def eta(rho, order) -> QSeries:
    """eta(q^rho) = q^{rho/24} (q^rho; q^rho)_inf."""
    rho = Fraction(rho)
    order = Fraction(order)
    lead = rho / 24
    return jtheta(Monomial.q(rho), 3 * rho, order - lead).shift(lead)


def JJ(a, b, order) -> QSeries:
    return jtheta(Monomial.q(a), b, order)


def JB(a, b, order) -> QSeries:
    return jtheta(Monomial.q(a, -1), b, order)


def Ja(a, order) -> QSeries:
    return jtheta(Monomial.q(a), 3 * Fraction(a), order)


def _half_power(c: CycCoeff, n: int) -> CycCoeff:
    """c^(n/2) through the principal square root."""
    if n % 2 == 0:
        return c ** (n // 2)
    return c.sqrt() ** n


def theta_nm(n: int, m: int, z, base, order, scaled: bool = False) -> QSeries:
    """Theta_{n,m}(z; q^base) = sum_{j in Z + n/2m} q^{base m j^2} z^{-m j}.

    With ``scaled`` the result is z^{n/2} Theta_{n,m}, which only involves
    integer powers of z; otherwise z^{-n/2} is taken on the principal branch.
    """
    z = _as_monomial(z)
    base = Fraction(base)
    order = Fraction(order)
    if m <= 0:
        raise UsageError("Theta_{n,m} needs m > 0")
    shift = Fraction(n, 2 * m)
    pre_exp = Fraction(0)
    pre = CycCoeff.rational(1)
    if not scaled:
        try:
            pre = _half_power(z.coeff, -n)
        except BranchError as exc:
            raise BranchError(f"z^(-{n}/2) is not representable: {exc}") from None
        pre_exp = -Fraction(n, 2) * z.exp
    # term k: j = k + n/2m, z^{-mj} = z^{-n/2} z^{-mk}
    f = lambda k: base * m * (k + shift) ** 2 - m * k * z.exp + pre_exp  # noqa: E731
    center = floor(-shift + z.exp / (2 * base)) if base else 0
    window = convex_window(f, order, center)
    cond = join_conductors(z.coeff.conductor, pre.conductor)
    terms: dict[Fraction, CycCoeff] = {}
    for k in window:
        coef = pre * z.coeff ** (-m * k)
        e = f(k)
        terms[e] = terms.get(e, CycCoeff.rational(0).embed(cond)) + coef
    return QSeries.from_terms(terms, trunc=order, conductor=cond)
