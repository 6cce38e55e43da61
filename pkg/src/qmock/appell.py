"""Appell functions m(x,z;q^rho) and bilateral partial-fraction sums at monomial arguments."""

from __future__ import annotations

from fractions import Fraction
from math import floor

from .errors import DivisionByZero, PoleError, UsageError
from .ring import CycCoeff, join_conductors
from .series import QSeries
from .theta import Monomial, _as_monomial, convex_window, jtheta, jtheta_valuation, theta_is_zero


def geometric_term(coef: CycCoeff, a: Fraction, w_coef: CycCoeff, w_exp: Fraction, order: Fraction,
                   where: str = "") -> QSeries:
    """coef*q^a / (1 - w_coef*q^w_exp) expanded so exponents increase, truncated at ``order``."""
    if w_exp > 0:
        return QSeries.monomial(coef, a).div_binomial(w_coef, w_exp, order=order)
    if w_exp < 0:
        # 1/(1-w) = -w^{-1} / (1 - w^{-1})
        inv = w_coef.inv()
        return QSeries.monomial(-coef * inv, a - w_exp).div_binomial(inv, -w_exp, order=order)
    if w_coef == 1:
        raise PoleError(f"pole: denominator 1 - q^0 vanishes{where}")
    return QSeries.monomial(coef / (CycCoeff.rational(1) - w_coef), a).truncate(order)


def _lower(a: Fraction, w_exp: Fraction) -> Fraction:
    return a + max(Fraction(0), -w_exp)


def appell_sum(x: Monomial, z: Monomial, rho: Fraction, order: Fraction) -> QSeries:
    """sum_r (-1)^r q^{rho r(r-1)/2} z^r / (1 - q^{rho(r-1)} x z), truncated at ``order``."""
    xz = x * z
    a_of = lambda r: rho * r * (r - 1) / 2 + r * z.exp  # noqa: E731
    e_of = lambda r: rho * (r - 1) + xz.exp  # noqa: E731
    bound = lambda r: _lower(a_of(r), e_of(r))  # noqa: E731
    center = floor(Fraction(1, 2) - z.exp / rho)
    window = convex_window(bound, order, center)
    cond = join_conductors(x.coeff.conductor, z.coeff.conductor)
    # poles can sit outside the window; check the whole lattice analytically
    k = (-xz.exp / rho) + 1
    if k.denominator == 1 and xz.coeff == 1:
        raise PoleError(f"non-generic Appell parameters: pole at r = {int(k)}")
    total = QSeries.zero(cond, order)
    neg_z = -z.coeff
    for r in window:
        coef = neg_z ** r
        total = total + geometric_term(coef, a_of(r), xz.coeff, e_of(r), order, f" at r = {r}")
    return total


def appell_m(x, z, rho, order) -> QSeries:
    """m(x, z; q^rho) to ``order``."""
    x, z = _as_monomial(x), _as_monomial(z)
    rho = Fraction(rho)
    order = Fraction(order)
    if rho <= 0:
        raise UsageError("Appell base exponent must be positive")
    if theta_is_zero(z, rho):
        raise DivisionByZero(f"j(z;q^{rho}) vanishes identically for z = {z}")
    vj = jtheta_valuation(z, rho)
    t_sum = order + vj
    s = appell_sum(x, z, rho, t_sum)
    vs = s.offset if not s.is_zero() else t_sum
    t_j = order + 2 * vj - vs
    j = jtheta(z, rho, max(t_j, vj))
    return (s * j.inverse(order - vs)).truncate(order)


def bilateral_pf_sum(e, rho, order) -> QSeries:
    """sum_k (-1)^k q^{rho k(k+1)/2} / (1 + q^{rho k + e}); equals J_rho^3 / j(-q^e; q^rho)."""
    e = Fraction(e)
    rho = Fraction(rho)
    order = Fraction(order)
    if rho <= 0:
        raise UsageError("base exponent must be positive")
    a_of = lambda k: rho * k * (k + 1) / 2  # noqa: E731
    e_of = lambda k: rho * k + e  # noqa: E731
    bound = lambda k: _lower(a_of(k), e_of(k))  # noqa: E731
    window = convex_window(bound, order, floor(-e / rho))
    minus_one = CycCoeff.rational(-1)
    total = QSeries.zero(1, order)
    for k in window:
        coef = CycCoeff.rational(-1 if k % 2 else 1)
        total = total + geometric_term(coef, a_of(k), minus_one, e_of(k), order, f" at k = {k}")
    return total
