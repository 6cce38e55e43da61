"""Mock theta functions from their Eulerian (q-hypergeometric) definitions.

Each sum keeps a running reciprocal of the Pochhammer denominator and
divides in one new binomial factor per step, so the cost per term is linear
in the target order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .errors import PoleError, UsageError
from .ring import CycCoeff
from .series import QSeries
from .theta import Monomial, _as_monomial


def _div_factor(s: QSeries, c: CycCoeff, e: Fraction, order: Fraction) -> QSeries:
    """s / (1 - c q^e), expanded toward increasing exponents."""
    if e > 0:
        return s.div_binomial(c, e, order=order)
    if e < 0:
        inv = c.inv()
        return s.shift(-e).scale(-inv).div_binomial(inv, -e, order=order)
    if c == 1:
        raise PoleError("denominator factor 1 - q^0 vanishes")
    return s.scale((CycCoeff.rational(1) - c).inv()).truncate(order)


def _eulerian(order: Fraction, numer: Callable[[int], tuple[int, Fraction]],
              factors: Callable[[int], list[tuple[int, Fraction]]], start: list[tuple[int, Fraction]]) -> QSeries:
    """sum_n sign_n q^{a_n} / D_n where D_n = D_{n-1} * prod factors(n), D_0 = prod start.

    ``numer(n)`` gives (sign, exponent); exponents must grow with n and every
    factor exponent is positive, so term n has valuation a_n.
    """
    recip = QSeries.one().truncate(order)
    for c, e in start:
        recip = _div_factor(recip, CycCoeff.rational(c), e, order)
    total = QSeries.zero(1, order)
    n = 0
    while True:
        sign, a = numer(n)
        if a > order:
            break
        if n > 0:
            for c, e in factors(n):
                recip = _div_factor(recip.truncate(order - a), CycCoeff.rational(c), e, order - a)
        term = recip.truncate(order - a).shift(a)
        total = total + (term if sign > 0 else -term)
        n += 1
    return total


def f3(order) -> QSeries:
    """sum q^{n^2} / (-q;q)_n^2."""
    order = Fraction(order)
    return _eulerian(order, lambda n: (1, Fraction(n * n)),
                     lambda n: [(-1, Fraction(n)), (-1, Fraction(n))], [])


def omega3(order) -> QSeries:
    """sum q^{2n(n+1)} / (q;q^2)_{n+1}^2."""
    order = Fraction(order)
    return _eulerian(order, lambda n: (1, Fraction(2 * n * (n + 1))),
                     lambda n: [(1, Fraction(2 * n + 1))] * 2, [(1, Fraction(1))] * 2)


def f0(order) -> QSeries:
    """sum q^{n^2} / (-q;q)_n."""
    return _eulerian(Fraction(order), lambda n: (1, Fraction(n * n)), lambda n: [(-1, Fraction(n))], [])


def f1(order) -> QSeries:
    """sum q^{n(n+1)} / (-q;q)_n."""
    return _eulerian(Fraction(order), lambda n: (1, Fraction(n * (n + 1))), lambda n: [(-1, Fraction(n))], [])


def phi10(order) -> QSeries:
    """sum q^{n(n+1)/2} / (q;q^2)_{n+1}."""
    return _eulerian(Fraction(order), lambda n: (1, Fraction(n * (n + 1), 2)),
                     lambda n: [(1, Fraction(2 * n + 1))], [(1, Fraction(1))])


def psi10(order) -> QSeries:
    """sum q^{(n+1)(n+2)/2} / (q;q^2)_{n+1}."""
    return _eulerian(Fraction(order), lambda n: (1, Fraction((n + 1) * (n + 2), 2)),
                     lambda n: [(1, Fraction(2 * n + 1))], [(1, Fraction(1))])


def X10(order) -> QSeries:
    """sum (-1)^n q^{n^2} / (-q;q)_{2n}."""
    return _eulerian(Fraction(order), lambda n: ((-1) ** n, Fraction(n * n)),
                     lambda n: [(-1, Fraction(2 * n - 1)), (-1, Fraction(2 * n))], [])


def chi10(order) -> QSeries:
    """sum (-1)^n q^{(n+1)^2} / (-q;q)_{2n+1}."""
    return _eulerian(Fraction(order), lambda n: ((-1) ** n, Fraction((n + 1) ** 2)),
                     lambda n: [(-1, Fraction(2 * n)), (-1, Fraction(2 * n + 1))], [(-1, Fraction(1))])


def universal_g(x, rho, order) -> QSeries:
    """g(x; q^rho) = x^{-1} (-1 + sum_n q^{rho n^2} / ((x;q^rho)_{n+1} (q^rho/x;q^rho)_n))."""
    x = _as_monomial(x)
    rho = Fraction(rho)
    order = Fraction(order)
    if rho <= 0:
        raise UsageError("g needs a positive base exponent")
    c, a = x.coeff, x.exp
    cinv = c.inv()
    # any vanishing factor 1 - x q^{rho i} or 1 - q^{rho(i+1)}/x is a pole
    for k in ((-a / rho), (a / rho) - 1):
        if k.denominator == 1 and k >= 0 and c == 1:
            raise PoleError(f"g(x;q^{rho}) is singular at x = {x}")
    inner_order = order + a
    recip = _div_factor(QSeries.one(c.conductor).truncate(inner_order), c, a, inner_order)
    total = QSeries.zero(c.conductor, inner_order) - QSeries.one(c.conductor)
    n = 0
    while rho * n * n <= inner_order:
        if n > 0:
            t = inner_order - rho * n * n
            recip = _div_factor(recip.truncate(t), c, a + rho * n, t)
            recip = _div_factor(recip, cinv, rho * n - a, t)
        total = total + recip.truncate(inner_order - rho * n * n).shift(rho * n * n)
        n += 1
    return total.shift(-a).scale(cinv).truncate(order)


BASE_FUNCTIONS = {
    "f3": f3,
    "omega3": omega3,
    "f0": f0,
    "f1": f1,
    "phi10": phi10,
    "psi10": psi10,
    "X10": X10,
    "chi10": chi10,
}


def mock_series(name: str, arg=None, order=0) -> QSeries:
    """Named mock theta function, optionally at a monomial argument c*q^M (M > 0)."""
    if name not in BASE_FUNCTIONS:
        raise UsageError(f"unknown mock theta function {name!r}")
    order = Fraction(order)
    fn = BASE_FUNCTIONS[name]
    if arg is None:
        return fn(order)
    arg = _as_monomial(arg)
    if arg.exp <= 0:
        raise UsageError(f"{name} needs an argument of positive q-order, got {arg}")
    base = fn(order / arg.exp)
    return base.substitute(arg.coeff, arg.exp)
