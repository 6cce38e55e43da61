"""Admissible A1^(1) characters, string functions and the structural assemblies around them.

The string-function oracle works directly with the Weyl-Kac quotient.  In
the annulus |q| < |z| < 1,

    1/((z)_inf (q/z)_inf) = sum_k G_k z^k,   G_k = q^max(0,-k) S_|k|,
    S_K = sum_b q^b / ((q)_b (q)_{b+K}),

so the z^((l-m)/2) coefficient of z^(l/2) chi_l is a finite combination of
the S_K times the two theta numerators, divided by (q)_inf.  Nothing here
uses the polar-finite decomposition, which keeps the oracle independent of
the identities it is used to check.

Assemblies with many terms (quasi-periodicity, polar-finite and cross-spin
right-hand sides) are produced as expression text so that precision
bookkeeping is handled by the evaluator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, comb, floor, gcd

from .errors import DivisionByZero, IntegralityError, UsageError
from .ring import CycCoeff
from .series import QSeries
from .theta import Monomial, _as_monomial, convex_window, jtheta, jtheta_valuation, pochinf, theta_is_zero, theta_nm


@dataclass(frozen=True)
class LevelData:
    p: int
    pprime: int

    def __post_init__(self):
        if self.p < 1 or self.pprime < 2:
            raise UsageError(f"admissible level needs p >= 1 and p' >= 2, got ({self.p}, {self.pprime})")
        if gcd(self.p, self.pprime) != 1:
            raise UsageError(f"admissible level needs gcd(p, p') = 1, got ({self.p}, {self.pprime})")

    @property
    def N(self) -> Fraction:
        return Fraction(self.pprime, self.p) - 2

    @property
    def j(self) -> int:
        return self.pprime - 2 * self.p

    def __str__(self) -> str:
        return f"({self.p},{self.pprime})"


@dataclass(frozen=True)
class StringId:
    level: LevelData
    m: int
    ell: int

    def __post_init__(self):
        if (self.m - self.ell) % 2:
            raise UsageError(f"quantum number and spin must have equal parity, got m={self.m}, l={self.ell}")
        if self.level.N == 0:
            raise UsageError("level N = 0 has no string functions")

    @property
    def s_ell(self) -> Fraction:
        lv = self.level
        return Fraction(-1, 8) + Fraction(lv.p * (self.ell + 1) ** 2, 4 * lv.pprime)

    @property
    def s_norm(self) -> Fraction:
        return self.s_ell - Fraction(self.m * self.m) / (4 * self.level.N)


def kappa(r: int) -> int:
    """0 for r mod 6 in {0,1,4,5}, 1 for r mod 6 in {2,3}."""
    return 1 if r % 6 in (2, 3) else 0


def kappa_sign(r: int) -> int:
    return -1 if kappa(r) else 1


# ---------------------------------------------------------------------------
# oracle


def _div_one_minus(a: list[int], n: int) -> None:
    """In place a <- a / (1 - q^n) on a truncated integer list."""
    for i in range(n, len(a)):
        a[i] += a[i - n]


@lru_cache(maxsize=None)
def s_series(K: int, order: int) -> tuple[int, ...]:
    """Coefficients of S_K = sum_b q^b / ((q)_b (q)_{b+K}) through q^order."""
    if K < 0:
        raise ValueError("S_K needs K >= 0")
    # Horner: H_{b-1} = 1 + q H_b / ((1-q^b)(1-q^{K+b})), S_K = H_0 / (q)_K;
    # H_{b-1} only matters through q^(order-b+1)
    h = [1]
    for b in range(order + 1, 0, -1):
        size = order - b + 2
        t = [0] + h[: size - 1]
        t += [0] * (size - len(t))
        _div_one_minus(t, b)
        _div_one_minus(t, K + b)
        t[0] += 1
        h = t
    h += [0] * (order + 1 - len(h))
    for i in range(1, K + 1):
        _div_one_minus(h, i)
    return tuple(h)


def _g_series(k: int, order: int) -> QSeries:
    """Coefficient of z^k in 1/((z)_inf (q/z)_inf), annulus |q| < |z| < 1."""
    shift = max(0, -k)
    if order - shift < 0:
        return QSeries.zero(1, order)
    return QSeries.from_ints(list(s_series(abs(k), order - shift)), shift, 1, 1, order)


def theta_numerator_sum(sid: StringId, order) -> QSeries:
    """(q)_inf * calC_{m,l}: the z^((l-m)/2) coefficient of the Weyl-Kac numerator times 1/((z)(q/z))."""
    lv = sid.level
    order = Fraction(order)
    if order < 0:
        return QSeries.zero(1, order)
    T = floor(order)
    P = lv.p * lv.pprime
    a = lv.p * (sid.ell + 1)
    k1 = lambda n: (sid.ell - sid.m) // 2 + lv.pprime * n  # noqa: E731
    k2 = lambda n: -(sid.ell + sid.m) // 2 - 1 + lv.pprime * n  # noqa: E731
    e1 = lambda n: P * n * n + n * a  # noqa: E731
    e2 = lambda n: P * n * n - n * a  # noqa: E731
    total = QSeries.zero(1, order)
    for e, k, sign in ((e1, k1, 1), (e2, k2, -1)):
        bound = lambda n, e=e, k=k: e(n) + max(0, -k(n))  # noqa: E731
        for n in convex_window(bound, Fraction(T), 0):
            g = _g_series(k(n), T - e(n))
            term = g.shift(e(n))
            total = total + (term if sign > 0 else -term)
    return total.truncate(order)


def calC(sid: StringId, order) -> QSeries:
    """Normalized string function q^(-s_{m,l}) C_{m,l}, an element of Z[[q]]."""
    order = Fraction(order)
    num = theta_numerator_sum(sid, order)
    v = num.offset if not num.is_zero() else order
    inv = pochinf(Monomial.q(1), 1, order - v).inverse()
    return (num * inv).truncate(order)


def string_coeff_oracle(sid: StringId, order) -> QSeries:
    """C^N_{m,l}(q) including its fractional leading power, to ``order``."""
    s = sid.s_norm
    # calC lives on the integer grid, so ask for a whole number of terms
    return calC(sid, ceil(Fraction(order) - s)).shift(s)


def normalize_C(sid: StringId, c: QSeries) -> QSeries:
    """q^(-s_norm) c, checked to lie in Z[[q]]."""
    out = c.shift(-sid.s_norm)
    if out.conductor != 1 and any(any(x) for x in out.comps[1:]):
        raise IntegralityError(f"normalized string function for {sid} has non-rational coefficients")
    for e, coef in out.items():
        if e.denominator != 1 or e < 0:
            raise IntegralityError(f"normalized string function for {sid} has a term at q^({e})")
        if coef.to_rational().denominator != 1:
            raise IntegralityError(f"normalized string function for {sid} has coefficient {coef} at q^{e}")
    return out


# ---------------------------------------------------------------------------
# characters


def char_weyl_kac(level: LevelData, ell: int, z, order, scaled: bool = False) -> QSeries:
    """chi_l(z) from the Weyl-Kac theta quotient.

    ``scaled`` returns z^(l/2) chi_l, whose z-powers are all integral; the
    unscaled form needs z^(-l/2) on the principal branch.
    """
    z = _as_monomial(z)
    order = Fraction(order)
    if theta_is_zero(z, 1):
        raise DivisionByZero(f"j(z;q) vanishes identically at z = {z}")
    p, pp = level.p, level.pprime
    lam = Fraction(-1, 8) + Fraction(p * (ell + 1) ** 2, 4 * pp)
    pre = CycCoeff.rational(1)
    pre_exp = Fraction(0)
    if not scaled:
        if ell % 2 == 0:
            pre = z.coeff ** (-(ell // 2))
        else:
            pre = z.coeff.sqrt() ** (-ell)
        pre_exp = -Fraction(ell, 2) * z.exp
    target = order - lam - pre_exp
    vd = jtheta_valuation(z, 1)
    zpp = z ** (-pp)
    base = 2 * p * pp
    x1 = Monomial.q(p * (ell + 1) + p * pp, -1) * zpp
    x2 = Monomial.q(-p * (ell + 1) + p * pp, -1) * zpp
    zl = z ** (ell + 1)
    t_num = target + vd
    num = jtheta(x1, base, t_num) - jtheta(x2, base, t_num - zl.exp).shift(zl.exp).scale(zl.coeff)
    vn = num.offset if not num.is_zero() else t_num
    den = jtheta(z, 1, max(vd, target + 2 * vd - vn))
    body = (num * den.inverse(target - vn)).truncate(target)
    return body.shift(lam + pre_exp).scale(pre).truncate(order)


# ---------------------------------------------------------------------------
# expression-text assemblies


def _q(e) -> str:
    e = Fraction(e)
    return f"q^({e})"


def _int(v) -> str:
    v = Fraction(v)
    return f"({v})"


def _z_text(z: Monomial) -> str:
    return f"(({z.coeff})*q^({z.exp}))"


def _zpow(z: Monomial, k: int) -> str:
    # parenthesized so that a leading unary minus applies after the power
    return f"({_z_text(z)}^({k}))"


def _theta_pair(p: int, j: int, r: int, m: int) -> str:
    """j(-q^{m(2p+j)+p(2r+1)}; q^{2p(2p+j)}) - q^{m(2p+j)-m(2r+1)} j(-q^{-m(2p+j)+p(2r+1)}; q^{2p(2p+j)})."""
    pp = 2 * p + j
    b = 2 * p * pp
    return (f"(j(-{_q(m * pp + p * (2 * r + 1))}, {b}) - {_q(m * pp - m * (2 * r + 1))}"
            f"*j(-{_q(-m * pp + p * (2 * r + 1))}, {b}))")


def quasi_period_rhs(p: int, j: int, t: int, s: int, r: int) -> str:
    """Right side of the even-spin quasi-periodicity relation for level (p, 2p+j)."""
    if j < 1:
        raise UsageError("quasi-periodicity needs p' > 2p")
    pp = 2 * p + j
    lead = Fraction(-1, 8) + Fraction(p * (2 * r + 1) ** 2, 4 * pp) + comb(p, 2) - p * (r - s) - Fraction(p, j) * s * s
    terms = []
    for i in range(1, t + 1):
        for m in range(1, p):
            e0 = -2 * p * j * comb(i, 2) - 2 * p * s * i + comb(m + 1, 2) + m * (r - p)
            diff = f"({_q(m * (j * i + s - j))} - {_q(-m * (j * i + s))})"
            terms.append(f"{_int((-1) ** m)}*{_q(e0)}*{diff}*{_theta_pair(p, j, r, m)}")
    if not terms:
        return "0"
    return f"{_int((-1) ** p)}*{_q(lead)}*(" + " + ".join(terms) + ")"


def polar_finite_rhs(p: int, j: int, r: int, z) -> str:
    """Right side of the even-spin polar-finite decomposition of chi_{2r} at level (p, 2p+j)."""
    z = _as_monomial(z)
    if j < 1:
        raise UsageError("the polar-finite decomposition needs p' > 2p")
    pp = 2 * p + j
    b = 2 * p * j
    finite = []
    polar = []
    for s in range(j):
        zs = _zpow(z, -s)
        zj = _zpow(z, j)
        zmj = _zpow(z, -j)
        theta = f"j(-{zj}*{_q(p * (j - 2 * s))}, {b})"
        finite.append(f"{zs}*{_q(Fraction(p * s * s, j))}*@C({p},{pp},{2 * s},{2 * r})*{theta}")
        lead = Fraction(-1, 8) + Fraction(p * (2 * r + 1) ** 2, 4 * pp) + comb(p, 2) - p * (r - s)
        inner = []
        for m in range(1, p):
            e0 = comb(m + 1, 2) + m * (r - p)
            appell = (f"({_q(m * s - 2 * p * s)}*m(-{_q(j * m - 2 * p * s)}, -{_q(p * (j + 2 * s))}*{zmj}, {b})"
                      f" + {_q(-m * s)}*m(-{_q(j * m + 2 * p * s)}, -{_q(p * (j - 2 * s))}*{zj}, {b}))")
            inner.append(f"{_int((-1) ** m)}*{_q(e0)}*{_theta_pair(p, j, r, m)}*{appell}")
        if inner:
            polar.append(f"{_int((-1) ** p)}*{_q(lead)}*{zs}*{theta}*(" + " + ".join(inner) + ")")
    text = " + ".join(finite)
    if polar:
        text += " + (" + " + ".join(polar) + ")/Ja(1)^3"
    return text


def polar_finite_rhs_j1(p: int, r: int, z) -> str:
    """The p' = 2p+1 corollary form of the polar-finite decomposition."""
    z = _as_monomial(z)
    pp = 2 * p + 1
    zt = _z_text(z)
    theta = f"j(-{_q(p)}*{zt}, {2 * p})"
    lead = Fraction(-1, 8) + Fraction(p * (2 * r + 1) ** 2, 4 * pp) + comb(p, 2) - r * p
    inner = []
    for m in range(1, p):
        pair = (f"(j(-{_q(m * pp + p * (2 * r + 1))}, {2 * p * pp}) - {_q(2 * m * (p - r))}"
                f"*j(-{_q(-m * pp + p * (2 * r + 1))}, {2 * p * pp}))")
        appell = f"(m(-{_q(m)}, -{_q(p)}*{zt}, {2 * p}) + m(-{_q(m)}, -{_q(p)}*{_zpow(z, -1)}, {2 * p}))"
        inner.append(f"{_int((-1) ** m)}*{_q(comb(m + 1, 2) + m * (r - p))}*{pair}*{appell}")
    text = f"@C({p},{pp},0,{2 * r})*{theta}"
    if inner:
        text += f" + {_int((-1) ** p)}*{_q(lead)}*{theta}/Ja(1)^3*(" + " + ".join(inner) + ")"
    return text


def polar25_rhs(r: int, z) -> str:
    """(q)_inf^3 chi_{2r}(z) at level (5,12), in the specialized printed form."""
    z = _as_monomial(z)
    z2 = _zpow(z, 2)
    zm2 = _zpow(z, -2)
    zm1 = _zpow(z, -1)
    lead = Fraction(-1, 8) + Fraction(5 * (2 * r + 1) ** 2, 48)

    def msum(appell) -> str:
        parts = []
        for m in range(1, 5):
            pair = (f"(j(-{_q(12 * m + 5 * (2 * r + 1))}, 120) - {_q(12 * m - m * (2 * r + 1))}"
                    f"*j(-{_q(-12 * m + 5 * (2 * r + 1))}, 120))")
            parts.append(f"{_int((-1) ** m)}*{_q(comb(m + 1, 2) + m * (r - 5))}*{pair}*{appell(m)}")
        return "(" + " + ".join(parts) + ")"

    first = msum(lambda m: f"(m(-{_q(2 * m)}, -{_q(10)}*{zm2}, 20) + m(-{_q(2 * m)}, -{_q(10)}*{z2}, 20))")
    second = msum(lambda m: f"({_q(m - 10)}*m(-{_q(2 * m - 10)}, -{_q(20)}*{zm2}, 20)"
                            f" + {_q(-m)}*m(-{_q(2 * m + 10)}, -{z2}, 20))")
    return (f"Ja(1)^3*@C(5,12,0,{2 * r})*j(-{z2}*{_q(10)}, 20)"
            f" + {zm1}*{_q(Fraction(5, 2))}*Ja(1)^3*@C(5,12,2,{2 * r})*j(-{z2}, 20)"
            f" - {_q(lead)}*{_q(10 - 5 * r)}*j(-{_q(10)}*{z2}, 20)*{first}"
            f" - {_q(lead)}*{_q(10 - 5 * (r - 1))}*{zm1}*j(-{z2}, 20)*{second}")


def cross_spin_rhs(p: int, k: int) -> str:
    """Right side of the even-spin cross-spin identity at level (p, 2p+1)."""
    pp = 2 * p + 1
    b = 2 * p * pp
    text = f"Ja(1)^3*{_int((-1) ** (p + 1))}*{_q(-p * (k + 1) + comb(p + 1, 2))}*@CC({p},{pp},1,{2 * p - 1 - 2 * k})"
    for m in range(1, p + 1):
        text += (f" - {_int((-1) ** m)}*{_q(-m * (k + 1) + comb(m + 1, 2))}"
                 f"*j(-{_q(-m * pp + p * (2 * p + 2 * k + 2))}, {b})")
    for m in range(1, p + 1):
        text += (f" + {_int((-1) ** m)}*{_q(m * k + comb(m + 1, 2))}"
                 f"*j(-{_q(-m * pp + p * (2 * p - 2 * k))}, {b})")
    return text


def theta_decomp_rhs(N: int, ell: int, z) -> str:
    """z^(l/2) sum_{0 <= m < 2N, m = l mod 2} C^N_{m,l} Theta_{m,N}(z;q), integral level N."""
    z = _as_monomial(z)
    if N < 1:
        raise UsageError("theta decomposition needs a positive integral level")
    parts = []
    for m in range(ell % 2, 2 * N, 2):
        parts.append(f"@C(1,{N + 2},{m},{ell})*{_zpow(z, (ell - m) // 2)}*@thetas({m},{N},{_z_text(z)},1)")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# checks returning reports


def _check(name: str, params: dict, lhs: str, rhs: str, order) -> "object":
    from .verify import check_texts
    return check_texts(name, params, lhs, rhs, Fraction(order))


def quasi_period_check(level: LevelData, t: int, s: int, r: int, order):
    p, j = level.p, level.j
    if t < 1:
        raise UsageError("quasi-periodicity needs t >= 1")
    lhs = f"Ja(1)^3*(@C({p},{level.pprime},{2 * j * t + 2 * s},{2 * r}) - @C({p},{level.pprime},{2 * s},{2 * r}))"
    return _check("quasi-period", {"p": p, "j": j, "t": t, "s": s, "r": r}, lhs, quasi_period_rhs(p, j, t, s, r), order)


def cross_spin_check(p: int, k: int, order):
    lhs = f"Ja(1)^3*@CC({p},{2 * p + 1},0,{2 * k})"
    return _check("cross-spin", {"p": p, "k": k}, lhs, cross_spin_rhs(p, k), order)


def theta_nm_scaled(n: int, m: int, z, base, order) -> QSeries:
    return theta_nm(n, m, z, base, order, scaled=True)
