"""Slow, obviously-correct reference computations on integer-exponent series.

A series here is a plain list of Fraction coefficients c[0..T]; nothing from
qmock is used, so these give an independent path to compare against.
"""

from fractions import Fraction


def mul(a, b, T):
    out = [Fraction(0)] * (T + 1)
    for i, x in enumerate(a[:T + 1]):
        if x:
            for k, y in enumerate(b[:T + 1 - i]):
                out[i + k] += x * y
    return out


def inv(a, T):
    # a[0] must be nonzero
    out = [Fraction(0)] * (T + 1)
    out[0] = 1 / Fraction(a[0])
    for n in range(1, T + 1):
        s = sum(a[k] * out[n - k] for k in range(1, min(n, len(a) - 1) + 1))
        out[n] = -s / a[0]
    return out


def one(T):
    return [Fraction(1)] + [Fraction(0)] * T


def binomial(c, e, T):
    """1 - c q^e for e >= 0."""
    out = one(T)
    if e <= T:
        out[e] -= c
    return out


def poch(c, a, rho, n, T):
    """(c q^a; q^rho)_n by multiplying out n factors; a, rho integers >= 0."""
    out = one(T)
    for i in range(n):
        out = mul(out, binomial(c, a + rho * i, T), T)
    return out


def pochinf(c, a, rho, T):
    n = 0 if a > T else (T - a) // rho + 1
    return poch(c, a, rho, n + (1 if a == 0 else 0), T)


def pentagonal(T):
    """(q;q)_inf from Euler's pentagonal number theorem."""
    out = [Fraction(0)] * (T + 1)
    k = 0
    while True:
        hit = False
        for kk in {k, -k}:
            e = kk * (3 * kk - 1) // 2
            if e <= T:
                out[e] = Fraction((-1) ** (kk % 2))
                hit = True
        if not hit and k > 0:
            return out
        k += 1


def partitions(T):
    p = [0] * (T + 1)
    p[0] = 1
    for part in range(1, T + 1):
        for n in range(part, T + 1):
            p[n] += p[n - part]
    return p


def f3(T):
    """sum q^(n^2) / (-q;q)_n^2"""
    out = [Fraction(0)] * (T + 1)
    n = 0
    while n * n <= T:
        d = poch(-1, 1, 1, n, T)
        term = inv(mul(d, d, T), T)
        out = [x + y for x, y in zip(out, [Fraction(0)] * (n * n) + term[:T + 1 - n * n])]
        n += 1
    return out


def tenth(T, shift):
    """sum q^((n+shift)(n+shift+1)/2) / (q;q^2)_{n+1}: shift 0 gives phi10, shift 1 gives psi10."""
    out = [Fraction(0)] * (T + 1)
    n = 0
    while (n + shift) * (n + shift + 1) // 2 <= T:
        e = (n + shift) * (n + shift + 1) // 2
        term = inv(poch(1, 1, 2, n + 1, T), T)
        out = [x + y for x, y in zip(out, [Fraction(0)] * e + term[:T + 1 - e])]
        n += 1
    return out


def lattice_theta01(T):
    """sum over integers j of q^(j^2)"""
    out = [0] * (T + 1)
    j = 0
    while j * j <= T:
        out[j * j] += 1 if j == 0 else 2
        j += 1
    return out
