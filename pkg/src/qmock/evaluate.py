"""Evaluate expression ASTs to truncated q-series.

Every node is asked for a target order T and returns a series known at
least through T (or exact).  Products and quotients look at the valuations
of what came back and re-ask children for more terms when negative
valuations eat into the precision.
"""

from __future__ import annotations

from fractions import Fraction

from . import appell, mock, theta
from .builders import SERIES_BUILDERS, TEXT_BUILDERS
from .errors import DivisionByZero, InsufficientPrecision, NotInvertible, QMockError, RingError, UsageError
from .expr import BinOp, Call, Neg, Node, Num, Pow, QPow, Unit, parse
from .ring import CycCoeff, join_conductors
from .series import QSeries
from .theta import Monomial

MAX_RETRIES = 8

# (name, builder?, args) -> the most precise series computed so far
_CACHE: dict[tuple, QSeries] = {}
_TEXT_CACHE: dict[str, Node] = {}


def clear_cache() -> None:
    _CACHE.clear()
    _TEXT_CACHE.clear()


def _val(s: QSeries, fallback: Fraction) -> Fraction:
    """Lower bound for the valuation of ``s``."""
    if not s.is_zero():
        return s.offset
    return s.trunc if s.trunc is not None else fallback


class Evaluator:
    def __init__(self, conductor: int = 1):
        self.conductor = conductor

    def __call__(self, node: Node, order) -> QSeries:
        order = Fraction(order)
        out = self.eval(node, order)
        if out.trunc is not None and out.trunc < order:
            raise InsufficientPrecision(f"result only known to q^({out.trunc}), wanted q^({order})", node.span)
        out = out.truncate(order).reduce_ring()
        if join_conductors(self.conductor, out.conductor) != self.conductor:
            raise RingError(f"expression needs conductor {out.conductor}, but the ring has conductor {self.conductor}",
                            node.span)
        return out.embed(self.conductor)

    def eval(self, node: Node, order: Fraction) -> QSeries:
        try:
            return self._eval(node, order)
        except QMockError as exc:
            if exc.span is None:
                exc.span = node.span
            raise

    def _eval(self, node: Node, order: Fraction) -> QSeries:
        if isinstance(node, Num):
            return QSeries.monomial(node.value)
        if isinstance(node, QPow):
            return QSeries.monomial(1, node.exp)
        if isinstance(node, Unit):
            return QSeries.monomial(CycCoeff.i() if node.name == "i" else CycCoeff.w())
        if isinstance(node, Neg):
            return -self.eval(node.arg, order)
        if isinstance(node, BinOp):
            if node.op == "+":
                return self.eval(node.left, order) + self.eval(node.right, order)
            if node.op == "-":
                return self.eval(node.left, order) - self.eval(node.right, order)
            left = lambda t: self.eval(node.left, t)  # noqa: E731
            right = lambda t: self.eval(node.right, t)  # noqa: E731
            if node.op == "*":
                return self._mul(left, right, order)
            return self._div(left, right, order)
        if isinstance(node, Pow):
            if node.exp >= 0:
                return self._pow(node.base, node.exp, order)
            return self._div(lambda t: QSeries.one(), lambda t: self._pow(node.base, -node.exp, t), order)
        if isinstance(node, Call):
            return self._call(node, order)
        raise TypeError(f"not an expression node: {node!r}")

    # -- precision-aware arithmetic

    def _mul(self, left, right, order: Fraction) -> QSeries:
        ta = tb = order
        for _ in range(MAX_RETRIES):
            a = left(ta)
            b = right(tb)
            prod = a * b
            if prod.trunc is None or prod.trunc >= order:
                return prod
            # trunc(a*b) = min(trunc a + val b, trunc b + val a)
            ta = max(ta, order - _val(b, order))
            tb = max(tb, order - _val(a, order))
        raise InsufficientPrecision(f"could not reach q^({order}) in a product")

    def _div(self, left, right, order: Fraction) -> QSeries:
        tb = order
        for _ in range(MAX_RETRIES):
            b = right(tb)
            if b.is_zero():
                if b.trunc is None:
                    raise DivisionByZero("division by an identically zero series")
                tb = tb + max(Fraction(10), abs(tb))
                continue
            vb = b.offset
            a = left(order + vb)
            if b.is_monomial() and b.trunc is None:
                return a * b.inverse()
            if a.is_zero() and a.trunc is None:
                return a
            va = _val(a, order + vb)
            need_b = order + 2 * vb - va
            if b.trunc is not None and b.trunc < need_b:
                tb = need_b
                continue
            res = a * b.inverse(order - va)
            if res.trunc is None or res.trunc >= order:
                return res
            tb = max(tb, need_b) + 1
        if b.is_zero():
            raise NotInvertible(f"divisor vanishes through q^({b.trunc})")
        raise InsufficientPrecision(f"could not reach q^({order}) in a quotient")

    def _pow(self, base: Node, k: int, order: Fraction) -> QSeries:
        if k == 0:
            return QSeries.one()
        t = order
        for _ in range(MAX_RETRIES):
            a = self.eval(base, t)
            out = a ** k
            if out.trunc is None or out.trunc >= order:
                return out
            need = order - (k - 1) * _val(a, t)
            t = need if need > t else t + 1
        raise InsufficientPrecision(f"could not reach q^({order}) in a power")

    # -- calls

    def monomial_arg(self, node: Node) -> Monomial:
        s = self.eval(node, Fraction(1))
        if not (s.exact and s.is_monomial()):
            raise UsageError("argument must be a monomial c*q^e", node.span)
        return Monomial.from_series(s)

    def _is_zero_const(self, node: Node) -> bool:
        s = self.eval(node, Fraction(1))
        return s.exact and s.is_zero()

    def const_arg(self, node: Node) -> Fraction:
        if self._is_zero_const(node):
            return Fraction(0)
        x = self.monomial_arg(node)
        if x.exp != 0 or not x.coeff.is_rational():
            raise UsageError("argument must be a rational constant", node.span)
        return x.coeff.to_rational()

    def base_arg(self, node: Node) -> Fraction:
        """A base written as rho or as q^rho."""
        x = self.monomial_arg(node)
        if x.exp == 0 and x.coeff.is_rational():
            rho = x.coeff.to_rational()
        elif x.coeff == 1:
            rho = x.exp
        else:
            raise UsageError("base must be rho or q^rho", node.span)
        if rho <= 0:
            raise UsageError("base exponent must be positive", node.span)
        return rho

    def int_arg(self, node: Node) -> int:
        v = self.const_arg(node)
        if v.denominator != 1:
            raise UsageError("argument must be an integer", node.span)
        return int(v)

    def _call(self, node: Call, order: Fraction) -> QSeries:
        if node.builder:
            if node.name in TEXT_BUILDERS:
                args = tuple(self._builder_value(a) for a in node.args)
                text = TEXT_BUILDERS[node.name][1](args)
                tree = _TEXT_CACHE.get(text)
                if tree is None:
                    tree = _TEXT_CACHE[text] = parse(text)
                return self.eval(tree, order)
            fn = SERIES_BUILDERS[node.name][1]
            args = tuple(self._builder_value(a) for a in node.args)
            return _cached(("@" + node.name, args), order, lambda t: fn(args, t))
        name = node.name
        a = node.args
        if name == "j":
            x, rho = self.monomial_arg(a[0]), self.base_arg(a[1])
            if theta.theta_is_zero(x, rho):
                return QSeries.zero(x.coeff.conductor)
            return _cached((name, x, rho), order, lambda t: theta.jtheta(x, rho, t))
        if name == "m":
            x, z, rho = self.monomial_arg(a[0]), self.monomial_arg(a[1]), self.base_arg(a[2])
            return _cached((name, x, z, rho), order, lambda t: appell.appell_m(x, z, rho, t))
        if name in ("JJ", "JB"):
            e, b = self.const_arg(a[0]), self.base_arg(a[1])
            if name == "JJ" and theta.theta_is_zero(Monomial.q(e), b):
                return QSeries.zero()
            fn = theta.JJ if name == "JJ" else theta.JB
            return _cached((name, e, b), order, lambda t: fn(e, b, t))
        if name == "Ja":
            e = self.base_arg(a[0])
            return _cached((name, e), order, lambda t: theta.Ja(e, t))
        if name == "eta":
            rho = self.base_arg(a[0])
            return _cached((name, rho), order, lambda t: theta.eta(rho, t))
        if name == "poch":
            x, rho, n = self.monomial_arg(a[0]), self.base_arg(a[1]), self.int_arg(a[2])
            return _cached((name, x, rho, n), order, lambda t: theta.poch(x, rho, n, t))
        if name == "pochinf":
            x, rho = self.monomial_arg(a[0]), self.base_arg(a[1])
            return _cached((name, x, rho), order, lambda t: theta.pochinf(x, rho, t))
        if name == "theta":
            n, m = self.int_arg(a[0]), self.int_arg(a[1])
            z, rho = self.monomial_arg(a[2]), self.base_arg(a[3])
            return _cached((name, n, m, z, rho), order, lambda t: theta.theta_nm(n, m, z, rho, t))
        if name == "g":
            x, rho = self.monomial_arg(a[0]), self.base_arg(a[1])
            return _cached((name, x, rho), order, lambda t: mock.universal_g(x, rho, t))
        if name == "bsum":
            e, rho = self.const_arg(a[0]), self.base_arg(a[1])
            return _cached((name, e, rho), order, lambda t: appell.bilateral_pf_sum(e, rho, t))
        if name in mock.BASE_FUNCTIONS:
            x = self.monomial_arg(a[0]) if a else None
            return _cached((name, x), order, lambda t: mock.mock_series(name, x, t))
        raise UsageError(f"unknown function {name!r}", node.span)

    def _builder_value(self, node: Node):
        if self._is_zero_const(node):
            return Fraction(0)
        x = self.monomial_arg(node)
        if x.exp == 0 and x.coeff.is_rational():
            return x.coeff.to_rational()
        return x


def _cached(key: tuple, order: Fraction, compute) -> QSeries:
    hit = _CACHE.get(key)
    if hit is not None and (hit.trunc is None or hit.trunc >= order):
        return hit if hit.trunc is None else hit.truncate(order)
    out = compute(order)
    _CACHE[key] = out
    return out


def evaluate(expr, order, conductor: int = 1) -> QSeries:
    """Evaluate expression text or an AST to ``order`` in the field of the given conductor."""
    node = parse(expr) if isinstance(expr, str) else expr
    return Evaluator(conductor)(node, order)
