"""``@name(...)`` atoms: string-function and character assemblies usable inside expressions.

Series builders return a QSeries directly.  Text builders return expression
text which the evaluator parses and evaluates in place.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UsageError
from .strings import (LevelData, StringId, calC, char_weyl_kac, cross_spin_rhs, polar25_rhs, polar_finite_rhs,
                      polar_finite_rhs_j1, quasi_period_rhs, string_coeff_oracle, theta_decomp_rhs, theta_nm_scaled)
from .theta import Monomial, pochinf


def _int_arg(x, what: str) -> int:
    if isinstance(x, Monomial):
        raise UsageError(f"{what} must be an integer constant")
    if Fraction(x).denominator != 1:
        raise UsageError(f"{what} must be an integer, got {x}")
    return int(x)


def _mono_arg(x) -> Monomial:
    return x if isinstance(x, Monomial) else Monomial.q(0, x)


def _sid(args) -> StringId:
    p, pp, m, ell = (_int_arg(a, "string function index") for a in args)
    return StringId(LevelData(p, pp), m, ell)


def _C(args, order):
    return string_coeff_oracle(_sid(args), order)


def _CC(args, order):
    return calC(_sid(args), order)


def _qC3(args, order):
    # (q)_inf^3 times the normalized string function
    c = calC(_sid(args), order)
    return (pochinf(Monomial.q(1), 1, order) ** 3 * c).truncate(order)


def _chi(args, order, scaled=False):
    p, pp, ell = (_int_arg(a, "character index") for a in args[:3])
    return char_weyl_kac(LevelData(p, pp), ell, _mono_arg(args[3]), order, scaled=scaled)


def _thetas(args, order):
    n, m = _int_arg(args[0], "Theta index"), _int_arg(args[1], "Theta index")
    return theta_nm_scaled(n, m, _mono_arg(args[2]), Fraction(args[3]), order)


SERIES_BUILDERS = {
    "C": (4, _C),
    "CC": (4, _CC),
    "qC3": (4, _qC3),
    "chi": (4, lambda a, t: _chi(a, t)),
    "chis": (4, lambda a, t: _chi(a, t, scaled=True)),
    "thetas": (4, _thetas),
}


def _ints(args, n):
    return [_int_arg(a, "parameter") for a in args[:n]]


TEXT_BUILDERS = {
    "quasi": (5, lambda a: quasi_period_rhs(*_ints(a, 5))),
    "polar": (4, lambda a: polar_finite_rhs(*_ints(a, 3), _mono_arg(a[3]))),
    "polar1": (3, lambda a: polar_finite_rhs_j1(*_ints(a, 2), _mono_arg(a[2]))),
    "polar25": (2, lambda a: polar25_rhs(_ints(a, 1)[0], _mono_arg(a[1]))),
    "crossrhs": (2, lambda a: cross_spin_rhs(*_ints(a, 2))),
    "thetadecomp": (3, lambda a: theta_decomp_rhs(*_ints(a, 2), _mono_arg(a[2]))),
}

BUILDER_ARITY = {name: (n,) for name, (n, _) in {**SERIES_BUILDERS, **TEXT_BUILDERS}.items()}
