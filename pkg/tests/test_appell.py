from fractions import Fraction

import pytest

from qmock import evaluate
from qmock.appell import appell_m, bilateral_pf_sum
from qmock.errors import PoleError
from qmock.series import QSeries
from qmock.theta import Monomial

F = Fraction


def test_phi10_from_appell():
    s = evaluate("-q^(-1)*(m(q, q, 10) + m(q, q^2, 10))", 3)
    assert s == QSeries.from_ints([1, 2, 2, 3], trunc=3)


@pytest.mark.parametrize("x, z", [("-q^2", "-q^(1/2)"), ("2*q^(1/3)", "-q^3"), ("-3*q", "-q^(5/4)")])
def test_z_shift(x, z):
    lhs = evaluate(f"m({x}, {z}, 1)", 60)
    rhs = evaluate(f"m({x}, q*{z}, 1)", 60)
    assert lhs == rhs


def test_pole_is_reported():
    # x z = q^(10(1 - r)) at r = 1
    with pytest.raises(PoleError):
        appell_m(Monomial.q(1), Monomial.q(-1), 10, 5)
    # the literal example x=-q^2, z=-q^3 has x z = q^5, on the pole locus at base q
    with pytest.raises(PoleError):
        evaluate("m(-q^2, -q^3, 1)", 5)


def test_truncation_independence():
    x, z = Monomial.q(F(1, 3), 2), Monomial.q(F(1, 4), -1)
    hi = appell_m(x, z, 1, 90)
    for t in (10, 37, F(121, 3)):
        assert hi.truncate(t) == appell_m(x, z, 1, t)


def test_bilateral_sum():
    assert evaluate("bsum(8, 20)", 200) == evaluate("Ja(20)^3 / j(-q^8, 20)", 200)
    assert (bilateral_pf_sum(6, 20, 40) - bilateral_pf_sum(6, 20, 40)).is_zero()
    # j(-q^6; q^20) = j(-q^14; q^20) by the flip, so the two sums agree
    assert bilateral_pf_sum(6, 20, 60) == bilateral_pf_sum(14, 20, 60)
    # e + 20k = 0 leaves the constant summand 1/2
    assert evaluate("bsum(0, 20)", 60) == evaluate("Ja(20)^3 / j(-1, 20)", 60)
