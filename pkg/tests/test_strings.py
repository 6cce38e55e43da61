from fractions import Fraction

import pytest

import oracles
from qmock import evaluate
from qmock.errors import IntegralityError, UsageError
from qmock.ring import CycCoeff
from qmock.series import QSeries
from qmock.strings import (LevelData, StringId, calC, char_weyl_kac, cross_spin_check, kappa, kappa_sign,
                           normalize_C, quasi_period_check, string_coeff_oracle)
from qmock.theta import Monomial

F = Fraction


def ints(s, T):
    return [int(s.coeff(k).to_rational()) for k in range(T + 1)]


def test_level_data():
    lv = LevelData(5, 12)
    assert lv.N == F(2, 5) and lv.j == 2
    with pytest.raises(UsageError):
        LevelData(2, 4)
    with pytest.raises(UsageError):
        LevelData(1, 1)
    with pytest.raises(UsageError):
        StringId(lv, 1, 0)


def test_s_norm():
    assert StringId(LevelData(1, 5), 1, 1).s_norm == F(-1, 120)
    assert StringId(LevelData(1, 3), 1, 1).s_norm == F(-1, 24)
    # -1/8 + 5/48 at m = l = 0
    assert StringId(LevelData(5, 12), 0, 0).s_norm == F(-1, 48)


def test_kappa_table():
    assert [kappa(r) for r in range(12)] == [0, 0, 1, 1, 0, 0] * 2
    assert [kappa_sign(r) for r in range(6)] == [1, 1, -1, -1, 1, 1]


def test_level_one_is_partitions():
    sid = StringId(LevelData(1, 3), 1, 1)
    assert ints(calC(sid, 5), 5) == [1, 1, 2, 3, 5, 7]
    assert ints(calC(sid, 40), 40) == oracles.partitions(40)


def test_m_symmetry():
    lv = LevelData(5, 12)
    assert string_coeff_oracle(StringId(lv, 2, 0), 60) == string_coeff_oracle(StringId(lv, -2, 0), 60)


def test_normalization():
    sid = StringId(LevelData(5, 12), 0, 0)
    c = string_coeff_oracle(sid, 100)
    n = normalize_C(sid, c)
    assert n.eq_to_order(calC(sid, 101), 100)
    assert normalize_C(sid, QSeries.monomial(1, sid.s_norm)) == QSeries.one()
    with pytest.raises(IntegralityError):
        normalize_C(sid, QSeries.monomial(F(1, 2), sid.s_norm))
    with pytest.raises(IntegralityError):
        normalize_C(sid, QSeries.monomial(1, 0))


def test_kac_peterson_level_three():
    # C^3_{1,1} normalized against eta^-2 q^(3/40) J_{6,15}
    sid = StringId(LevelData(1, 5), 1, 1)
    lhs = string_coeff_oracle(sid, 80)
    rhs = evaluate("eta(1)^(-2) * q^(3/40) * JJ(6, 15)", 80)
    assert lhs.eq_to_order(rhs, 80)


def test_character_at_i():
    # level (5,12), l=0, z=i: -1/8 + 5/48 lead and the theta quotient
    chi = char_weyl_kac(LevelData(5, 12), 0, Monomial.q(0, CycCoeff.i()), 150)
    rhs = evaluate("q^(-1/48) * j(-q^65, 120) * Ja(2) / (Ja(1) * Ja(4))", 150, 4)
    assert chi.eq_to_order(rhs, 150)


def test_quasi_periodicity_examples():
    assert quasi_period_check(LevelData(5, 12), 1, 0, 0, 60).status == "pass"
    assert quasi_period_check(LevelData(3, 7), 1, 0, 1, 60).status == "pass"
    with pytest.raises(UsageError):
        quasi_period_check(LevelData(3, 7), 0, 0, 0, 10)


@pytest.mark.parametrize("p, k", [(3, 0), (5, 0), (5, 2)])
def test_cross_spin_examples(p, k):
    assert cross_spin_check(p, k, 60).status == "pass"


def test_polar_finite_pole_is_an_error():
    from qmock.verify import check_texts
    # z = q^2 puts m(-q^2, -q^5 z^(-1); q^10) on its pole locus at level 2/5
    r = check_texts("pole", {}, "@chis(5, 12, 0, q^2)", "@polar(5, 2, 0, q^2)", 20)
    assert r.status == "error"
