from fractions import Fraction

import pytest

from qmock.errors import UsageError
from qmock.evaluate import Evaluator, clear_cache
from qmock.expr import parse
from qmock.verify import (check_texts, expand_template, load_registry, parse_params, parse_registry, run_identity,
                          run_suite, find_record)

REQUIRED = {
    "jtp": None,
    "theta-laws-3.1a": None, "theta-laws-3.1b": None, "theta-laws-3.1c": None, "theta-laws-3.1d": None,
    "theta-laws-3.1e": None, "theta-laws-3.1f": None,
    "appell-laws-3.2a": None, "appell-laws-3.2b": None, "appell-laws-3.2c": None,
    "theta-equivalence": None,
    "eta-KP-01": None, "eta-KP-11": None, "eta-KP-21": None, "eta-KP-4022": None, "eta-KP-40diff": None,
    "intlevel-periodicity": None, "intlevel-theta-decomp": None,
    "quasi-period": None, "polar-finite-z": None, "cross-spin": None,
    "mock-conj-f0": None, "mock-conj-f1": None, "tenth-omega": None,
    "thm-1of3": ("r", range(0, 3)), "thm-2of3-m0": ("r", range(0, 4)), "thm-2of3-m2": ("r", range(0, 4)),
    "thm-1of5": ("r", range(0, 5)), "thm-2of5-m0": ("r", range(0, 6)), "thm-2of5-m2": ("r", range(0, 6)),
    "prop-appell-forms-4.5": None, "prop-appell-forms-4.6": None, "prop-appell-forms-4.7": None,
    "prop-appell-forms-4.8": None,
    "prop-master-m0": ("r", range(0, 6)), "prop-master-m2": ("r", range(0, 6)),
    "prop-6.1-specialized": None,
    "lemma-6.2-bsum": ("m", range(1, 5)),
    "prop-6.3-zi": ("r", range(0, 6)), "prop-6.3-ziq5": ("r", range(0, 6)),
}


def test_registry_completeness():
    reg = {r.name: r for r in load_registry()}
    missing = sorted(set(REQUIRED) - set(reg))
    assert not missing
    for name, want in REQUIRED.items():
        if want is None:
            continue
        var, values = want
        assert sorted(b[var] for b in reg[name].bindings()) == list(values), name
    assert reg["prop-6.3-zi"].conductor == 4 and reg["prop-6.3-ziq5"].conductor == 4
    assert reg["tenth-omega"].conductor == 3


def test_quasi_period_and_polar_coverage():
    reg = {r.name: r for r in load_registry()}
    assert {(b["p"], b["j"]) for b in reg["quasi-period"].bindings()} == {(3, 1), (5, 1), (5, 2)}
    polar = reg["polar-finite-z"].bindings()
    assert {(b["p"], b["j"]) for b in polar} == {(3, 1), (5, 1), (5, 2)}
    assert len({b["z"] for b in polar}) == 3
    assert {b["p"] for b in reg["cross-spin"].bindings()} == {3, 5}


def test_anchors_unique_and_nonempty():
    anchors = [r.anchor for r in load_registry()]
    assert all(a.strip() for a in anchors)
    assert len(set(anchors)) == len(anchors)


def test_every_record_parses():
    for rec in load_registry():
        for env in rec.bindings():
            lhs, rhs = rec.instantiate(env)
            parse(lhs)
            parse(rhs)


def test_params_and_templates():
    params = parse_params("r=0..2; e=2,4; z=2*q,3*q^2; if r < e - 2")
    assert params[0] == ("r", (0, 1, 2)) and params[2] == ("z", ("2*q", "3*q^2"))
    assert expand_template("q^{r*r/2}*{z}", {"r": 3, "z": "2*q"}) == "q^(9/2)*(2*q)"
    assert expand_template("{(-1)**n}*{kappa(r)}", {"n": 3, "r": 2}) == "(-1)*(1)"
    with pytest.raises(UsageError):
        expand_template("{__import__('os')}", {})
    with pytest.raises(UsageError):
        parse_registry("a | - | rat | 5 | 1 | 1 | x\na | - | rat | 5 | 1 | 1 | y\n")
    with pytest.raises(UsageError):
        parse_registry("a | - | rat | 5 | 1 | 1\n")


def test_mismatch_forensics():
    r = check_texts("adhoc", {}, "1+q", "1+2*q", 10)
    assert r.status == "mismatch" and r.exponent == 1
    assert (r.lhs_coeff, r.rhs_coeff) == ("1", "2")
    assert r.to_json() == {"name": "adhoc", "params": {}, "status": "mismatch", "order": "10", "exponent": "1",
                           "lhs": "1", "rhs": "2"}


def test_errors_become_reports():
    r = check_texts("pole", {}, "m(-q^2, -q^3, 1)", "0", 10)
    assert r.status == "error" and "PoleError" in r.message
    r = check_texts("ring", {}, "w", "w", 10, 1)
    assert r.status == "error" and "RingError" in r.message


def test_run_identity_examples():
    assert all(r.status == "pass" for r in run_identity(find_record("jtp"), 200))
    r0 = [r for r in run_identity(find_record("thm-2of5-m0"), 120) if r.params["r"] == 0]
    assert r0[0].status == "pass"


def test_empty_suite():
    suite = run_suite("no-such-*")
    assert suite.reports == [] and suite.failures == 0
    assert suite.to_json_text() == "[]\n"


def test_numeric_sort_order():
    keys = [(r.params["c"], r.params["n"]) for r in run_suite("theta-laws-3.1a", order=10).reports]
    # integers compare as numbers, so n = -3 precedes n = 2
    assert keys == sorted(keys)


def test_evaluation_truncation_consistency():
    """eval at T2 then truncated to T1 equals eval at T1, over every registry expression."""
    t1, t2 = Fraction(12), Fraction(25)
    for rec in load_registry():
        env = rec.bindings()[0]
        for text in rec.instantiate(env):
            node = parse(text)
            clear_cache()
            hi = Evaluator(rec.conductor)(node, t2)
            clear_cache()
            lo = Evaluator(rec.conductor)(node, t1)
            assert hi.truncate(t1) == lo, (rec.name, text)
