"""Randomized instances of the theta and Appell laws, drawn from the registry templates."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from qmock.verify import find_record, run_binding

coeffs = st.sampled_from([2, -2, 3, -3, -1, Fraction(1, 2), Fraction(-5, 3)])
# a/3 stays off the integers so every j(x; q) in sight is nonzero
thirds = st.integers(-5, 5).filter(lambda a: a % 3)
quarters = st.integers(-7, 7).filter(lambda b: b % 4)


def check(name, env, order=80):
    report = run_binding(find_record(name), env, order)
    assert report.status == "pass", report.line()


THETA_LAWS = ["theta-laws-3.1b", "theta-laws-3.1b-neg", "theta-laws-3.1c", "theta-laws-3.1c-n3", "theta-laws-3.1d",
              "theta-laws-3.1d-n3", "theta-laws-3.1e", "theta-laws-3.1e-m3", "theta-laws-3.1f", "theta-laws-3.1f-mid"]


@settings(max_examples=20)
@given(n=st.integers(-3, 3), c=coeffs)
def test_elliptic_shift(n, c):
    check("theta-laws-3.1a", {"n": n, "c": c})


def _law_test(name):
    @settings(max_examples=20)
    @given(c=coeffs, a=thirds)
    def test(c, a):
        check(name, {"c": c, "a": a})
    test.__name__ = "test_" + name.replace("-", "_").replace(".", "_")
    return test


for _name in THETA_LAWS:
    globals()["test_" + _name.replace("-", "_").replace(".", "_")] = _law_test(_name)


def _appell_test(name):
    @settings(max_examples=20)
    @given(c=coeffs.filter(lambda c: c != -1), a=thirds, b=quarters)
    def test(c, a, b):
        check(name, {"c": c, "a": a, "b": b})
    return test


test_appell_z_shift = _appell_test("appell-laws-3.2a")
test_appell_inversion = _appell_test("appell-laws-3.2b")
test_appell_x_shift = _appell_test("appell-laws-3.2c")


@settings(max_examples=10)
@given(c=st.sampled_from([1, -1, 2, -2, 3, -3, Fraction(1, 2)]), a=st.integers(1, 4))
def test_triple_product_to_order_1000(c, a):
    check("jtp", {"c": c, "a": a}, order=1000)
