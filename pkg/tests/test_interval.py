from fractions import Fraction

import mpmath
from mpmath.libmp import to_rational
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crankparity.interval import RealInterval, auto_precision, decide, sqrt_int


def iv(x, prec=128):
    return RealInterval.exact(x, prec)


def test_exact_points_and_rationals():
    assert iv(7).is_point
    third = iv(Fraction(1, 3))
    assert third.inexact and third.contains(third)
    assert third.lt(Fraction(1, 3) + Fraction(1, 10**30)) and third.gt(Fraction(1, 3) - Fraction(1, 10**30))
    huge = iv(3**200, 64)
    assert huge.inexact and huge.lt(3**200 + 1) is None


def test_minimum_precision():
    with pytest.raises(ValueError):
        RealInterval.exact(1, 32)


def test_arithmetic_encloses_true_values():
    with mpmath.workprec(400):
        pi = RealInterval.pi(128)
        assert pi.lo < mpmath.pi < pi.hi
        e = iv(1).exp()
        assert e.lo < mpmath.e < e.hi
        s = sqrt_int(2, 128)
        assert s.lo < mpmath.sqrt(2) < s.hi
        ln = iv(10).log()
        assert ln.lo < mpmath.log(10) < ln.hi
        c, si = (pi / 3).cos_sin()
        assert c.contains(Fraction(1, 2)) or (c.lo < mpmath.mpf(1) / 2 < c.hi)
        assert si.lo < mpmath.sqrt(3) / 2 < si.hi
        ch = iv(2).cosh()
        assert ch.lo < mpmath.cosh(2) < ch.hi


def test_cos_sin_clipped():
    c, s = RealInterval.pi(64).cos_sin()
    assert c.lo >= -1 and c.hi <= 1
    assert s.contains(0)


def test_mixed_operands():
    x = iv(3)
    assert (x + 1).contains(4) and (1 - x).contains(-2) and (2 / x).contains(Fraction(2, 3))
    assert (x * Fraction(1, 2)).contains(Fraction(3, 2))
    assert (-x).contains(-3) and abs(-x).contains(3) and (x ** 3).contains(27)


def test_division_by_zero_interval():
    with pytest.raises(ZeroDivisionError):
        iv(1) / RealInterval.hull(iv(-1), iv(1))


def test_domain_errors():
    with pytest.raises(ValueError):
        iv(-1).sqrt()
    with pytest.raises(ValueError):
        iv(0).log()


def test_tri_state_comparisons():
    a, b = iv(1), iv(2)
    assert a.lt(b) is True and b.lt(a) is False
    assert a.le(1) is True and a.lt(1) is False
    fuzzy = RealInterval.hull(iv(0), iv(3))
    assert fuzzy.lt(b) is None and fuzzy.sign() is None
    assert b.sign() == 1 and (-b).sign() == -1


def test_floor_ceil_of_point():
    assert iv(Fraction(7, 2)).floor_ceil_of_point() == (3, 4)
    assert iv(3).floor_ceil_of_point() is None
    assert RealInterval.hull(iv(Fraction(29, 10)), iv(Fraction(31, 10))).floor_ceil_of_point() is None


def test_endpoints_keep_full_precision():
    third = iv(Fraction(1, 3), 256)
    assert third.width() < mpmath.mpf(2) ** -250
    assert third.radius() * 2 >= third.width()


def test_decide_escalates():
    calls = []

    def pred(p):
        calls.append(p)
        return None if p < 256 else True

    assert decide(pred, 64) == (True, 256)
    assert calls == [64, 128, 256]
    assert decide(lambda p: None, 64, max_doublings=2) == (None, 256)


def test_auto_precision():
    assert auto_precision(0) == 96
    assert auto_precision(700) >= 700 / 0.6931 + 96


def test_decimal_display():
    assert RealInterval.pi(128).to_decimal(20) == "3.1415926535897932385"


OPS = {
    "exp": lambda x: x.exp(),
    "log": lambda x: x.log(),
    "sqrt": lambda x: x.sqrt(),
    "cosh": lambda x: x.cosh(),
    "cos": lambda x: x.cos_sin()[0],
    "sin": lambda x: x.cos_sin()[1],
    "recip": lambda x: 1 / x,
    "poly": lambda x: x ** 3 - 7 * x.square() + x / 3,
}


@settings(max_examples=150, deadline=None)
@given(
    st.sampled_from(sorted(OPS)),
    st.fractions(min_value=Fraction(1, 1000), max_value=200, max_denominator=10**6),
    st.integers(64, 400),
)
def test_soundness_property(op, x, prec):
    coarse = OPS[op](RealInterval.exact(x, prec))
    fine = OPS[op](RealInterval.exact(x, 2 * prec))
    assert coarse.contains(fine)
    assert fine.width() <= coarse.width()


def as_fraction(x):
    return Fraction(*to_rational(x._mpf_))


def encloses(X, r):
    return as_fraction(X.lo) <= r <= as_fraction(X.hi)


@settings(max_examples=100, deadline=None)
@given(st.fractions(max_denominator=10**9), st.fractions(max_denominator=10**9), st.integers(64, 200))
def test_exact_rational_enclosures(a, b, prec):
    A, B = iv(a, prec), iv(b, prec)
    assert encloses(A, a) and encloses(B, b)
    assert encloses(A + B, a + b)
    assert encloses(A - B, a - b)
    assert encloses(A * B, a * b)
    assert encloses(A.square(), a * a)
    if b != 0:
        assert encloses(A / B, a / b)
