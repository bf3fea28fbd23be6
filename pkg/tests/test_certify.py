import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crankparity import asymptotics as asy
from crankparity import certify as cert
from crankparity.certify import Certificate, Method, Status, Theorem
from crankparity.partitions import build_table


def test_y_k_exact(table):
    t = build_table(10)
    assert cert.y_k_exact(1, 1, t) == 0
    with pytest.raises(ZeroDivisionError):
        cert.y_k_exact(4, 1, t)  # M1(4) = 0
    with pytest.raises(ValueError):
        cert.y_k_exact(0, 1, t)
    assert cert.y_k_exact(94, 0, table) < 1 <= cert.y_k_exact(93, 0, table)
    assert cert.y_k_exact(93, 1, table) < 1 <= cert.y_k_exact(92, 1, table)


def test_sign_alternation(table):
    c = cert.check_sign_alternation(table, 0, 5000)
    assert c.proved and c.violations == ()
    assert cert.check_sign_alternation(table, 1, 1).proved
    assert cert.check_sign_alternation(table, 5, 4).proved  # empty range


def test_d_excess(table):
    assert cert.d_excess_threshold(1) == 4
    with pytest.raises(ValueError):
        cert.d_excess_threshold(0)
    c = cert.check_d_excess(table, 1, 5000)
    assert c.proved and c.metadata["threshold"] == 4 and c.range == (4, 5000)
    # below the threshold the excess is not claimed and indeed can fail
    assert cert.check_d_excess(build_table(10), 50, 10).n_from > 10
    assert cert.check_d_excess_supporting(table, 1, 300).proved


def test_convexity_thresholds(table):
    assert cert.check_convexity(table, 0, 39, 1180).proved
    assert cert.check_convexity(table, 1, 38, 1180).proved
    assert cert.check_convexity(table, 0, 38, 38).violations == (38,)
    assert cert.check_convexity(table, 1, 37, 37).violations == (37,)
    assert cert.last_violation(cert.check_convexity, table, 0) == 38
    assert cert.last_violation(cert.check_convexity, table, 1) == 37


def test_log_concavity_thresholds(table):
    assert cert.check_log_concavity(table, 0, 94, 2011).proved
    assert cert.check_log_concavity(table, 1, 93, 2011).proved
    assert cert.check_log_concavity(table, 0, 93, 93).violations == (93,)
    assert cert.last_violation(cert.check_log_concavity, table, 0) == 93
    assert cert.last_violation(cert.check_log_concavity, table, 1) == 92


def test_higher_turan_thresholds(table):
    assert cert.check_higher_turan(table, 0, 207, 2010).proved
    assert cert.check_higher_turan(table, 1, 206, 2010).proved
    assert cert.check_higher_turan(table, 0, 206, 206).violations == (206,)
    assert cert.last_violation(cert.check_higher_turan, table, 0) == 206
    assert cert.last_violation(cert.check_higher_turan, table, 1) == 205


def test_log_concavity_matches_exact_y(table):
    for k in (0, 1):
        M = table.m(k)
        c = cert.check_log_concavity(table, k, 1, 400)
        bad = set(c.violations)
        for n in range(1, 401):
            if M[n] > 0:
                assert (n not in bad) == (cert.y_k_exact(n, k, table) < 1)


def test_range_validation(table):
    t = build_table(50)
    with pytest.raises(ValueError):
        cert.check_convexity(t, 0, 0, 10)
    with pytest.raises(ValueError):
        cert.check_higher_turan(t, 0, 10, 49)
    with pytest.raises(ValueError):
        cert.check_convexity(t, 2, 10, 20)


def test_envelope_containment(table):
    c = cert.check_envelope_containment(table, 1177, 3000)
    assert c.proved
    with pytest.raises(asy.HypothesisNotMet):
        cert.check_envelope_containment(table, 1176, 1200)
    # the envelope is far from sharp: half width still holds, and the first
    # failures appear only once the width is scaled below ~4.4e-6
    assert cert.check_envelope_containment(table, 1177, 3000, scale=Fraction(1, 2)).proved
    probe = cert.check_envelope_containment(table, 1177, 1300, scale=Fraction(1, 10**6))
    assert probe.status is Status.VIOLATIONS_FOUND and probe.violations[0] == 1177


def test_y_envelope(table):
    for k in (0, 1):
        assert cert.check_y_envelope(table, k, 2011, 2300).proved
    with pytest.raises(asy.HypothesisNotMet):
        cert.check_y_envelope(table, 0, 2000, 2300)


def test_equidistribution(table):
    assert cert.check_equidistribution(table, 4, 600).proved
    with pytest.raises(asy.HypothesisNotMet):
        cert.check_equidistribution(table, 3, 10)
    late = cert.max_equidistribution_deviation(table, 1000, 2000)
    early = cert.max_equidistribution_deviation(table, 4, 100)
    assert late < early
    n_star = cert.equidistribution_nonvacuous_from()
    assert asy.equidistribution_bound(n_star).lt(Fraction(1, 2))
    assert not asy.equidistribution_bound(n_star - 1).lt(Fraction(1, 2))


def test_main_term_series_and_pn_checks(table):
    assert cert.check_delta_main_term(table, 3, 200).proved
    assert cert.check_ckl_series(table, 1, 60).proved
    assert cert.check_p_asymptotic(table, 1, 200).proved


@pytest.mark.parametrize(
    "u, v, expected",
    [
        (Fraction(7, 10), Fraction(7, 10), False),
        (Fraction(7, 10), Fraction(71, 100), True),
        (Fraction(1, 2), Fraction(9, 10), False),
    ],
)
def test_jia_criterion(u, v, expected):
    assert cert.jia_criterion(u, v) is expected


def test_jia_criterion_implies_conclusion():
    assert cert.jia_conclusion(Fraction(7, 10), Fraction(71, 100)) is True


@settings(max_examples=200, deadline=None)
@given(st.fractions(Fraction(62, 100), 1, max_denominator=10**4), st.fractions(Fraction(62, 100), 1, max_denominator=10**4))
def test_jia_soundness_property(u, v):
    if cert.jia_criterion(u, v):
        assert 4 * (1 - u) * (1 - v) > (1 - u * v) ** 2


@settings(max_examples=200, deadline=None)
@given(st.fractions(0, 1, max_denominator=10**6), st.fractions(0, 1, max_denominator=10**6))
def test_turan_box_form_is_the_quartic(a, b):
    from crankparity.interval import RealInterval

    val = cert.turan_box_lower(RealInterval.exact(a, 128), RealInterval.exact(b, 128))
    exact = 4 * a * b - (a + b - a * b) ** 2
    assert val.contains(exact) or val.overlaps(RealInterval.exact(exact, 128))


def test_dominating_term():
    for n in (3, 100, 5000):
        assert cert.dominating_term_nonpositive(n) is True


def test_analytic_log_concavity():
    c = cert.certify_log_concavity_analytic(2011, 2400)
    assert c.proved and c.method is Method.ANALYTIC
    with pytest.raises(asy.HypothesisNotMet):
        cert.certify_log_concavity_analytic(100, 200)


def test_analytic_turan():
    c = cert.certify_higher_turan_analytic(2011, 2200)
    assert c.proved and c.metadata["disagreements"] == 0
    with pytest.raises(asy.HypothesisNotMet):
        cert.certify_higher_turan_analytic(2010, 2100)


def test_positivity_floor():
    from crankparity.interval import RealInterval

    for n in (2011, 5000, 10_000):
        m = asy.mu(n, 256)
        floor_gap = (RealInterval.pi(256) ** 4 - 18) / (9 * m ** 3)
        assert asy.y_gap_bounds(n, 256)[0].gt(floor_gap) is True
        assert floor_gap.sign() == 1


def test_analytic_implies_exact_on_overlap(table):
    lo, hi = 2011, 2400
    assert cert.certify_log_concavity_analytic(lo, hi).proved
    for k in (0, 1):
        assert cert.check_log_concavity(table, k, lo, hi).proved
    assert cert.certify_higher_turan_analytic(lo, hi - 1).proved
    for k in (0, 1):
        assert cert.check_higher_turan(table, k, lo, hi - 1).proved


def test_certificate_serialization(table):
    c = cert.check_convexity(table, 0, 30, 60)
    d = json.loads(c.to_json())
    assert set(d) == {"theorem", "k", "range", "method", "status", "violations", "undecided", "metadata"}
    assert Certificate.from_dict(d) == c
    assert c.to_json() == cert.check_convexity(table, 0, 30, 60).to_json()
    assert c.theorem is Theorem.CONVEXITY and c.status is Status.VIOLATIONS_FOUND
    assert list(c.violations) == sorted(c.violations)
