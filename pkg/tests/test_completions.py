from fractions import Fraction

import pytest
from hypothesis import assume, given, settings

from conftest import F2, F3, QQ, P, polys
from surfadele.completions import (
    CurveResidue,
    QuotientResidue,
    RationalFunction,
    curve_valuation,
    expand_at_point,
    krull_injectivity_check,
    restrict_series_to_curve,
    stabilized_point_value,
)
from surfadele.errors import (
    BudgetExceededError,
    InsufficientCertificateError,
    InsufficientPrecisionError,
    NotRegularAtPointError,
    ValuationOfZeroError,
)
from surfadele.groebner import Ideal, ideal_membership
from surfadele.primes import MAXIMAL, PrimeIdeal
from surfadele.projlim import SeriesAdele


def rf(field, num, den="1"):
    return RationalFunction(P(field, num), P(field, den))


def test_expand_examples():
    assert expand_at_point(rf(QQ, "5"), (0, 0), 4).terms == P(QQ, "5")
    s = expand_at_point(rf(QQ, "1", "1 + u"), (0, 0), 2)
    assert s.terms == P(QQ, "1 - u")
    s = expand_at_point(rf(QQ, "u", "v - 1"), (0, 0), 3)
    assert s.terms == P(QQ, "-u - u*v")
    # multiply back: (v - 1) * expansion == u mod m^3
    assert ((P(QQ, "v - 1") * s.terms).truncate(3)) == P(QQ, "u")


def test_expand_not_regular():
    with pytest.raises(NotRegularAtPointError):
        expand_at_point(rf(QQ, "1", "u + v"), (0, 0), 3)
    with pytest.raises(NotRegularAtPointError):
        expand_at_point(rf(F2, "1", "u + 1"), (1, 0), 3)


def test_expand_off_origin():
    s = expand_at_point(rf(QQ, "u^2"), (Fraction(1, 2), 3), 3)
    # u^2 = (x + 1/2)^2 in local coordinate x = u - 1/2
    assert s.terms == P(QQ, "u^2 + u + 1/4")


@settings(max_examples=40, deadline=None)
@given(polys(F3, 3), polys(F3, 3))
def test_expansion_is_ring_map(f, g):
    pt, n = (1, 2), 4
    ef, eg = expand_at_point(f, pt, n), expand_at_point(g, pt, n)
    assert expand_at_point(f + g, pt, n) == ef + eg
    assert expand_at_point(f * g, pt, n) == ef * eg


@settings(max_examples=30, deadline=None)
@given(polys(QQ, 2), polys(QQ, 2))
def test_expansion_of_quotient(f, g):
    assume(g.evaluate(0, 0) != 0)
    e = expand_at_point(RationalFunction(f, g), (0, 0), 4)
    assert expand_at_point(g, (0, 0), 4) * e == expand_at_point(f, (0, 0), 4)


def test_valuation_examples():
    assert curve_valuation(rf(F2, "1"), P(F2, "u")) == 0
    assert curve_valuation(rf(F2, "u^3*(v + 1)"), P(F2, "u")) == 3
    assert curve_valuation(rf(QQ, "(u + v)^2", "u"), P(QQ, "u + v")) == 2
    assert curve_valuation(rf(QQ, "v", "(u - v)^3"), P(QQ, "u - v")) == -3
    with pytest.raises(ValuationOfZeroError):
        curve_valuation(rf(F2, "0"), P(F2, "u"))


CURVES = [P(F3, t) for t in ["u", "v + 1", "u + v", "u^2 + 1", "u^2 + u*v + 2"]]


@settings(max_examples=40, deadline=None)
@given(polys(F3, 3), polys(F3, 3))
def test_valuation_additive(f, g):
    assume(not f.is_zero() and not g.is_zero())
    for c in CURVES:
        assert curve_valuation(f * g, c) == curve_valuation(f, c) + curve_valuation(g, c)


@settings(max_examples=40, deadline=None)
@given(polys(F3, 4))
def test_valuation_vs_membership(f):
    assume(not f.is_zero())
    for c in CURVES[:3]:
        v = curve_valuation(f, c)
        for n in range(0, 4):
            assert (v >= n) == ideal_membership(f, Ideal([c**n])).member


def test_curve_residue_equality():
    c = P(F2, "u")
    a = CurveResidue(c, 2, P(F2, "v"), P(F2, "1"))
    b = CurveResidue(c, 2, P(F2, "v + u^2"), P(F2, "1"))
    assert a.equals(b)
    assert not a.equals(CurveResidue(c, 2, P(F2, "v + u"), P(F2, "1")))
    with pytest.raises(ValueError):
        CurveResidue(c, 2, P(F2, "1"), P(F2, "u*v"))


def test_restrict_examples(cert3):
    s = cert3.as_series()
    assert restrict_series_to_curve(s, P(F2, "u")).numerator.is_zero()
    r = restrict_series_to_curve(s, P(F2, "v"))
    assert r.numerator == P(F2, "u") and r.is_polynomial()
    zero = SeriesAdele(cert3.tower, ())
    assert restrict_series_to_curve(zero, P(F2, "u + v")).numerator.is_zero()


def test_restrict_errors(cert3):
    s = cert3.as_series()
    with pytest.raises(InsufficientCertificateError):
        restrict_series_to_curve(s, P(F2, "u + 1"))
    with pytest.raises(InsufficientCertificateError):
        restrict_series_to_curve(s, P(F2, "u + v"), precision=2)


def test_restrict_agrees_with_full_sum(certs):
    cert = certs[("f2", 6)]
    s = cert.as_series()
    total = sum(cert.terms, P(F2, "0"))
    for m, p in enumerate(cert.tower.primes, start=1):
        c = p.generators[0]
        M = 2 ** (cert.depth - m)
        r = restrict_series_to_curve(s, c, M)
        assert r.is_polynomial()
        assert ideal_membership(total - r.numerator, Ideal([c**M])).member


def test_point_value_examples(cert3):
    s = cert3.as_series()
    assert stabilized_point_value(s, (0, 0), 3).terms == P(F2, "u")
    assert stabilized_point_value(s, (0, 0), 1).terms.is_zero()
    assert stabilized_point_value(s, (0, 1), 2).terms == P(F2, "u")
    with pytest.raises(InsufficientPrecisionError):
        stabilized_point_value(s, (0, 0), 5)
    with pytest.raises(InsufficientPrecisionError):
        stabilized_point_value(s, (1, 1), 2)
    # mod m the terms evaluate to 1, 1, 0
    r = stabilized_point_value(s, (1, 1), 1)
    assert r.terms.is_zero() and r.stable_from == 3


def test_point_value_nonrational(certs):
    s = certs[("f2", 4)].as_series()
    m = PrimeIdeal(MAXIMAL, (P(F2, "u"), P(F2, "v^2 + v + 1")))
    r = stabilized_point_value(s, m, 2)
    assert isinstance(r, QuotientResidue)
    total = sum(s.terms, P(F2, "0"))
    m2 = Ideal([P(F2, "u^2"), P(F2, "u*v^2 + u*v + u"), P(F2, "(v^2 + v + 1)^2")])
    assert ideal_membership(total - r.value, m2).member


def test_krull_examples():
    r = krull_injectivity_check(1, 2)
    assert r.passed and r.checked == 7
    assert krull_injectivity_check(0, 5).passed
    r = krull_injectivity_check(3, 2)
    assert r.passed and r.checked == 2**10 - 1
    with pytest.raises(BudgetExceededError):
        krull_injectivity_check(6, 3)
