from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from codepth3.classtable import C, G, H, S, TT, admissible, bass_series, canonical_invariants, fg_polys
from codepth3.growth import (
    GorensteinInput, OrderMismatch, SOutOfRange, bass_diffs, coeffs_a, coeffs_b, exception_kind,
    growth_verdict, lemma_a_route,
)
from codepth3.powser import RationalSeries, T, dominates, taylor

from gridcases import grid_cases


def test_diffs_of_class_s():
    inv = canonical_invariants(S, e=3, d=1, h=1, l=1)
    I = bass_series(S, inv)
    assert bass_diffs(I, 1, 5) == [1, 1, 0, 2, 2, 4]


def test_diffs_reject_low_order():
    with pytest.raises(OrderMismatch):
        bass_diffs(RationalSeries(T), 2, 4)


def test_coeffs_b_range():
    with pytest.raises(SOutOfRange):
        coeffs_b(1 + T, 3, 4, m_minus_p=1)
    with pytest.raises(SOutOfRange):
        coeffs_b(1 + T, -1, 4)


def test_exception_kinds():
    assert exception_kind(S, canonical_invariants(S, e=2, d=0, h=1, l=1)) == "wxwy"
    assert exception_kind(H(2, 1), canonical_invariants(H(2, 1), e=3, d=0, h=1, l=2, n=1)) == "wxwyz"
    assert exception_kind(TT, canonical_invariants(TT, e=3, d=0, h=0, l=3, n=2)) == "none"


def test_class_s_exception_verdict():
    rep = growth_verdict(S, canonical_invariants(S, e=2, d=0, h=1, l=1), 12)
    assert rep.exception == "wxwy"
    assert rep.mu[:8] == [1, 2, 2, 4, 6, 10, 16, 26]
    assert rep.flags[1] is False
    assert rep.gamma_window == Fraction(3, 2)
    assert rep.gamma_window == min(Fraction(rep.mu[i], rep.mu[i - 1]) for i in range(1, 13) if i != 2)


def test_g2_verdict():
    inv = canonical_invariants(G(2), e=3, d=0, h=1, l=3, n=1)
    rep = growth_verdict(G(2), inv, 12)
    assert rep.exception == "none" and all(rep.flags)
    assert rep.gamma_window > 1


def test_g2_lemma_a_bound():
    inv = canonical_invariants(G(2), e=3, d=0, h=1, l=3, n=1)
    f, g = fg_polys(G(2), inv)
    diffs = bass_diffs(bass_series(G(2), inv), 0, 12)
    a, exact, bound = lemma_a_route(f, g, 3, 12)
    assert all(x >= 0 for x in a[1:])
    assert dominates(RationalSeries(sum(x * T**i for i, x in enumerate(diffs) if i >= 2)), bound, 12)


def test_gorenstein_rejected():
    with pytest.raises(GorensteinInput):
        growth_verdict(C(3), canonical_invariants(C(3), e=3, d=0))


def test_coeffs_a_definition():
    f, g = 2 + T, 1 - T
    assert coeffs_a(f, g, 5) == taylor(RationalSeries(f - g, 1 - T**2), 0, 5)


@given(st.sampled_from([c for c in grid_cases() if not admissible(*c).gorenstein]))
def test_growth_monotone(case):
    cls, inv = case
    rep = growth_verdict(cls, inv, 12)
    mu = rep.mu
    for i in range(1, 13):
        if rep.exception != "none" and i == 2:
            assert mu[2] == mu[1] == 2
        else:
            assert mu[i] > mu[i - 1]
