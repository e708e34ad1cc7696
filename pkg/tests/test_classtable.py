import pytest
from hypothesis import given, strategies as st

from codepth3.classtable import (
    BB, C, G, H, S, TT, ClassId, EquivalenceViolation, InadmissibleInvariants, RingInvariants,
    admissible, algebra_bass, algebra_poincare, bass_series, canonical_invariants,
    cor_class_report, cor_conditions, fg_polys, lift_bass, lift_poincare, poincare_series,
)
from codepth3.powser import LaurentPoly, RationalSeries, T, taylor

from gridcases import grid_cases


def poly(*cs):
    return LaurentPoly.from_list(cs)


def test_parse_and_print():
    assert ClassId.parse("H(3,2)") == H(3, 2)
    assert str(G(5)) == "G(5)"
    assert ClassId.parse("S") == S
    with pytest.raises(ValueError):
        ClassId.parse("Q")
    with pytest.raises(ValueError):
        G(1)


def test_t_row_needs_large_l():
    inv = RingInvariants.of(e=3, d=0, h=0, l=2, n=2, p=3, q=0, r=0)
    v = admissible(TT, inv)
    assert not v.ok
    assert any(name == "l >= 3-h" for name, _ in v.violations)


def test_h32_admissible():
    inv = RingInvariants.of(e=3, d=0, h=0, l=3, n=2, p=3, q=2, r=2)
    assert admissible(H(3, 2), inv).ok


def test_gorenstein_g5():
    inv = RingInvariants.of(e=3, d=0, h=0, l=4, n=1, p=0, q=1, r=5)
    v = admissible(G(5), inv)
    assert v.ok and v.gorenstein


def test_fg_rows():
    f, g = fg_polys(S, canonical_invariants(S, e=2, d=0, h=0, l=2))
    assert f == poly(2, 1, -1) and g == poly(1, -1, -2)
    f, g = fg_polys(TT, canonical_invariants(TT, e=3, d=0, h=1, l=2, n=2), force=True)
    assert f == poly(2, 2, -2, -1, 1)
    assert g == poly(1, -1, -2, 1, 0, -1)
    f, g = fg_polys(C(3), canonical_invariants(C(3), e=3, d=0))
    assert f == g == (1 - T) ** 3 * (1 + T) ** 2


def test_c0_has_no_fg():
    with pytest.raises(ValueError):
        fg_polys(C(0), canonical_invariants(C(0), e=0, d=0))


def test_complete_intersection_bass_is_monomial():
    for c in range(4):
        for d in range(3):
            inv = canonical_invariants(C(c), e=c + d, d=d)
            assert bass_series(C(c), inv) == RationalSeries(T**d)


def test_lifts():
    assert lift_bass(RationalSeries(T**-1), 1) == 1
    assert lift_poincare(RationalSeries(1), 4) == RationalSeries((1 + T) ** 4)


def test_cor_conditions():
    inv = canonical_invariants(H(2, 1), e=3, d=0, h=1, l=2, n=1)
    assert all(cor_conditions(inv, H(2, 1)).values())
    inv = canonical_invariants(TT, e=3, d=0, h=0, l=3, n=2)
    assert not any(cor_conditions(inv, TT).values())
    inv = canonical_invariants(H(3, 2), e=3, d=0, h=0, l=3, n=2)
    assert all(cor_class_report(inv, H(3, 2)).values())


def test_cor_mixed_raises():
    # l = q+1 holds but the H(p,q) condition does not
    inv = RingInvariants.of(e=3, d=0, h=0, l=2, n=3, p=1, q=1, r=1)
    with pytest.raises(EquivalenceViolation):
        cor_class_report(inv, H(1, 1))


def test_inadmissible_series_raises():
    inv = canonical_invariants(S, e=3, d=1, h=0, l=1)
    with pytest.raises(InadmissibleInvariants):
        bass_series(S, inv)


@pytest.mark.parametrize("case", grid_cases(), ids=lambda c: f"{c[0]}-{c[1].sextuple()}")
def test_lift_identities(case):
    cls, inv = case
    for extra in (0, 2):
        e, d = inv.e + extra, inv.d + extra
        ring = canonical_invariants(cls, e=e, d=d, h=inv.h, l=inv.l, n=inv.n)
        if cls.kind == "C":
            ring = canonical_invariants(cls, e=e, d=d)
        assert lift_poincare(algebra_poincare(cls, ring), e) == poincare_series(cls, ring)
        assert lift_bass(algebra_bass(cls, ring), e) == bass_series(cls, ring)


@given(st.sampled_from(grid_cases()))
def test_bass_starts_at_depth(case):
    cls, inv = case
    I = bass_series(cls, inv)
    assert I.order() == inv.d
    assert all(x >= 0 for x in taylor(I, inv.d, inv.d + 10))
    assert taylor(poincare_series(cls, inv), 0, 0) == [1]
