import pytest
from hypothesis import given, settings, strategies as st

from codepth3.classtable import C, S, TT, canonical_invariants, poincare_series
from codepth3.galg import exterior, ground, null_algebra, residue_module, table_algebra
from codepth3.koszul import example_corpus, monomial_ideal
from codepth3.linalg import Field
from codepth3.powser import RationalSeries, T, taylor
from codepth3.resolve import (
    bass_oracle, bass_ring_oracle, betti_totals, dg_resolution, explicit_resolution,
    poincare_oracle, ring_resolution,
)

F = Field(10007)


def test_dg_exterior_one_generator():
    B = exterior(F, [1])
    assert dg_resolution(B, residue_module(B), 8).ranks(0, 8) == [1, 0, 1, 0, 1, 0, 1, 0, 1]


def test_dg_null_algebra():
    B = null_algebra(F, {1: 2})
    assert dg_resolution(B, residue_module(B), 6).ranks(0, 6) == [1, 0, 2, 0, 4, 0, 8]


def test_dg_ground_field():
    B = ground(F)
    assert dg_resolution(B, residue_module(B), 5).ranks(0, 5) == [1, 0, 0, 0, 0, 0]


def test_bass_oracle_exterior():
    assert bass_oracle(exterior(F, [1, 1]), 6) == [1] + [0] * 8


def test_bass_oracle_null():
    got = bass_oracle(null_algebra(F, {1: 2}), 4)
    assert got == taylor(RationalSeries(2 * T**-1 - T, 1 - 2 * T**2), -1, 4)


def test_poincare_oracle_class_t():
    A = table_algebra(TT, canonical_invariants(TT, e=3, d=0, h=1, l=2, n=2), check=False)
    want = RationalSeries(1, (1 + T) * (1 - T - 2 * T**2 + T**3 - T**5))
    assert poincare_oracle(A, None, 8) == taylor(want, 0, 8)


def test_ring_dual_numbers():
    R = monomial_ideal(1, [(2,)], F)
    assert betti_totals(ring_resolution(R, imax=6), 6) == [1] * 7


def test_ring_squares():
    R = example_corpus(F)["squares3"]
    tab = ring_resolution(R, imax=4)
    P = poincare_series(C(3), canonical_invariants(C(3), e=3, d=0))
    assert betti_totals(tab, 4) == taylor(P, 0, 4)
    assert all(tab.exact.values())


def test_ring_wxwy_betti():
    R = example_corpus(F)["wxwy"]
    tab = ring_resolution(R, imax=5)
    assert betti_totals(tab, 5) == taylor(RationalSeries((1 + T) ** 2, 1 - T - T**2), 0, 5)
    assert betti_totals(tab, 3) == [1, 3, 5, 8]


def test_ring_betti_linear_strand_bound():
    R = example_corpus(F)["h21"]
    tab = ring_resolution(R, imax=4)
    assert all(j >= i for (i, j) in tab.entries)


def test_bass_ring_wxwy():
    R = example_corpus(F)["wxwy"]
    res = bass_ring_oracle(R, 6)
    assert res.mu == [0, 1, 2, 2, 4, 6, 10]
    inv = canonical_invariants(S, e=3, d=1, h=1, l=1)
    from codepth3.classtable import bass_series
    assert res.mu == taylor(bass_series(S, inv), 0, 6)


def test_bass_ring_squares():
    res = bass_ring_oracle(example_corpus(F)["squares3"], 4)
    assert res.mu == [1, 0, 0, 0, 0]
    assert all(res.exact)


def test_bass_ring_field():
    R = monomial_ideal(0, [], F)
    assert bass_ring_oracle(R, 2).mu == [1, 0, 0]


def _dim(B, u):
    return B.dims[u] if 0 <= u < len(B.dims) else 0


algebras = st.sampled_from([
    exterior(F, [1]), exterior(F, [1, 1]), null_algebra(F, {1: 2}),
    null_algebra(F, {1: 1, 2: 1}), table_algebra(S, canonical_invariants(S, e=2, d=0, h=1, l=2)),
])


@settings(max_examples=10, deadline=None)
@given(algebras)
def test_resolution_minimal_and_exact(B):
    bound = 8
    levels, minimal = explicit_resolution(B, residue_module(B), bound)
    assert minimal
    for lv in levels[1:]:
        for image in lv["diff"].values():
            assert all(i > 0 for (i, _, _, _) in image)
    # Euler characteristic of the resolution in each internal degree
    for u in range(bound // 2 + 1):
        chi = sum((-1) ** s * _dim(B, u - gu) for s, lv in enumerate(levels) for gu, _ in lv["gens"])
        assert chi == (1 if u == 0 else 0)
