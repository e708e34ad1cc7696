import random

import pytest
from hypothesis import given, settings, strategies as st

from codepth3.classtable import BB, C, G, H, TT, canonical_invariants
from codepth3.galg import (
    AxiomViolation, GradedAlgebra, HypothesisViolation, appendix_series, augmentation_ideal,
    change_basis, check_axioms, dual, exterior, from_dump, ground, mult_invariants, null_algebra,
    poincare_duality, quotient_module, regular_module, suspend, table_algebra, tensor, trivial_ext,
    truncate,
)
from codepth3.linalg import Field
from codepth3.powser import RationalSeries, T

F = Field(10007)
Q = Field(0)


def test_exterior_dims():
    assert exterior(F, [1, 1, 1]).dims == (1, 3, 3, 1)
    E1 = exterior(F, [1])
    assert E1.dims == (1, 1)
    assert poincare_duality(E1) == (True, 1)


def test_trivial_extensions():
    assert null_algebra(F, {1: 1}).dims == (1, 1)
    C2 = exterior(F, [1, 1])
    assert trivial_ext(C2, suspend(quotient_module(C2, 2), 1)).dims == (1, 3, 3)
    # Sigma C_+ sits in degrees 2, 3
    assert trivial_ext(C2, suspend(augmentation_ideal(C2), 1)).dims == (1, 2, 3, 1)


def test_trivial_ext_needs_same_algebra():
    C2 = exterior(F, [1, 1])
    with pytest.raises(ValueError):
        trivial_ext(exterior(F, [1, 1]), suspend(quotient_module(C2, 2), 1))


def test_tensor_dims():
    H30 = tensor(null_algebra(F, {1: 3}), null_algebra(F, {1: 1}))
    assert H30.dims == (1, 4, 3)
    D = exterior(F, [1, 1])
    assert tensor(ground(F), D).dims == D.dims
    p, q = 2, 1
    Hpq = tensor(null_algebra(F, {1: p, 2: q}), null_algebra(F, {1: 1}))
    assert Hpq.dims == (1, p + 1, p + q, q)


def test_truncate():
    E = exterior(F, [1, 1, 1])
    assert truncate(E, 3).dims == (1, 3, 3)
    assert truncate(E, 1).dims == (1,)
    assert truncate(E, 4).dims == E.dims


def test_table_algebra_dims():
    assert table_algebra(TT, canonical_invariants(TT, e=3, d=0, h=1, l=3, n=2)).dims == (1, 4, 5, 2)
    assert table_algebra(C(3), canonical_invariants(C(3), e=3, d=0)).dims == (1, 3, 3, 1)


def test_mult_invariants_rows():
    assert mult_invariants(exterior(F, [1, 1, 1])).as_tuple() == (2, 3, 1, 3, 1, 3)
    A = table_algebra(TT, canonical_invariants(TT, e=3, d=0, h=1, l=2, n=2))
    mi = mult_invariants(A)
    assert (mi.p, mi.q, mi.r) == (3, 0, 0)
    N = null_algebra(F, {1: 2, 2: 1, 3: 2})
    mi = mult_invariants(N)
    assert (mi.p, mi.q, mi.r) == (0, 0, 0)


def test_poincare_duality():
    assert poincare_duality(exterior(F, [1, 1, 1])) == (True, 3)
    C = null_algebra(F, {1: 2})
    B = trivial_ext(C, dual(regular_module(C), 3))
    assert poincare_duality(B) == (True, 3)
    assert poincare_duality(null_algebra(F, {1: 2}))[0] is False


def test_axioms_catch_bad_square():
    # an odd element squaring to a nonzero class
    A = GradedAlgebra(F, [1, 1, 1], {(1, 1): [[{0: 1}]]}, graded_commutative=False)
    with pytest.raises(AxiomViolation):
        check_axioms(GradedAlgebra(F, [1, 1, 1], {(1, 1): [[{0: 1}]]}))
    assert A.dims == (1, 1, 1)


def test_dump_round_trip():
    A = exterior(Q, [1, 1])
    data = {"field": 0, "dims": list(A.dims), "mult": [
        (1, 0, 1, 1, 0, (1, 1)), (1, 1, 1, 0, 0, (-1, 1))]}
    B = from_dump(data)
    assert mult_invariants(B).as_tuple() == mult_invariants(A).as_tuple()


def test_null_series_closed_forms():
    assert appendix_series("nullP", HW=2 * T + T**2) == RationalSeries(1, 1 - 2 * T**2 - T**3)
    assert appendix_series("exteriorI", B=exterior(F, [1, 1])) == RationalSeries(T**-2)
    assert appendix_series("nullI", HW=T) == RationalSeries(T**-1 - T, 1 - T**2)


def test_null2_needs_large_shift():
    with pytest.raises(HypothesisViolation):
        appendix_series("null2P", HW=T + T**2, s=2)


def test_exterior_needs_odd_degrees():
    with pytest.raises(HypothesisViolation):
        appendix_series("exteriorP", degrees=[2])


rows = st.sampled_from([
    (C(3), dict(e=3, d=0)),
    (TT, dict(e=3, d=0, h=1, l=3, n=2)),
    (BB, dict(e=3, d=0, h=0, l=4, n=2)),
    (G(2), dict(e=3, d=0, h=1, l=3, n=1)),
    (H(3, 0), dict(e=3, d=0, h=0, l=4, n=3)),
    (H(2, 1), dict(e=3, d=0, h=1, l=2, n=1)),
])


@settings(max_examples=25, deadline=None)
@given(rows, st.integers(0, 2**16), st.sampled_from([Q, F]))
def test_base_change_keeps_invariants(row, seed, field):
    cls, kw = row
    A = table_algebra(cls, canonical_invariants(cls, **kw), field=field)
    B = change_basis(A, random.Random(seed))
    check_axioms(B)
    assert mult_invariants(B).as_tuple() == mult_invariants(A).as_tuple()
    assert poincare_duality(B)[0] == poincare_duality(A)[0]


@given(st.dictionaries(st.integers(1, 3), st.integers(1, 3), min_size=1))
def test_null_algebra_has_no_products(wdims):
    N = null_algebra(F, wdims)
    check_axioms(N)
    mi = mult_invariants(N)
    assert (mi.p, mi.q, mi.r) == (0, 0, 0)
