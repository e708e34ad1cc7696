"""Acceptance criteria, one test per criterion (criterion 1 has a separate timing test).

Run with ``pytest tests/test_acceptance.py``; a verdict line per criterion is
printed in the terminal summary.
"""

import random
import time
from fractions import Fraction

import pytest

from acceptance_log import criterion
from gridcases import grid_cases

from codepth3.appendix import truncated_exterior_ratio, verify_all
from codepth3.classtable import (
    C, H, S, admissible, algebra_bass, algebra_poincare, bass_series, canonical_invariants,
    fg_polys, lift_bass,
)
from codepth3.galg import (
    APPENDIX_FORMULAS, change_basis, check_axioms, exterior, mult_invariants, poincare_duality,
    residue_module, table_algebra,
)
from codepth3.growth import bass_diffs, growth_verdict, lemma_a_route, lemma_b_route, tail_series
from codepth3.koszul import classify, classify_presentation, example_corpus, koszul_homology, monomial_ideal
from codepth3.linalg import Field
from codepth3.powser import dominates, guess_rational, taylor
from codepth3.resolve import bass_oracle, bass_ring_oracle, betti_totals, dg_resolution, poincare_oracle, ring_resolution

F = Field(10007)
TIME_LIMIT_GRID = 120.0
TIME_LIMIT_CORPUS = 60.0


@pytest.fixture(scope="module")
def table_grid():
    """Oracle versus closed form for every grid tuple, with total wall time."""
    t0 = time.perf_counter()
    mismatches = []
    for cls, inv in grid_cases():
        A = table_algebra(cls, inv, field=F)
        P = poincare_oracle(A, None, 10)
        I = [0] * (3 - A.top) + bass_oracle(A, 10)  # pad to the window t^-3 .. t^10
        if P != taylor(algebra_poincare(cls, inv), 0, 10) or I != taylor(algebra_bass(cls, inv), -3, 10):
            mismatches.append((str(cls), inv.sextuple()))
    return mismatches, time.perf_counter() - t0


def test_criterion_1_table_series(table_grid):
    mismatches, elapsed = table_grid
    with criterion("1", f"table algebras vs closed forms, {len(grid_cases())} tuples, exact (grid {elapsed:.0f}s)"):
        assert not mismatches, mismatches


def test_criterion_1_runtime(table_grid):
    _, elapsed = table_grid
    with criterion("1-time", f"grid runtime {elapsed:.0f}s within {TIME_LIMIT_GRID:.0f}s"):
        assert elapsed < TIME_LIMIT_GRID, f"grid took {elapsed:.0f}s"


CORPUS_EXPECTED = {
    "squares3": ("C(3)", (0, 2, 1, 3, 1, 3)),
    "powers3": ("H(3,2)", (0, 3, 2, 3, 2, 2)),
    "powers4": ("H(4,3)", (0, 4, 3, 4, 3, 3)),
    "xpowers2": ("H(2,1)", (1, 2, 1, 2, 1, 1)),
    "xpowers3": ("H(3,2)", (1, 3, 2, 3, 2, 2)),
}


def test_criterion_2_corpus():
    with criterion("2", "corpus sextuples"):
        t0 = time.perf_counter()
        corpus = example_corpus(F)
        for name, (cls, sext) in CORPUS_EXPECTED.items():
            rep, _, _ = classify_presentation(corpus[name])
            assert (str(rep.cls), rep.sextuple) == (cls, sext), (name, str(rep.cls), rep.sextuple)
        rep, _, _ = classify_presentation(corpus["wxwy"])
        assert rep.cls == S and rep.invariants.l == 1
        # derived fixture: Poincare duality plus class G(l+1)
        rep, kh, _ = classify_presentation(corpus["gorenstein5"])
        assert poincare_duality(kh.algebra)[0]
        assert str(rep.cls) == f"G({rep.invariants.l + 1})" and rep.flags["gorenstein"]
        assert time.perf_counter() - t0 < TIME_LIMIT_CORPUS


def test_criterion_3_end_to_end_bass():
    with criterion("3", "ring Bass numbers and symbolic lift"):
        corpus = example_corpus(F)
        R = corpus["wxwy"]
        assert bass_ring_oracle(R, 6).mu == [0, 1, 2, 2, 4, 6, 10]
        A = koszul_homology(R).algebra
        I_A = guess_rational(bass_oracle(A, 16), -A.top)
        assert I_A is not None
        assert lift_bass(I_A, 3) == bass_series(S, canonical_invariants(S, e=3, d=1, h=1, l=1))
        R = corpus["h21"]
        rep, _, dep = classify_presentation(R)
        mu = bass_ring_oracle(R, dep.d + 2).mu
        assert mu[dep.d + 1] == mu[dep.d + 2] == 2


def test_criterion_4_appendix():
    with criterion("4", "appendix catalog vs oracle through degree 8"):
        table = verify_all(8)
        assert set(table) == set(APPENDIX_FORMULAS) and len(table) == 14
        for formula, results in table.items():
            assert len(results) >= 10, formula
            bad = [r.label for r in results if not r.ok]
            assert not bad, (formula, bad)
        assert truncated_exterior_ratio(8) == [3, 0, -3, 0, 1] + [0] * 6


def test_criterion_5_growth_grid():
    with criterion("5", "growth verdicts and exception set"):
        exceptions = set()
        for cls, inv in grid_cases():
            if admissible(cls, inv).gorenstein:
                continue
            rep = growth_verdict(cls, inv, 12)
            mu = rep.mu
            ratios = {i: Fraction(mu[i], mu[i - 1]) for i in range(1, 13)}
            if rep.exception == "none":
                assert rep.gamma_window > 1, (cls, inv)
            else:
                exceptions.add((str(cls), inv.l, inv.n if cls != S else None))
                assert all(r >= 1 for r in ratios.values())
                assert [i for i, r in ratios.items() if r == 1] == [2]
        assert exceptions == {("S", 1, None), ("H(2,1)", 2, 1)}


def test_criterion_6_structure():
    with criterion("6", "structural invariants and basis independence over Q and F_10007"):
        rng = random.Random(2024)
        for field in (Field(0), F):
            for cls, inv in grid_cases():
                A = table_algebra(cls, inv, field=field)
                check_axioms(A)
                mi = mult_invariants(A)
                if A.top == 3:
                    assert mi.m == mi.l + mi.n
                    assert sum((-1) ** i * d for i, d in enumerate(A.dims)) == 0
                base = classify(A).cls
                for _ in range(5):
                    B = change_basis(A, rng)
                    assert mult_invariants(B).as_tuple() == mi.as_tuple()
                    assert classify(B).cls == base, (cls, inv)
        for name, R in example_corpus(F).items():
            check_axioms(koszul_homology(R).algebra)


def test_criterion_7_mode_sentinel():
    with criterion("7", "dg and ring resolutions differ as they must"):
        E = exterior(F, [1])
        assert dg_resolution(E, residue_module(E), 8).ranks(0, 8) == [1, 0, 1, 0, 1, 0, 1, 0, 1]
        R = monomial_ideal(1, [(2,)], F)
        assert betti_totals(ring_resolution(R, imax=8), 8) == [1] * 9


def test_criterion_8_three_routes():
    with criterion("8", "difference series agree with both comparison routes"):
        N = 12
        for cls, inv in grid_cases():
            if cls == C(0):
                continue
            f, g = fg_polys(cls, inv)
            diffs = bass_diffs(bass_series(cls, inv), inv.d, N)
            tail = tail_series(diffs)
            _, exact, bound = lemma_a_route(f, g, inv.l, N)
            assert [exact[i] for i in range(3)] == diffs[:3], (cls, inv)
            if bound is not None:
                assert dominates(tail, bound, N), (cls, inv)
            for s in range(inv.m - inv.p + 1):
                _, exact, bound = lemma_b_route(f, inv.l, N, s, inv.m - inv.p)
                assert [exact[i] for i in range(3)] == diffs[:3], (cls, inv, s)
                if bound is not None:
                    assert dominates(tail, bound, N), (cls, inv, s)
