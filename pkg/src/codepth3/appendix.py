"""Fixture suite pairing each closed-form series of the catalog with the
resolution oracle on concrete algebras and modules.

Every fixture computes the ingredients of a closed form from oracle data
(or from dimensions), assembles it with ``appendix_series`` and compares
the result with an oracle computation of the same series, coefficient by
coefficient through a fixed degree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .galg import (
    APPENDIX_FORMULAS, appendix_series, augmentation_ideal, dual, exterior,
    null_algebra, quotient_module, regular_module, residue_module, suspend, tensor,
    tensor_modules, trivial_ext, trivial_module, truncate,
)
from .linalg import Field
from .powser import LaurentPoly, from_coefficients, taylor
from .resolve import (
    _decomposables, _from_module, bass_oracle, ext_oracle, module_bass_oracle,
    poincare_oracle, syzygy_poincare,
)


@dataclass
class FixtureResult:
    formula: str
    label: str
    lo: int
    closed: list
    oracle: list

    @property
    def ok(self):
        return self.closed == self.oracle

    def as_dict(self):
        return {"formula": self.formula, "fixture": self.label, "pass": self.ok,
                "lo": self.lo, "closed": self.closed, "oracle": self.oracle}


def _series(lo, coeffs):
    return from_coefficients(coeffs, lo)


def _poincare(B, M=None, N=8):
    if M is None:
        return 0, poincare_oracle(B, None, N)
    return min(M.dims), poincare_oracle(B, M, N)


def _bass(B, N=8):
    return -B.top, bass_oracle(B, N)


def _compare(formula, label, closed, lo, oracle, N):
    lo = min(lo, oracle[0])
    if not closed.is_zero():
        lo = min(lo, closed.order())
    want = [0] * (N + 1 - lo)
    for k, x in enumerate(oracle[1]):
        want[oracle[0] + k - lo] = x
    return FixtureResult(formula, label, lo, taylor(closed, lo, N), want)


def _hw(wdims):
    return LaurentPoly(dict(wdims))


def _with_trivial(C, wdims):
    return trivial_ext(C, trivial_module(C, wdims))


def _small_algebras(F):
    """A spread of small algebras with labels."""
    return [
        ("ext[1]", exterior(F, [1])),
        ("ext[1,1]", exterior(F, [1, 1])),
        ("ext[1,3]", exterior(F, [1, 3])),
        ("null{1:2}", null_algebra(F, {1: 2})),
        ("null{1:1,2:1}", null_algebra(F, {1: 1, 2: 1})),
        ("trunc(ext[1,1,1],3)", truncate(exterior(F, [1, 1, 1]), 3)),
        ("null{2:2}", null_algebra(F, {2: 2})),
        ("ext[1]xnull{1:1}", tensor(exterior(F, [1]), null_algebra(F, {1: 1}))),
        ("ext[1,1]xW{1:1}", _with_trivial(exterior(F, [1, 1]), {1: 1})),
        ("null{1:3}", null_algebra(F, {1: 3})),
    ]


def _modules(B):
    mods = [("k", residue_module(B)), ("B", regular_module(B))]
    if B.top >= 1:
        mods.append(("B+", augmentation_ideal(B)))
    if B.top >= 2:
        mods.append(("B/B>=2", quotient_module(B, 2)))
    return mods


# ---------------------------------------------------------------- per formula

def _fx_shift(F, N):
    out = []
    shifts = [1, 2, 3, -1, 2, 1, 3, -2, 1, 2]
    for (name, B), s in zip(_small_algebras(F), shifts):
        label_m, M = _modules(B)[1 if s % 2 else 0]
        lo, P = _poincare(B, M, N + 3)
        closed = appendix_series("shift", P=_series(lo, P), s=s)
        out.append(_compare("shift", f"{name}, M={label_m}, s={s}", closed, lo + s,
                            _poincare(B, suspend(M, s), N), N))
    return out


def _fx_dual(F, N):
    out = []
    for name, B in _small_algebras(F):
        mods = _modules(B)
        label_m, M = mods[len(name) % len(mods)]
        Mstar = dual(M, 0)
        lo = min(Mstar.dims)
        ext = ext_oracle(B, M, lo, N)
        closed = appendix_series("dual", I=_series(lo, ext))
        out.append(_compare("dual", f"{name}, N={label_m}", closed, lo, _poincare(B, Mstar, N), N))
    return out


def _generator_hilbert(B, M):
    """Hilbert series of M / B_+ M."""
    X = _from_module(B, M, max(M.dims))
    return LaurentPoly({u: d - len(_decomposables(B, X, u)) for u, d in M.dims.items()})


def _fx_maximalP(F, N):
    out = []
    for name, B in _small_algebras(F):
        mods = _modules(B)
        label_m, M = mods[len(name) % len(mods)]
        lo, P = _poincare(B, M, N + 1)
        closed = appendix_series("maximalP", P=_series(lo, P), H=_generator_hilbert(B, M))
        out.append(_compare("maximalP", f"{name}, M={label_m}", closed, lo, syzygy_poincare(B, M, N), N))
    return out


def _fx_kunneth(F, N):
    pairs = [
        (("ext[1]", exterior(F, [1])), ("ext[1]", exterior(F, [1])), "k", "k"),
        (("ext[1]", exterior(F, [1])), ("null{1:2}", null_algebra(F, {1: 2})), "k", "k"),
        (("null{1:1}", null_algebra(F, {1: 1})), ("null{2:1}", null_algebra(F, {2: 1})), "k", "k"),
        (("ext[1,1]", exterior(F, [1, 1])), ("null{1:1}", null_algebra(F, {1: 1})), "B", "k"),
        (("null{1:2}", null_algebra(F, {1: 2})), ("ext[1]", exterior(F, [1])), "B+", "k"),
        (("ext[3]", exterior(F, [3])), ("null{1:1}", null_algebra(F, {1: 1})), "k", "B"),
        (("null{1:1,2:1}", null_algebra(F, {1: 1, 2: 1})), ("ext[1]", exterior(F, [1])), "k", "B+"),
        (("ext[1]", exterior(F, [1])), ("ext[1,1]", exterior(F, [1, 1])), "B", "B"),
        (("null{1:3}", null_algebra(F, {1: 3})), ("null{1:1}", null_algebra(F, {1: 1})), "B+", "B+"),
        (("trunc(ext[1,1],2)", truncate(exterior(F, [1, 1]), 2)), ("ext[1]", exterior(F, [1])), "B", "k"),
    ]
    out = []
    for (nc, Cc), (nd, Dd), mt, mu in pairs:
        T_ = dict(_modules(Cc))[mt]
        U = dict(_modules(Dd))[mu]
        Bt = tensor(Cc, Dd)
        M = tensor_modules(T_, U, Bt)
        lo1, P1 = _poincare(Cc, T_, N)
        lo2, P2 = _poincare(Dd, U, N)
        closed = appendix_series("kunneth", P1=_series(lo1, P1), P2=_series(lo2, P2))
        out.append(_compare("kunneth", f"{nc}x{nd}, {mt}x{mu}", closed, lo1 + lo2, _poincare(Bt, M, N), N))
    return out


_WDIMS = [
    {1: 1}, {1: 2}, {1: 3}, {2: 1}, {1: 1, 2: 1}, {1: 2, 2: 1},
    {1: 1, 3: 1}, {2: 2}, {1: 1, 2: 1, 3: 1}, {3: 2}, {1: 3, 2: 2},
]


def _fx_null(F, N, which):
    out = []
    for wd in _WDIMS:
        B = null_algebra(F, wd)
        closed = appendix_series(which, HW=_hw(wd))
        oracle = _poincare(B, None, N) if which == "nullP" else _bass(B, N)
        out.append(_compare(which, f"W={wd}", closed, oracle[0], oracle, N))
    return out


_EXT_DEGREES = [[1], [3], [5], [1, 1], [1, 3], [3, 3], [1, 5], [1, 1, 1], [1, 1, 3], [1, 3, 3]]


def _fx_exteriorP(F, N):
    out = []
    for degs in _EXT_DEGREES:
        closed = appendix_series("exteriorP", degrees=degs)
        out.append(_compare("exteriorP", f"degrees={degs}", closed, 0,
                            _poincare(exterior(F, degs), None, N), N))
    return out


def _pd_algebras(F):
    out = [(f"ext{d}", exterior(F, d)) for d in _EXT_DEGREES[:7]]
    for r in (1, 2, 3):
        C = null_algebra(F, {1: r})
        out.append((f"null{{1:{r}}} x dual(3)", trivial_ext(C, dual(regular_module(C), 3))))
    return out


def _fx_exteriorI(F, N):
    out = []
    for name, B in _pd_algebras(F):
        closed = appendix_series("exteriorI", B=B)
        out.append(_compare("exteriorI", name, closed, -B.top, _bass(B, N), N))
    return out


def _fx_trivialP(F, N):
    specs = []
    E1, E2, N1 = exterior(F, [1]), exterior(F, [1, 1]), null_algebra(F, {1: 1})
    specs.append(("ext[1] x W{1:1}", E1, trivial_module(E1, {1: 1})))
    specs.append(("ext[1] x W{2:2}", E1, trivial_module(E1, {2: 2})))
    specs.append(("ext[1,1] x W{1:1}", E2, trivial_module(E2, {1: 1})))
    specs.append(("ext[1,1] x S(C/C>=2)", E2, suspend(quotient_module(E2, 2), 1)))
    specs.append(("ext[1,1] x S(C+)", E2, suspend(augmentation_ideal(E2), 1)))
    specs.append(("null{1:1} x dual(C,3)", N1, dual(regular_module(N1), 3)))
    N2 = null_algebra(F, {1: 2})
    specs.append(("null{1:2} x dual(C,3)", N2, dual(regular_module(N2), 3)))
    specs.append(("ext[1] x S^2 C", E1, suspend(regular_module(E1), 2)))
    specs.append(("null{1:1} x W{1:1,2:1}", N1, trivial_module(N1, {1: 1, 2: 1})))
    E3 = exterior(F, [3])
    specs.append(("ext[3] x S C", E3, suspend(regular_module(E3), 1)))
    out = []
    for label, C, W in specs:
        B = trivial_ext(C, W)
        loC, PC = _poincare(C, None, N)
        loW, PCW = _poincare(C, W, N)
        closed = appendix_series("trivialP", PC=_series(loC, PC), PCW=_series(loW, PCW))
        out.append(_compare("trivialP", label, closed, 0, _poincare(B, None, N), N))
    return out


_NULL2 = [({1: 1}, 2), ({1: 2}, 2), ({1: 3}, 2), ({1: 1}, 3), ({1: 2}, 3), ({1: 3}, 3),
          ({2: 1}, 3), ({1: 1, 2: 1}, 3), ({2: 2}, 3), ({1: 2, 2: 1}, 3)]


def _fx_null2(F, N, which):
    out = []
    for wd, s in _NULL2:
        C = null_algebra(F, wd)
        B = trivial_ext(C, dual(regular_module(C), s))
        closed = appendix_series(which, HW=_hw(wd), s=s)
        oracle = _poincare(B, None, N) if which == "null2P" else _bass(B, N)
        out.append(_compare(which, f"W={wd}, s={s}", closed, oracle[0], oracle, N))
    return out


def _fx_syzygyC(F, N):
    out = []
    for name, B in _small_algebras(F):
        Iplus = module_bass_oracle(B, augmentation_ideal(B), N + 1)
        lo, P = _poincare(B, None, N)
        closed = appendix_series("syzygyC", I_plus=_series(*Iplus), P=_series(lo, P))
        out.append(_compare("syzygyC", name, closed, -B.top, _bass(B, N), N))
    return out


def _fx_trivialI(F, N):
    specs = [
        ("ext[1]", exterior(F, [1]), {1: 1}),
        ("ext[1]", exterior(F, [1]), {2: 1}),
        ("ext[1,1]", exterior(F, [1, 1]), {1: 1}),
        ("ext[1,1]", exterior(F, [1, 1]), {1: 2, 2: 1}),
        ("ext[1,3]", exterior(F, [1, 3]), {1: 1}),
        ("null{1:1}", null_algebra(F, {1: 1}), {1: 1}),
        ("null{1:2}", null_algebra(F, {1: 2}), {2: 1}),
        ("ext[3]", exterior(F, [3]), {1: 2}),
        ("trunc(ext[1,1,1],3)", truncate(exterior(F, [1, 1, 1]), 3), {1: 1}),
        ("null{1:1,2:1}", null_algebra(F, {1: 1, 2: 1}), {3: 1}),
    ]
    out = []
    for name, C, wd in specs:
        W = trivial_module(C, wd)
        B = trivial_ext(C, W)
        margin = C.top + 2
        IC = _bass(C, N + margin)
        PC = _poincare(C, None, N + margin)
        PB = _poincare(B, None, N + margin)
        closed = appendix_series("trivialI", IC=_series(*IC), PC=_series(*PC), PB=_series(*PB),
                                 HW=_hw(wd), C=C, W=W)
        out.append(_compare("trivialI", f"{name} x W{wd}", closed, -B.top, _bass(B, N), N))
    return out


def _fx_truncatedI(F, N):
    out = []
    for name, E in _pd_algebras(F):
        s = E.top
        B = truncate(E, s)
        if B.top == 0:
            continue
        lo, P = _poincare(B, None, N + s + 2)
        closed = appendix_series("truncatedI", P=_series(lo, P), s=s, E=E)
        out.append(_compare("truncatedI", f"{name}/E>={s}", closed, -B.top, _bass(B, N), N))
    extra = [(f"ext{d}", exterior(F, d)) for d in ([1, 1, 3], [1, 3, 3])]
    for r, s in ((2, 4), (4, 3), (1, 4)):
        G = null_algebra(F, {1: r} if s == 3 else {1: r, 2: 1})
        extra.append((f"null{{1:{r}}} x dual({s})", trivial_ext(G, dual(regular_module(G), s))))
    for name, E in extra:
        s = E.top
        B = truncate(E, s)
        lo, P = _poincare(B, None, N + s + 2)
        closed = appendix_series("truncatedI", P=_series(lo, P), s=s, E=E)
        out.append(_compare("truncatedI", f"{name}/E>={s}", closed, -B.top, _bass(B, N), N))
    return out


_BUILDERS = {
    "shift": _fx_shift,
    "dual": _fx_dual,
    "maximalP": _fx_maximalP,
    "kunneth": _fx_kunneth,
    "nullP": lambda F, N: _fx_null(F, N, "nullP"),
    "nullI": lambda F, N: _fx_null(F, N, "nullI"),
    "exteriorP": _fx_exteriorP,
    "exteriorI": _fx_exteriorI,
    "trivialP": _fx_trivialP,
    "null2P": lambda F, N: _fx_null2(F, N, "null2P"),
    "null2I": lambda F, N: _fx_null2(F, N, "null2I"),
    "syzygyC": _fx_syzygyC,
    "trivialI": _fx_trivialI,
    "truncatedI": _fx_truncatedI,
}
assert tuple(_BUILDERS) == APPENDIX_FORMULAS


def verify_formula(formula: str, degree: int = 8, field: Field | None = None) -> list:
    if formula not in _BUILDERS:
        raise ValueError(f"unknown formula {formula!r}; choose from {', '.join(APPENDIX_FORMULAS)}")
    return _BUILDERS[formula](field or Field(10007), degree)


def verify_all(degree: int = 8, field: Field | None = None) -> dict:
    return {f: verify_formula(f, degree, field) for f in APPENDIX_FORMULAS}


def truncated_exterior_ratio(degree: int = 8, field: Field | None = None) -> list:
    """Oracle coefficients of I_B / P_B for B = (exterior on three degree-1 classes) / (degree >= 3),
    on the window t^-2 .. t^degree."""
    F = field or Field(10007)
    B = truncate(exterior(F, [1, 1, 1]), 3)
    I = _series(-B.top, bass_oracle(B, degree + 2))
    P = _series(0, poincare_oracle(B, None, degree + 2))
    return taylor(I / P, -2, degree)
