"""Graded presentations k[x_1..x_e]/I, their Koszul homology algebra A and
the class decision for codepth <= 3.

Everything is degreewise linear algebra on monomial bases; no Groebner
bases are needed because every input is homogeneous.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .classtable import BB, TT, C, ClassId, G, H, RingInvariants, S, admissible
from .galg import GradedAlgebra, mult_invariants, poincare_duality
from .growth import exception_kind
from .linalg import Echelon, Field, axpy, echelon_of, kernel, rank


class PresentationError(ValueError):
    pass


class InternalInconsistency(AssertionError):
    pass


class Unclassifiable(ValueError):
    def __init__(self, msg, invariants=None):
        super().__init__(msg)
        self.invariants = invariants


class PreconditionViolation(ValueError):
    pass


def monomials(e: int, j: int) -> list:
    """Exponent vectors of degree j in e variables, in a fixed order."""
    out = []
    for combo in combinations_with_replacement(range(e), j):
        v = [0] * e
        for k in combo:
            v[k] += 1
        out.append(tuple(v))
    out.sort()
    return out


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


class DegreePiece:
    """R_j: all monomials of degree j, the span of I_j, and the standard monomials."""

    def __init__(self, R: "RingPresentation", j: int):
        self.degree = j
        self.mons = monomials(R.e, j)
        self.index = {m: k for k, m in enumerate(self.mons)}
        F = R.field
        if R.is_monomial:
            lead = [g[0][1] for g in R.generators]
            self.ideal = None
            self.std = [k for k, m in enumerate(self.mons) if not any(_divides(g, m) for g in lead)]
        else:
            ech = Echelon(F)
            for gen in R.generators:
                dg = sum(gen[0][1])
                if dg > j:
                    continue
                for m in monomials(R.e, j - dg):
                    v = {}
                    for c, ex in gen:
                        k = self.index[tuple(a + b for a, b in zip(ex, m))]
                        v[k] = F.norm(v.get(k, 0) + c)
                    ech.add({k: c for k, c in v.items() if c})
            self.ideal = ech
            self.std = [k for k in range(len(self.mons)) if k not in ech]
        self.stdpos = {k: n for n, k in enumerate(self.std)}

    @property
    def dim(self):
        return len(self.std)

    def basis(self):
        return [self.mons[k] for k in self.std]

    def normal_form(self, v: dict) -> dict:
        """Coordinates on the standard monomials of a vector over all monomials."""
        if self.ideal is not None:
            v, _ = self.ideal.reduce(v)
        return {self.stdpos[k]: c for k, c in v.items() if k in self.stdpos}


def _clean_terms(F, e, terms):
    acc = {}
    for c, ex in terms:
        ex = tuple(int(x) for x in ex)
        if len(ex) != e or min(ex, default=0) < 0:
            raise PresentationError(f"exponent vector {ex} does not fit {e} variables")
        acc[ex] = F.norm(acc.get(ex, 0) + F(c))
    out = [(c, ex) for ex, c in sorted(acc.items(), reverse=True) if c]
    if not out:
        raise PresentationError("zero generator")
    degs = {sum(ex) for _, ex in out}
    if len(degs) != 1:
        raise PresentationError(f"generator is not homogeneous (degrees {sorted(degs)})")
    if degs.pop() < 2:
        raise PresentationError("generators must have degree >= 2")
    return tuple(out)


class RingPresentation:
    """k[x_1..x_e]/I with I generated by homogeneous polynomials of degree >= 2.

    A generator is a list of (coefficient, exponent vector) terms.  ``dim`` is
    an optional Krull dimension annotation.
    """

    def __init__(self, field: Field, e: int, generators, dim=None, name=""):
        if e < 0:
            raise PresentationError("number of variables must be >= 0")
        self.field = field
        self.e = e
        self.generators = tuple(_clean_terms(field, e, g) for g in generators)
        self.dim_annotation = dim
        self.name = name
        self._pieces = {}
        self._nf = {}
        self._algebras = {}

    def __repr__(self):
        return f"RingPresentation({self.name or '?'}, e={self.e}, {len(self.generators)} gens)"

    @property
    def is_monomial(self):
        return all(len(g) == 1 for g in self.generators)

    @property
    def max_degree(self):
        return max((sum(g[0][1]) for g in self.generators), default=0)

    def gen_degrees(self):
        return [sum(g[0][1]) for g in self.generators]

    def piece(self, j: int) -> DegreePiece:
        pc = self._pieces.get(j)
        if pc is None:
            pc = self._pieces[j] = DegreePiece(self, j)
        return pc

    def hilbert_function(self, D: int) -> list:
        return [self.piece(j).dim for j in range(D + 1)]

    def top_degree(self, D: int):
        """Top nonzero degree of R if R_j vanishes for some j <= D, else None."""
        for j in range(D + 1):
            if self.piece(j).dim == 0:
                return j - 1
        return None

    def nf_monomial(self, ex) -> dict:
        """Normal form of a monomial as coordinates in R_{deg}."""
        v = self._nf.get(ex)
        if v is None:
            pc = self.piece(sum(ex))
            v = self._nf[ex] = pc.normal_form({pc.index[ex]: self.field(1)})
        return v

    def truncated_algebra(self, D: int) -> GradedAlgebra:
        """R / R_{>D} as a GradedAlgebra (commutative, no signs)."""
        A = self._algebras.get(D)
        if A is not None:
            return A
        bases = [self.piece(j).basis() for j in range(D + 1)]
        dims = [len(b) for b in bases]
        mult = {}
        for i in range(1, D + 1):
            for j in range(1, D + 1 - i):
                if not dims[i] or not dims[j]:
                    continue
                mult[i, j] = [[self.nf_monomial(tuple(x + y for x, y in zip(a, b))) for b in bases[j]]
                              for a in bases[i]]
        A = GradedAlgebra(self.field, dims, mult, graded_commutative=False)
        self._algebras[D] = A
        return A


def degree_basis(R: RingPresentation, j: int) -> list:
    """Standard monomials spanning R_j."""
    if j < 0:
        return []
    return R.piece(j).basis()


def parse_presentation(gens, variables, field=None, dim=None, name="") -> RingPresentation:
    """Build a presentation from polynomial strings such as "x^2 - y^2"."""
    import sympy

    F = field if field is not None else Field(0)
    syms = sympy.symbols(list(variables))
    out = []
    for text in gens:
        poly = sympy.Poly(sympy.sympify(text.replace("^", "**")), *syms)
        out.append([(Fraction(int(c.p), int(c.q)), ex) for ex, c in poly.terms()])
    return RingPresentation(F, len(syms), out, dim=dim, name=name)


def monomial_ideal(e: int, exps, field=None, dim=None, name="") -> RingPresentation:
    F = field if field is not None else Field(0)
    return RingPresentation(F, e, [[(1, ex)] for ex in exps], dim=dim, name=name)


# ---------------------------------------------------------------- Koszul homology

class _Koszul:
    """K_{i,j} = R_{j-i} (x) wedge^i, basis pairs (subset, standard monomial)."""

    def __init__(self, R: RingPresentation):
        self.R = R
        self.subsets = [list(combinations(range(R.e), i)) for i in range(R.e + 1)]
        self._basis = {}

    def basis(self, i, j):
        key = (i, j)
        b = self._basis.get(key)
        if b is None:
            if i < 0 or i > self.R.e or j - i < 0:
                b = ([], {})
            else:
                mons = self.R.piece(j - i).basis()
                lst = [(Sset, m) for Sset in self.subsets[i] for m in mons]
                b = (lst, {x: n for n, x in enumerate(lst)})
            self._basis[key] = b
        return b

    def diff(self, i, j):
        """Images of the basis of K_{i,j} in K_{i-1,j}."""
        R, F, p = self.R, self.R.field, self.R.field.p
        src, _ = self.basis(i, j)
        _, tindex = self.basis(i - 1, j)
        tbasis = R.piece(j - i + 1).basis()
        out = []
        for Sset, m in src:
            v = {}
            for pos, k in enumerate(Sset):
                ex = list(m)
                ex[k] += 1
                rest = Sset[:pos] + Sset[pos + 1:]
                sign = F(1) if pos % 2 == 0 else F(-1)
                for b, c in R.nf_monomial(tuple(ex)).items():
                    axpy(v, sign * c, {tindex[(rest, tbasis[b])]: 1}, p)
            out.append(v)
        return out

    def product(self, i1, j1, z1, i2, j2, z2):
        R, F, p = self.R, self.R.field, self.R.field.p
        b1, _ = self.basis(i1, j1)
        b2, _ = self.basis(i2, j2)
        i, j = i1 + i2, j1 + j2
        _, tindex = self.basis(i, j)
        tbasis = R.piece(j - i).basis()
        out = {}
        for k1, c1 in z1.items():
            S1, m1 = b1[k1]
            for k2, c2 in z2.items():
                S2, m2 = b2[k2]
                if set(S1) & set(S2):
                    continue
                inv = sum(1 for s in S1 for t in S2 if s > t)
                U = tuple(sorted(S1 + S2))
                c = c1 * c2 * (-1 if inv % 2 else 1)
                ex = tuple(x + y for x, y in zip(m1, m2))
                for b, c3 in R.nf_monomial(ex).items():
                    axpy(out, c * c3, {tindex[(U, tbasis[b])]: 1}, p)
        return out


@dataclass
class KoszulHomology:
    algebra: GradedAlgebra
    ranks: dict            # (i, j) -> rank of H_i in internal degree j
    window: int
    stable: bool           # nothing in internal degrees (D - 2, D]
    alternating_ok: bool
    flags: list = field(default_factory=list)

    def internal_degrees(self, i):
        return sorted(j for (a, j), r in self.ranks.items() if a == i and r)


def default_window(R: RingPresentation) -> int:
    return R.e + 2 * R.max_degree + 2


def koszul_homology(R: RingPresentation, D: int | None = None) -> KoszulHomology:
    """Koszul homology algebra of R, computed in internal degrees <= D."""
    if D is None:
        D = default_window(R)
    F, e = R.field, R.e
    K = _Koszul(R)
    ranks, reps, solvers = {}, {}, {}
    for i in range(e + 1):
        for j in range(i, D + 1):
            basis, _ = K.basis(i, j)
            if not basis:
                continue
            cycles = kernel(K.diff(i, j), F) if i > 0 else [{k: F(1)} for k in range(len(basis))]
            if not cycles:
                continue
            bnd = echelon_of(K.diff(i + 1, j), F) if i < e else Echelon(F)
            nb = len(bnd)
            piv = []
            for z in cycles:
                c = bnd.add(z)
                if c is not None:
                    piv.append(c)
            if len(bnd) - nb != len(piv):
                raise InternalInconsistency("homology basis bookkeeping")
            if piv:
                ranks[i, j] = len(piv)
                reps[i, j] = [bnd.rows[c] for c in piv]
                solvers[i, j] = (bnd, piv)

    dims = [0] * (e + 1)
    where = {}   # (i, j, n) -> basis index of A_i
    for (i, j) in sorted(ranks):
        for n in range(ranks[i, j]):
            where[i, j, n] = dims[i]
            dims[i] += 1
    top = max((i for i in range(e + 1) if dims[i]), default=0)
    dims = dims[:top + 1]

    mult = {}
    for i1 in range(1, top + 1):
        for i2 in range(1, top + 1 - i1):
            tab = [[{} for _ in range(dims[i2])] for _ in range(dims[i1])]
            for (a1, j1), zs1 in reps.items():
                if a1 != i1:
                    continue
                for (a2, j2), zs2 in reps.items():
                    if a2 != i2:
                        continue
                    tgt = (i1 + i2, j1 + j2)
                    for n1, z1 in enumerate(zs1):
                        for n2, z2 in enumerate(zs2):
                            w = K.product(i1, j1, z1, i2, j2, z2)
                            if not w:
                                continue
                            if tgt not in solvers:
                                if j1 + j2 <= D:
                                    # must be a boundary
                                    bnd = echelon_of(K.diff(tgt[0] + 1, tgt[1]), F)
                                    if not bnd.contains(w):
                                        raise InternalInconsistency(f"product left homology in {tgt}")
                                continue
                            bnd, piv = solvers[tgt]
                            r, coeffs = bnd.reduce(w, track=True)
                            if r:
                                raise InternalInconsistency(f"product of cycles is not a cycle in {tgt}")
                            v = {}
                            for n, c in enumerate(piv):
                                x = coeffs.get(c)
                                if x:
                                    v[where[tgt[0], tgt[1], n]] = x
                            tab[where[i1, j1, n1]][where[i2, j2, n2]] = v
            mult[i1, i2] = tab
    A = GradedAlgebra(F, dims, mult)

    stable = not any(r for (i, j), r in ranks.items() if j > D - 2)
    alt = sum((-1) ** i * d for i, d in enumerate(dims))
    alternating_ok = (alt == 0) if R.generators else (dims == [1])
    flags = []
    if not stable:
        flags.append("StabilizationUncertain")
    if not alternating_ok:
        raise InternalInconsistency(f"alternating rank sum {alt} != 0; window {D} too small?")
    return KoszulHomology(A, ranks, D, stable, alternating_ok, flags)


# ---------------------------------------------------------------- classification

@dataclass
class ClassificationReport:
    cls: ClassId
    invariants: RingInvariants
    flags: dict
    exception: str = "none"

    @property
    def sextuple(self):
        return self.invariants.sextuple()

    def as_dict(self):
        return {
            "class": str(self.cls),
            "sextuple": list(self.sextuple),
            "invariants": self.invariants.as_dict(),
            "flags": dict(self.flags),
            "exception": self.exception,
        }


def _lin_product(x, y, p):
    """Product of polynomials stored as {sorted index tuple: coef}."""
    out = {}
    for kx, cx in x.items():
        for ky, cy in y.items():
            k = tuple(sorted(kx + ky))
            v = out.get(k, 0) + cx * cy
            out[k] = v % p if p else v
    return {k: v for k, v in out.items() if v}


def t_vs_h30(A: GradedAlgebra) -> ClassId:
    """Tell T from H(3,0): does some x in A_1 multiply A_1 onto all of A_1^2?"""
    mi = mult_invariants(A)
    if A.top != 3 or (mi.p, mi.q, mi.r) != (3, 0, 0):
        raise PreconditionViolation(f"needs c=3 and (p,q,r)=(3,0,0), got c={A.top}, {(mi.p, mi.q, mi.r)}")
    F, p = A.field, A.field.p
    n1 = A.dim(1)
    span = Echelon(F)
    for a in range(n1):
        for b in range(n1):
            span.add(A.mul(1, a, 1, b))
    pivots = sorted(span.rows)
    # coordinates of a_k a_j in the basis of A_1^2
    coord = [[span.coordinates(A.mul(1, k, 1, j)) for j in range(n1)] for k in range(n1)]
    # M[j][c] = sum_k xi_k coord_c(a_k a_j), a linear form in xi
    M = [[{(k,): coord[k][j][c] for k in range(n1) if coord[k][j].get(c)} for c in pivots] for j in range(n1)]
    perms = [((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1), ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)]
    for rows in combinations(range(n1), 3):
        det = {}
        for perm, sgn in perms:
            term = {(): F(sgn)}
            for r, c in zip(rows, perm):
                term = _lin_product(term, M[r][c], p)
                if not term:
                    break
            axpy(det, F(1), term, p)
        if det:
            return H(3, 0)
    return TT


_EXTERIOR_SHAPES = {2: (1, 1, 0, 1, 0, 0), 3: (2, 3, 1, 3, 1, 3)}


def _is_exterior(c, mi):
    """A is the exterior algebra on A_1 (the complete intersection case)."""
    if c <= 1:
        return mi.l + 1 == c
    return mi.as_tuple() == _EXTERIOR_SHAPES[c]


def classify(A, aux=None) -> ClassificationReport:
    """Class of a Koszul homology algebra; aux may carry e, d, h and their flags."""
    if isinstance(A, KoszulHomology):
        kh, A = A, A.algebra
    else:
        kh = None
    aux = dict(aux or {})
    c = A.top
    mi = mult_invariants(A)
    flags = {}
    if kh is not None:
        flags["stabilized"] = kh.stable
    e = aux.get("e")
    d = aux.get("d")
    h = aux.get("h", 0)
    if e is None and d is None:
        e, d = c, 0
        flags["ring_data"] = "assumed"
    elif e is None:
        e = c + d
    elif d is None:
        d = e - c
    if e - d != c:
        raise Unclassifiable(f"codepth {e - d} from e, d disagrees with top degree {c} of A", mi.as_tuple())
    for key in ("d_flag", "h_flag"):
        if key in aux:
            flags[key] = aux[key]
    if c > 3:
        raise Unclassifiable(f"codepth {c} > 3", mi.as_tuple())
    l, m, n, p, q, r = mi.as_tuple()
    gorenstein = False
    ext = _is_exterior(c, mi)
    if "h" in aux and ext != (l + 1 == c - h):
        raise Unclassifiable(f"l+1={l + 1}, c-h={c - h} disagrees with the shape of A", mi.as_tuple())
    if ext:
        cls = C(c)
    elif c == 2:
        if p:
            raise Unclassifiable("codepth 2, not a complete intersection, but A_1^2 != 0", mi.as_tuple())
        cls = S
    else:
        flags["eq_l_plus_n"] = (m == l + n)
        if m != l + n:
            raise Unclassifiable(f"m={m} != l+n={l + n}", mi.as_tuple())
        if n == 1 and poincare_duality(A)[0]:
            cls = G(l + 1)
            gorenstein = True
        elif (p, q, r) == (1, 1, 2):
            cls = BB
        elif p == 0 and q == 1 and r >= 2:
            cls = G(r)
        elif (p, q) == (3, 0):
            if r != 0:
                raise Unclassifiable("p=3, q=0 but r != 0", mi.as_tuple())
            cls = t_vs_h30(A)
        else:
            if r != q:
                raise Unclassifiable(f"H(p,q) needs r=q, got r={r}, q={q}", mi.as_tuple())
            cls = H(p, q)
    flags["gorenstein"] = gorenstein
    inv = RingInvariants(e, d, h, l, m, n, p, q, r)
    verdict = admissible(cls, inv)
    flags["admissible"] = verdict.ok
    if not verdict.ok:
        flags["violations"] = [name for name, _ in verdict.violations]
    flags["golod"] = cls in (S, H(0, 0))
    return ClassificationReport(cls, inv, flags, exception_kind(cls, inv))


# ---------------------------------------------------------------- depth and dimension

def monomial_dimension(R: RingPresentation) -> int:
    """Krull dimension of k[x]/I for monomial I: largest variable set containing no generator's support."""
    supports = [frozenset(k for k, x in enumerate(g[0][1]) if x) for g in R.generators]
    for size in range(R.e, -1, -1):
        for sub in combinations(range(R.e), size):
            s = set(sub)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def estimate_dimension(R: RingPresentation, D: int):
    """(dim, exact) from the Hilbert function up to degree D."""
    hf = R.hilbert_function(D)
    if 0 in hf:
        return 0, True
    tail = hf[D // 2:]
    seq = tail
    for k in range(R.e + 1):
        if len(seq) < 2:
            break
        if len(set(seq)) == 1 and seq[0] > 0:
            return k + 1, False
        seq = [b - a for a, b in zip(seq, seq[1:])]
    return R.e, False


def krull_dimension(R: RingPresentation, D: int | None = None):
    if R.dim_annotation is not None:
        return R.dim_annotation, True
    if R.is_monomial:
        return monomial_dimension(R), True
    return estimate_dimension(R, D if D is not None else 4 * R.max_degree + R.e)


@dataclass
class DepthReport:
    d: int
    h: int
    dim: int
    mu: list
    flags: list


def depth_and_h(R: RingPresentation, imax: int | None = None, D: int | None = None) -> DepthReport:
    from .resolve import bass_ring_oracle

    dim, exact_dim = krull_dimension(R, D)
    if imax is None:
        imax = dim
    if D is None:
        D = (imax + 2) * max(R.max_degree, 2) + 2
    res = bass_ring_oracle(R, imax, D)
    flags = []
    d = next((i for i, x in enumerate(res.mu) if x), None)
    if d is None:
        raise InternalInconsistency(f"no nonzero Bass number up to {imax}; depth exceeds the dimension bound")
    if not all(res.exact[: d + 1]):
        flags.append("WindowTooSmall")
    if not exact_dim:
        flags.append("DimensionEstimated")
    return DepthReport(d, dim - d, dim, res.mu, flags)


def classify_presentation(R: RingPresentation, D: int | None = None, imax: int | None = None):
    """Koszul homology, depth and class of a presentation, cross-checking depth = e - c."""
    kh = koszul_homology(R, D)
    dep = depth_and_h(R, imax)
    c = kh.algebra.top
    if R.e - dep.d != c:
        raise InternalInconsistency(f"depth {dep.d} from Bass numbers, but e - c = {R.e - c}")
    aux = {"e": R.e, "d": dep.d, "h": dep.h}
    if "WindowTooSmall" in dep.flags:
        aux["d_flag"] = "window"
    if "DimensionEstimated" in dep.flags:
        aux["h_flag"] = "estimated"
    return classify(kh, aux), kh, dep


# ---------------------------------------------------------------- example corpus

def _power(vars_, k, e):
    out = []
    for combo in combinations_with_replacement(vars_, k):
        v = [0] * e
        for x in combo:
            v[x] += 1
        out.append(tuple(v))
    return out


def example_corpus(field=None) -> dict:
    """Named presentations used by the examples command and the corpus tests."""
    F = field if field is not None else Field(0)
    X, Y, Z = 0, 1, 2
    z2 = (0, 0, 2)
    out = {}
    out["squares3"] = monomial_ideal(3, [(2, 0, 0), (0, 2, 0), (0, 0, 2)], F, name="squares3")
    for l in (3, 4):
        gens = _power([X, Y], l - 1, 3) + [z2]
        out[f"powers{l}"] = monomial_ideal(3, gens, F, name=f"powers{l}")
    for l in (2, 3):
        gens = [tuple(a + b for a, b in zip((1, 0, 0), m)) for m in _power([X, Y], l - 1, 3)] + [z2]
        out[f"xpowers{l}"] = monomial_ideal(3, gens, F, name=f"xpowers{l}")
    out["wxwy"] = monomial_ideal(3, [(1, 1, 0), (1, 0, 1)], F, name="wxwy")
    out["h21"] = monomial_ideal(3, [(2, 0, 0), (1, 1, 0), (0, 0, 2)], F, name="h21")
    out["gorenstein5"] = parse_presentation(["x*y", "x*z", "y*z", "x^2 - y^2", "x^2 - z^2"], "xyz", F,
                                            name="gorenstein5")
    golod = [(1,) + m[1:] for m in _power([1, 2, 3], 2, 4)]
    out["golod"] = monomial_ideal(4, golod, F, name="golod")
    return out


CORPUS_NOTES = {
    "squares3": "(x^2, y^2, z^2)",
    "powers3": "(x,y)^2 + (z^2)",
    "powers4": "(x,y)^3 + (z^2)",
    "xpowers2": "x(x,y) + (z^2)",
    "xpowers3": "x(x,y)^2 + (z^2)",
    "wxwy": "(xy, xz)",
    "h21": "(x^2, xy, z^2)",
    "gorenstein5": "(xy, xz, yz, x^2 - y^2, x^2 - z^2)",
    "golod": "w(x,y,z)^2",
}
