"""Finite-dimensional graded-commutative algebras and their graded modules.

Everything is given by structure constants over fixed ordered bases:
``A.mult[i, j][a][b]`` is the product of basis element ``a`` of A_i with
basis element ``b`` of A_j, as a sparse vector over the basis of A_{i+j}.
Modules store ``M.act[i, j][a][m]`` the same way; module degrees may be
negative (duals).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .linalg import Echelon, Field, axpy, echelon_of, invert, lincomb, random_invertible, rank
from .powser import T, LaurentPoly, RationalSeries, substitute_inverse


class EvenGenerator(ValueError):
    pass


class FieldMismatch(ValueError):
    pass


class AxiomViolation(AssertionError):
    pass


class HypothesisViolation(ValueError):
    pass


def _zero_table(F, dims_a, dims_b):
    return [[{} for _ in range(dims_b)] for _ in range(dims_a)]


class GradedAlgebra:
    """A = A_0 + ... + A_top with A_0 = k spanned by basis element 0 = unit."""

    def __init__(self, field: Field, dims, mult, labels=None, graded_commutative=True):
        self.field = field
        dims = list(dims)
        while len(dims) > 1 and dims[-1] == 0:
            dims.pop()
        if not dims or dims[0] != 1:
            raise ValueError("A_0 must be one-dimensional")
        self.dims = tuple(dims)
        self.graded_commutative = graded_commutative
        p = field.p
        one = field(1)
        full = {}
        for i, di in enumerate(self.dims):
            for j, dj in enumerate(self.dims):
                if i + j > self.top:
                    continue
                if i == 0:
                    full[i, j] = [[{b: one} for b in range(dj)]]
                elif j == 0:
                    full[i, j] = [[{a: one}] for a in range(di)]
                else:
                    tab = mult.get((i, j))
                    if tab is None:
                        tab = _zero_table(field, di, dj)
                    full[i, j] = [[{k: field(x) for k, x in v.items() if field(x)} for v in row] for row in tab]
        self.mult = full
        self.labels = labels

    @property
    def top(self):
        return len(self.dims) - 1

    def dim(self, i):
        return self.dims[i] if 0 <= i < len(self.dims) else 0

    def total_dim(self):
        return sum(self.dims)

    def mul(self, i, a, j, b):
        if i + j > self.top:
            return {}
        return self.mult[i, j][a][b]

    def mul_vec(self, i, x, j, y):
        """Product of vectors x in A_i and y in A_j."""
        p = self.field.p
        out = {}
        if i + j > self.top:
            return out
        tab = self.mult[i, j]
        for a, xa in x.items():
            row = tab[a]
            for b, yb in y.items():
                axpy(out, xa * yb, row[b], p)
        return out

    def hilbert(self) -> LaurentPoly:
        return LaurentPoly({i: d for i, d in enumerate(self.dims)})

    def __repr__(self):
        return f"GradedAlgebra({self.field!r}, dims={list(self.dims)})"

    # algebra generators and factorizations, used by the resolution engine
    @cached_property
    def generators(self):
        """Basis elements (deg, idx) spanning a complement of A_+^2."""
        gens = []
        for u in range(1, self.top + 1):
            ech = Echelon(self.field)
            for i in range(1, u):
                j = u - i
                for a in range(self.dims[i]):
                    for b in range(self.dims[j]):
                        ech.add(self.mult[i, j][a][b])
            gens.extend((u, k) for k in range(self.dims[u]) if k not in ech)
        return gens

    def gen_mult(self, g, j, a):
        deg, idx = self.generators[g]
        return self.mul(deg, idx, j, a)

    @cached_property
    def factorization(self):
        """fac[i][a] = list of (coef, gen, a') with basis a = sum coef * gen * a'."""
        F, p = self.field, self.field.p
        fac = {0: [None]}
        gens = self.generators
        for u in range(1, self.top + 1):
            ech = Echelon(F)
            combos = {}
            for g, (dg, idx) in enumerate(gens):
                j = u - dg
                if j < 0:
                    continue
                for b in range(self.dims[j]):
                    v = self.mul(dg, idx, j, b)
                    r, coeffs = ech.reduce(v, track=True)
                    if not r:
                        continue
                    combo = {(g, b): F(1)}
                    for c, x in coeffs.items():
                        axpy(combo, -x, combos[c], p)
                    c = max(r)
                    inv = F.inv(r[c])
                    ech.rows[c] = {k: F.norm(x * inv) for k, x in r.items()}
                    combos[c] = {k: F.norm(x * inv) for k, x in combo.items()}
            entries = []
            for a in range(self.dims[u]):
                coeffs = ech.coordinates({a: F(1)})
                tot = {}
                for c, x in coeffs.items():
                    axpy(tot, x, combos[c], p)
                entries.append([(x, g, b) for (g, b), x in sorted(tot.items())])
            fac[u] = entries
        return fac

    def dump(self):
        """Nonzero structure constants as (i, a, j, b, k, scalar) tuples."""
        out = []
        for (i, j), tab in sorted(self.mult.items()):
            if i == 0 or j == 0:
                continue
            for a, row in enumerate(tab):
                for b, v in enumerate(row):
                    for k, x in sorted(v.items()):
                        out.append((i, a, j, b, k, self.field.to_int_pair(x)))
        return {"field": self.field.p, "dims": list(self.dims), "mult": out}


class GradedModule:
    """Left graded module over a GradedAlgebra."""

    def __init__(self, algebra: GradedAlgebra, dims: dict, act, labels=None):
        self.algebra = algebra
        self.dims = {int(j): int(d) for j, d in dims.items() if d}
        F = algebra.field
        one = F(1)
        full = {}
        for j, dj in self.dims.items():
            for i, di in enumerate(algebra.dims):
                if self.dims.get(i + j, 0) == 0:
                    continue
                if i == 0:
                    full[i, j] = [[{m: one} for m in range(dj)]]
                    continue
                tab = act.get((i, j))
                if tab is None:
                    tab = _zero_table(F, di, dj)
                full[i, j] = [[{k: F(x) for k, x in v.items() if F(x)} for v in row] for row in tab]
        self.act = full
        self.labels = labels

    @property
    def field(self):
        return self.algebra.field

    def dim(self, j):
        return self.dims.get(j, 0)

    def degrees(self):
        return sorted(self.dims)

    def acts(self, i, a, j, m):
        tab = self.act.get((i, j))
        if tab is None:
            return {}
        return tab[a][m]

    def act_vec(self, i, x, j, y):
        p = self.field.p
        out = {}
        tab = self.act.get((i, j))
        if tab is None:
            return out
        for a, xa in x.items():
            row = tab[a]
            for m, ym in y.items():
                axpy(out, xa * ym, row[m], p)
        return out

    def hilbert(self) -> LaurentPoly:
        return LaurentPoly(dict(self.dims))

    def total_dim(self):
        return sum(self.dims.values())

    def __repr__(self):
        return f"GradedModule(dims={dict(sorted(self.dims.items()))})"


# ---------------------------------------------------------------- basic objects

def ground(field: Field) -> GradedAlgebra:
    return GradedAlgebra(field, [1], {})


def exterior(field: Field, degrees) -> GradedAlgebra:
    """Exterior algebra on generators of the given odd degrees."""
    degrees = list(degrees)
    if any(d <= 0 or d % 2 == 0 for d in degrees):
        raise EvenGenerator("exterior algebra generators must have odd positive degree")
    n = len(degrees)
    subsets = [s for r in range(n + 1) for s in itertools.combinations(range(n), r)]
    bydeg = {}
    for s in subsets:
        bydeg.setdefault(sum(degrees[i] for i in s), []).append(s)
    top = max(bydeg)
    dims = [len(bydeg.get(u, [])) for u in range(top + 1)]
    index = {s: (u, k) for u, ss in bydeg.items() for k, s in enumerate(ss)}
    mult = {}
    for i in range(1, top + 1):
        for j in range(1, top + 1 - i):
            tab = _zero_table(field, dims[i], dims[j])
            for a, s in enumerate(bydeg.get(i, [])):
                for b, t in enumerate(bydeg.get(j, [])):
                    if set(s) & set(t):
                        continue
                    inversions = sum(1 for x in s for y in t if x > y)
                    u, k = index[tuple(sorted(s + t))]
                    tab[a][b] = {k: field(-1 if inversions % 2 else 1)}
            mult[i, j] = tab
    labels = [["".join(f"e{x + 1}" for x in s) or "1" for s in bydeg.get(u, [])] for u in range(top + 1)]
    return GradedAlgebra(field, dims, mult, labels=labels)


def trivial_module(A: GradedAlgebra, dims: dict) -> GradedModule:
    """A graded vector space with A_+ acting by zero."""
    return GradedModule(A, dims, {})


def residue_module(A: GradedAlgebra) -> GradedModule:
    return trivial_module(A, {0: 1})


def regular_module(A: GradedAlgebra) -> GradedModule:
    dims = {i: d for i, d in enumerate(A.dims)}
    act = {(i, j): A.mult[i, j] for (i, j) in A.mult}
    return GradedModule(A, dims, act)


def ideal_module(A: GradedAlgebra, lo: int, hi: int | None = None) -> GradedModule:
    """A_{>=lo} / A_{>=hi} as an A-module (hi=None means no quotient)."""
    hi = A.top + 1 if hi is None else hi
    dims = {i: A.dims[i] for i in range(lo, min(hi, A.top + 1))}
    act = {}
    for (i, j), tab in A.mult.items():
        if j in dims and (i + j) in dims:
            act[i, j] = tab
    return GradedModule(A, dims, act)


def augmentation_ideal(A: GradedAlgebra) -> GradedModule:
    return ideal_module(A, 1)


def quotient_module(A: GradedAlgebra, s: int) -> GradedModule:
    """A / A_{>=s}."""
    return ideal_module(A, 0, s)


def suspend(M: GradedModule, s: int) -> GradedModule:
    """Sigma^s M with x.sigma(m) = (-1)^{is} sigma(xm)."""
    F = M.field
    dims = {j + s: d for j, d in M.dims.items()}
    act = {}
    for (i, j), tab in M.act.items():
        if i == 0:
            continue
        if (i * s) % 2:
            act[i, j + s] = [[{k: F.neg(x) for k, x in v.items()} for v in row] for row in tab]
        else:
            act[i, j + s] = tab
    return GradedModule(M.algebra, dims, act)


def dual(M: GradedModule, s: int = 0) -> GradedModule:
    """Hom_k(M, Sigma^s k): degree j is the dual of M_{s-j}; (x mu)(m) = (-1)^{ij} mu(xm)."""
    A, F = M.algebra, M.field
    dims = {s - j: d for j, d in M.dims.items()}
    act = {}
    for j, dj in dims.items():
        for i in range(1, A.top + 1):
            if (i + j) not in dims:
                continue
            # x in A_i, mu in Hom_j (dual basis of M_{s-j}), result in Hom_{i+j} (dual of M_{s-i-j})
            src = s - i - j
            tab = M.act.get((i, src))
            out = _zero_table(F, A.dims[i], dj)
            if tab is not None:
                sign = -1 if (i * j) % 2 else 1
                for a in range(A.dims[i]):
                    for m in range(M.dims[src]):
                        for b, x in tab[a][m].items():
                            out[a][b][m] = F.norm(sign * x)
            act[i, j] = out
    return GradedModule(A, dims, act)


def direct_sum(*mods: GradedModule) -> GradedModule:
    A = mods[0].algebra
    dims = {}
    offsets = []
    for M in mods:
        off = {}
        for j, d in M.dims.items():
            off[j] = dims.get(j, 0)
            dims[j] = dims.get(j, 0) + d
        offsets.append(off)
    act = {}
    for M, off in zip(mods, offsets):
        for (i, j), tab in M.act.items():
            if i == 0:
                continue
            out = act.setdefault((i, j), _zero_table(A.field, A.dims[i], dims[j]))
            for a, row in enumerate(tab):
                for m, v in enumerate(row):
                    out[a][off[j] + m] = {off[i + j] + k: x for k, x in v.items()}
    return GradedModule(A, dims, act)


def restrict(M: GradedModule, B: GradedAlgebra, proj) -> GradedModule:
    """View a C-module as a B-module along an algebra map B -> C.

    ``proj(i, b)`` returns the image of basis element b of B_i as a sparse
    vector in C_i.
    """
    C = M.algebra
    act = {}
    for j, dj in M.dims.items():
        for i in range(1, B.top + 1):
            if (i + j) not in M.dims:
                continue
            out = _zero_table(B.field, B.dims[i], dj)
            for b in range(B.dims[i]):
                img = proj(i, b)
                if not img or i > C.top:
                    continue
                for m in range(dj):
                    out[b][m] = M.act_vec(i, img, j, {m: B.field(1)})
            act[i, j] = out
    return GradedModule(B, M.dims, act)


# ---------------------------------------------------------------- constructions

def trivial_ext(C: GradedAlgebra, W: GradedModule) -> GradedAlgebra:
    """C x W with W.W = 0 and (x,m)(x',m') = (xx', xm' + (-1)^{j i'} x'm)."""
    F = C.field
    if W.algebra is not C:
        raise ValueError("W must be a module over C")
    if any(j <= 0 for j in W.dims):
        raise ValueError("W must live in positive degrees")
    top = max([C.top] + list(W.dims))
    dims = [C.dim(u) + W.dim(u) for u in range(top + 1)]
    mult = {}
    for i in range(1, top + 1):
        for j in range(1, top + 1 - i):
            u = i + j
            cu = C.dim(u)
            tab = _zero_table(F, dims[i], dims[j])
            ci, cj = C.dim(i), C.dim(j)
            for a in range(dims[i]):
                for b in range(dims[j]):
                    if a < ci and b < cj:
                        tab[a][b] = dict(C.mul(i, a, j, b))
                    elif a < ci:
                        # x . m
                        v = W.acts(i, a, j, b - cj)
                        tab[a][b] = {cu + k: x for k, x in v.items()}
                    elif b < cj:
                        # m . x' = (-1)^{i j} x' . m   (m in W_i, x' in C_j)
                        v = W.acts(j, b, i, a - ci)
                        if (i * j) % 2:
                            tab[a][b] = {cu + k: F.neg(x) for k, x in v.items()}
                        else:
                            tab[a][b] = {cu + k: x for k, x in v.items()}
            mult[i, j] = tab
    return GradedAlgebra(F, dims, mult)


def null_algebra(field: Field, wdims: dict) -> GradedAlgebra:
    """k x W with W a graded vector space in positive degrees."""
    k = ground(field)
    return trivial_ext(k, trivial_module(k, wdims))


def tensor(C: GradedAlgebra, D: GradedAlgebra) -> GradedAlgebra:
    """C (x) D with (c (x) d)(c' (x) d') = (-1)^{|d||c'|} cc' (x) dd'."""
    if C.field != D.field:
        raise FieldMismatch("tensor factors over different fields")
    F = C.field
    top = C.top + D.top
    basis = {u: [] for u in range(top + 1)}
    for i in range(C.top + 1):
        for j in range(D.top + 1):
            for a in range(C.dims[i]):
                for b in range(D.dims[j]):
                    basis[i + j].append((i, a, j, b))
    index = {u: {x: k for k, x in enumerate(bs)} for u, bs in basis.items()}
    dims = [len(basis[u]) for u in range(top + 1)]
    mult = {}
    for u in range(1, top + 1):
        for v in range(1, top + 1 - u):
            tab = _zero_table(F, dims[u], dims[v])
            for x, (i, a, j, b) in enumerate(basis[u]):
                for y, (i2, a2, j2, b2) in enumerate(basis[v]):
                    if i + i2 > C.top or j + j2 > D.top:
                        continue
                    cc = C.mul(i, a, i2, a2)
                    dd = D.mul(j, b, j2, b2)
                    if not cc or not dd:
                        continue
                    sign = -1 if (j * i2) % 2 else 1
                    out = {}
                    idx = index[u + v]
                    for ka, xa in cc.items():
                        for kb, xb in dd.items():
                            out[idx[(i + i2, ka, j + j2, kb)]] = F.norm(sign * xa * xb)
                    tab[x][y] = out
            mult[u, v] = tab
    return GradedAlgebra(F, dims, mult)


def tensor_modules(T_: GradedModule, U: GradedModule, B: GradedAlgebra) -> GradedModule:
    """T (x) U as a module over B = tensor(C, D) (same basis order as ``tensor``)."""
    C, D, F = T_.algebra, U.algebra, B.field
    basis = {}
    for i, di in T_.dims.items():
        for j, dj in U.dims.items():
            for a in range(di):
                for b in range(dj):
                    basis.setdefault(i + j, []).append((i, a, j, b))
    index = {u: {x: k for k, x in enumerate(bs)} for u, bs in basis.items()}
    # basis of B in the order built by tensor()
    bbasis = {u: [] for u in range(B.top + 1)}
    for i in range(C.top + 1):
        for j in range(D.top + 1):
            for a in range(C.dims[i]):
                for b in range(D.dims[j]):
                    bbasis[i + j].append((i, a, j, b))
    act = {}
    for w in range(1, B.top + 1):
        for u, bs in basis.items():
            if (u + w) not in basis:
                continue
            tab = _zero_table(F, B.dims[w], len(bs))
            for x, (i, a, j, b) in enumerate(bbasis[w]):
                for y, (i2, a2, j2, b2) in enumerate(bs):
                    tt = T_.acts(i, a, i2, a2)
                    uu = U.acts(j, b, j2, b2)
                    if not tt or not uu:
                        continue
                    sign = -1 if (j * i2) % 2 else 1
                    out = {}
                    idx = index[u + w]
                    for ka, xa in tt.items():
                        for kb, xb in uu.items():
                            out[idx[(i + i2, ka, j + j2, kb)]] = F.norm(sign * xa * xb)
                    tab[x][y] = out
            act[w, u] = tab
    return GradedModule(B, {u: len(bs) for u, bs in basis.items()}, act)


def truncate(E: GradedAlgebra, s: int) -> GradedAlgebra:
    """E / E_{>=s}."""
    if s < 1:
        raise ValueError("truncation degree must be >= 1")
    dims = list(E.dims[:s])
    mult = {(i, j): tab for (i, j), tab in E.mult.items() if i + j < s and i and j}
    return GradedAlgebra(E.field, dims, mult)


def projection_from_ext(B: GradedAlgebra, C: GradedAlgebra):
    """The algebra map C x W -> C (for B built by trivial_ext(C, W))."""
    def proj(i, b):
        if i <= C.top and b < C.dims[i]:
            return {b: B.field(1)}
        return {}
    return proj


# ---------------------------------------------------------------- invariants

@dataclass(frozen=True)
class MultInvariants:
    l: int
    m: int
    n: int
    p: int
    q: int
    r: int
    warning: bool = False

    def as_tuple(self):
        return (self.l, self.m, self.n, self.p, self.q, self.r)


def _product_rank(A, i, j):
    if i + j > A.top:
        return 0
    return rank([A.mult[i, j][a][b] for a in range(A.dim(i)) for b in range(A.dim(j))], A.field)


def mult_invariants(A: GradedAlgebra) -> MultInvariants:
    l = A.dim(1) - 1
    m, n = A.dim(2), A.dim(3)
    p = _product_rank(A, 1, 1)
    q = _product_rank(A, 1, 2)
    # delta_2: A_2 -> Hom(A_1, A_3), x -> (y -> xy)
    rows = []
    n1 = A.dim(1)
    for x in range(m):
        v = {}
        if 3 <= A.top:
            for y in range(n1):
                for k, c in A.mul(2, x, 1, y).items():
                    v[y * n + k] = c
        rows.append(v)
    r = rank(rows, A.field)
    return MultInvariants(l, m, n, p, q, r, warning=A.top > 3)


def poincare_duality(A: GradedAlgebra):
    """(True, s) if every pairing A_i x A_{s-i} -> A_s is perfect, s = top."""
    s = A.top
    if A.dims[s] != 1:
        return (False, None)
    for i in range(s + 1):
        di, dj = A.dim(i), A.dim(s - i)
        if di != dj:
            return (False, None)
        rows = [{b: A.mul(i, a, s - i, b).get(0, 0) for b in range(dj) if A.mul(i, a, s - i, b)} for a in range(di)]
        if rank(rows, A.field) != di:
            return (False, None)
    return (True, s)


def hilbert(X) -> LaurentPoly:
    return X.hilbert()


def check_axioms(A: GradedAlgebra) -> None:
    """Exhaustive check of unit, graded commutativity, odd squares, associativity."""
    F, p = A.field, A.field.p
    top = A.top
    for i in range(top + 1):
        for a in range(A.dims[i]):
            if A.mul(0, 0, i, a) != {a: F(1)} or A.mul(i, a, 0, 0) != {a: F(1)}:
                raise AxiomViolation(f"unit fails on ({i},{a})")
    for i in range(1, top + 1):
        for j in range(1, top + 1 - i):
            sign = -1 if (i * j) % 2 else 1
            for a in range(A.dims[i]):
                for b in range(A.dims[j]):
                    x = A.mul(i, a, j, b)
                    y = {k: F.norm(sign * c) for k, c in A.mul(j, b, i, a).items()}
                    if x != y:
                        raise AxiomViolation(f"graded commutativity fails on ({i},{a}),({j},{b})")
    for i in range(1, top // 2 + 1):
        if i % 2 == 0 or 2 * i > top:
            continue
        # x^2 = 0 for every odd x: diagonal terms vanish (off-diagonal cancel by commutativity)
        for a in range(A.dims[i]):
            if A.mul(i, a, i, a):
                raise AxiomViolation(f"odd square nonzero at ({i},{a})")
    for i in range(1, top + 1):
        for j in range(1, top + 1 - i):
            for k in range(1, top + 1 - i - j):
                for a in range(A.dims[i]):
                    for b in range(A.dims[j]):
                        ab = A.mul(i, a, j, b)
                        for c in range(A.dims[k]):
                            left = A.mul_vec(i + j, ab, k, {c: F(1)})
                            right = A.mul_vec(i, {a: F(1)}, j + k, A.mul(j, b, k, c))
                            if left != right:
                                raise AxiomViolation(f"associativity fails on ({i},{a}),({j},{b}),({k},{c})")


def check_module_axioms(M: GradedModule) -> None:
    A, F = M.algebra, M.field
    for j, dj in M.dims.items():
        for i in range(1, A.top + 1):
            for i2 in range(1, A.top + 1 - i):
                if (i + i2 + j) not in M.dims:
                    continue
                for a in range(A.dims[i]):
                    for b in range(A.dims[i2]):
                        ab = A.mul(i, a, i2, b)
                        for m in range(dj):
                            left = M.act_vec(i + i2, ab, j, {m: F(1)})
                            right = M.act_vec(i, {a: F(1)}, i2 + j, M.acts(i2, b, j, m))
                            if left != right:
                                raise AxiomViolation(f"module associativity fails at ({i},{a}),({i2},{b}),({j},{m})")


def change_basis(A: GradedAlgebra, rng) -> GradedAlgebra:
    """Conjugate the structure constants by a random invertible matrix in each positive degree."""
    F, p = A.field, A.field.p
    P = {0: [[F(1)]]}
    Pinv = {0: [[F(1)]]}
    for u in range(1, A.top + 1):
        m = random_invertible(A.dims[u], F, rng)
        P[u] = [[F(x) for x in row] for row in m]
        Pinv[u] = invert(P[u], F)
    # new basis vector a of degree u is sum_k P[u][a][k] e_k; old e_k = sum_a Pinv[u][k][a] new_a
    def to_new(u, v):
        out = {}
        for k, x in v.items():
            for a, y in enumerate(Pinv[u][k]):
                if y:
                    axpy(out, x, {a: y}, p)
        return out

    mult = {}
    for i in range(1, A.top + 1):
        for j in range(1, A.top + 1 - i):
            tab = _zero_table(F, A.dims[i], A.dims[j])
            for a in range(A.dims[i]):
                xa = {k: c for k, c in enumerate(P[i][a]) if c}
                for b in range(A.dims[j]):
                    yb = {k: c for k, c in enumerate(P[j][b]) if c}
                    tab[a][b] = to_new(i + j, A.mul_vec(i, xa, j, yb))
            mult[i, j] = tab
    return GradedAlgebra(F, A.dims, mult)


def from_dump(data) -> GradedAlgebra:
    F = Field(data["field"])
    dims = data["dims"]
    mult = {}
    for i, a, j, b, k, (num, den) in data["mult"]:
        tab = mult.setdefault((i, j), _zero_table(F, dims[i], dims[j]))
        tab[a][b][k] = F(num) * F.inv(F(den)) if F.p else F(num) / den
    return GradedAlgebra(F, dims, mult)


# ---------------------------------------------------------------- model algebras

class NegativeWDimension(ValueError):
    pass


def _class_part(F: Field, cls):
    """The algebra B of the class row (before adjoining the trivial part W)."""
    kind = cls.kind
    if kind == "C":
        return exterior(F, [1] * cls.params[0])
    if kind == "S":
        return ground(F)
    if kind in ("T", "B"):
        C = exterior(F, [1, 1])
        W = quotient_module(C, 2) if kind == "T" else augmentation_ideal(C)
        return trivial_ext(C, suspend(W, 1))
    if kind == "G":
        C = null_algebra(F, {1: cls.params[0]})
        return trivial_ext(C, dual(regular_module(C), 3))
    if kind == "H":
        p, q = cls.params
        return tensor(null_algebra(F, {1: p, 2: q}), null_algebra(F, {1: 1}))
    raise ValueError(f"unknown class {cls}")


def table_algebra(cls, inv, field: Field | None = None, check: bool = True) -> GradedAlgebra:
    """B x W for the class row, W in degrees 1..3 with B_+ W = 0, sized to hit (l+1, m, n)."""
    from .classtable import InadmissibleInvariants, admissible

    F = field or Field(10007)
    if check:
        verdict = admissible(cls, inv)
        if not verdict.ok:
            raise InadmissibleInvariants(verdict)
    B = _class_part(F, cls)
    if cls.kind == "C":
        return B
    targets = {1: inv.l + 1, 2: inv.m, 3: inv.n}
    wdims = {}
    for u, want in targets.items():
        w = want - B.dim(u)
        if w < 0:
            raise NegativeWDimension(f"degree {u}: target {want} below {B.dim(u)}")
        if w:
            wdims[u] = w
    if B.top > 3:
        raise NegativeWDimension("model algebra extends past degree 3")
    if not wdims:
        return B
    return trivial_ext(B, trivial_module(B, wdims))


# ---------------------------------------------------------------- closed forms

APPENDIX_FORMULAS = (
    "shift", "dual", "maximalP", "kunneth", "nullP", "nullI", "exteriorP", "exteriorI",
    "trivialP", "null2P", "null2I", "syzygyC", "trivialI", "truncatedI",
)


def _ser(x):
    if isinstance(x, RationalSeries):
        return x
    return RationalSeries(x)


def _need(inputs, *names):
    missing = [n for n in names if n not in inputs]
    if missing:
        raise HypothesisViolation(f"missing inputs: {', '.join(missing)}")
    return [inputs[n] for n in names]


def appendix_series(formula: str, **inputs) -> RationalSeries:
    """Assemble one of the closed-form series from its ingredients.

    Poincare-type formulas return the Poincare series; Bass-type formulas
    (nullI, exteriorI, null2I, syzygyC, trivialI, truncatedI) return the Bass
    series itself, not the ratio I/P.  Ingredients are series (or Laurent
    polynomials) passed by keyword; structural hypotheses are checked when the
    algebra/module objects are supplied.
    """
    if formula == "shift":
        P, s = _need(inputs, "P", "s")
        return _ser(P).shift(s)
    if formula == "dual":
        (I,) = _need(inputs, "I")
        return _ser(I)
    if formula == "maximalP":
        P, H = _need(inputs, "P", "H")
        return (_ser(P) - _ser(H)).shift(-1)
    if formula == "kunneth":
        P1, P2 = _need(inputs, "P1", "P2")
        return _ser(P1) * _ser(P2)
    if formula in ("nullP", "nullI"):
        (HW,) = _need(inputs, "HW")
        HW = LaurentPoly._lift(HW)
        if HW.is_zero():
            raise HypothesisViolation("W must be nonzero")
        if HW.low() < 1:
            raise HypothesisViolation("W must live in positive degrees")
        P = RationalSeries(1, 1 - T * HW)
        if formula == "nullP":
            return P
        return P * (substitute_inverse(HW) - T)
    if formula == "exteriorP":
        (degrees,) = _need(inputs, "degrees")
        if any(d <= 0 or d % 2 == 0 for d in degrees):
            raise HypothesisViolation("exterior generators must have odd positive degree")
        den = LaurentPoly(1)
        for d in degrees:
            den = den * (1 - T ** (d + 1))
        return RationalSeries(1, den)
    if formula == "exteriorI":
        (B,) = _need(inputs, "B")
        ok, s = poincare_duality(B)
        if not ok:
            raise HypothesisViolation("algebra lacks Poincare duality")
        return RationalSeries(T ** (-s))
    if formula == "trivialP":
        PC, PCW = _need(inputs, "PC", "PCW")
        return _ser(PC) / (1 - T * _ser(PCW))
    if formula in ("null2P", "null2I"):
        HW, s = _need(inputs, "HW", "s")
        HW = LaurentPoly._lift(HW)
        if HW.is_zero() or HW.low() < 1:
            raise HypothesisViolation("W must be nonzero and in positive degrees")
        if s <= HW.high():
            # otherwise the shifted dual has classes in degree 0
            raise HypothesisViolation("shift must exceed the top degree of W")
        den = 1 - T * HW - T ** (s + 1) * substitute_inverse(HW) + T ** (s + 2)
        P = RationalSeries(1, den)
        if formula == "null2P":
            return P
        return P * RationalSeries(den).shift(-s)
    if formula == "syzygyC":
        IBplus, P = _need(inputs, "I_plus", "P")
        return _ser(IBplus) - T * _ser(P)
    if formula == "trivialI":
        IC, PC, PB, HW = _need(inputs, "IC", "PC", "PB", "HW")
        C, W = inputs.get("C"), inputs.get("W")
        if C is not None and C.top == 0:
            raise HypothesisViolation("C_+ must be nonzero")
        if W is not None and any(W.act.get((i, j)) and any(v for row in W.act[i, j] for v in row)
                                 for (i, j) in W.act if i > 0):
            raise HypothesisViolation("C_+ must annihilate W")
        HW = LaurentPoly._lift(HW)
        return _ser(PB) * (_ser(IC) / _ser(PC) + substitute_inverse(HW))
    if formula == "truncatedI":
        P, s = _need(inputs, "P", "s")
        E = inputs.get("E")
        if E is not None and poincare_duality(E) != (True, s):
            raise HypothesisViolation(f"E lacks Poincare duality in degree {s}")
        P = _ser(P)
        return (P - 1).shift(-s - 1) - T * P
    raise ValueError(f"unknown formula {formula!r}")
