"""Minimal resolutions by degreewise exact linear algebra.

Two modes share the syzygy machinery but not their bookkeeping:

* dg mode -- over a finite-dimensional graded algebra with zero differential.
  A generator of the s-th free module sitting in internal degree u has total
  degree s + u, and Poincare series count generators by total degree.  Over
  the exterior algebra on one degree-1 generator, k has P = 1/(1-t^2).
* ring mode -- over a graded commutative ring k[x]/I (truncated in internal
  degree).  Betti numbers stay bigraded; over k[x]/(x^2), beta_i(k) = 1.

The syzygy step: cover a module X minimally by a free module G = A (x) V and
take the kernel of G -> X.  All modules are stored through the action of a
fixed set of algebra generators, which is all the cover/kernel step needs.

For Poincare series in dg mode the engine may also split off direct summands
isomorphic to shifted copies of k (socle elements outside A_+X); their
contribution is t^shift * P_k, and P_k is solved from its own syzygy chain.
Without splitting, the computation is the plain minimal resolution.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .galg import GradedAlgebra, GradedModule, dual, regular_module, residue_module
from .linalg import Echelon, axpy, kernel, rank


# ---------------------------------------------------------------- internal modules

class _Mod:
    """dims: degree -> dimension; gact[g][u][k]: generator g applied to basis k of degree u."""

    __slots__ = ("dims", "gact")

    def __init__(self, dims, gact):
        self.dims = dims
        self.gact = gact

    def degrees(self):
        return sorted(self.dims)

    def total(self):
        return sum(self.dims.values())


def _from_module(alg, M: GradedModule, hi) -> _Mod:
    dims = {u: d for u, d in M.dims.items() if u <= hi}
    gact = []
    for dg, idx in alg.generators:
        per = {}
        for u, d in dims.items():
            if u + dg in dims:
                per[u] = [M.acts(dg, idx, u, m) for m in range(d)]
        gact.append(per)
    return _Mod(dims, gact)


def _apply_gen(X: _Mod, g: int, u: int, w: dict, p: int) -> dict:
    images = X.gact[g].get(u)
    out = {}
    if images is None:
        return out
    for k, c in w.items():
        axpy(out, c, images[k], p)
    return out


def _decomposables(alg, X: _Mod, u: int) -> Echelon:
    ech = Echelon(alg.field)
    for g, (dg, _) in enumerate(alg.generators):
        images = X.gact[g].get(u - dg)
        if images:
            for v in images:
                if v:
                    ech.add(v)
    return ech


@dataclass
class _Step:
    gens: dict            # u -> list of basis indices of X_u that minimally generate X
    kernel: _Mod          # the syzygy module, degrees <= hi
    columns: dict = None  # u -> list of (i, a, gu, gk) naming the basis of G_u
    embed: dict = None    # u -> list of kernel vectors in column coordinates
    minimal: bool = True
    dropped: dict = None  # u -> copies of k split off with the ideal J


def _socle_generators(alg):
    """Indices of algebra generators g with B_+ g = 0."""
    gens = alg.generators
    return [g for g, (dg, idx) in enumerate(gens)
            if all(not alg.mul(dh, h, dg, idx) for dh, h in gens)]


def _syzygy(alg, X: _Mod, gen_hi, hi, keep=False, zero_gens=(), dec=None) -> _Step:
    """Minimal generators of X and the kernel of the cover, up to degree hi.

    ``zero_gens`` lists socle generators of the algebra acting by zero on X.
    They span an ideal J with J*B_+ = 0 and J outside B_+^2, so J (x) V sits
    in the kernel as a direct sum of copies of k.  The cover is then taken
    over B/J and the copies of k are reported in ``step.dropped``.
    """
    F, p = alg.field, alg.field.p
    gens_alg = alg.generators
    fac = alg.factorization
    one = F(1)
    jbasis = {gens_alg[g] for g in zero_gens}
    mult = alg.mult
    gens = {}
    for u in sorted(X.dims):
        if u > gen_hi:
            continue
        ech = dec[u] if dec is not None and u in dec else _decomposables(alg, X, u)
        gk = [k for k in range(X.dims[u]) if k not in ech]
        if gk:
            gens[u] = gk

    img_cache = {}

    def image(i, a, gu, gk):
        key = (i, a, gu, gk)
        v = img_cache.get(key)
        if v is not None:
            return v
        if i == 0:
            v = {gk: one}
        else:
            v = {}
            for coef, g, a2 in fac[i][a]:
                dg = gens_alg[g][0]
                w = image(i - dg, a2, gu, gk)
                if w:
                    axpy(v, coef, _apply_gen(X, g, gu + i - dg, w, p), p)
        img_cache[key] = v
        return v

    columns, colindex, kern, kpos = {}, {}, {}, {}
    minimal = True
    lo = min(X.dims) if X.dims else 0
    for u in range(lo, hi + 1):
        cols = []
        for gu, gks in gens.items():
            i = u - gu
            if i < 0 or i >= len(alg.dims):
                continue
            for gk in gks:
                for a in range(alg.dims[i]):
                    if (i, a) not in jbasis:
                        cols.append((i, a, gu, gk))
        if not cols:
            continue
        images = [image(*c) for c in cols]
        kv = kernel(images, F)
        if not kv:
            continue
        columns[u] = cols
        colindex[u] = {c: j for j, c in enumerate(cols)}
        kern[u] = kv
        kpos[u] = {max(v): idx for idx, v in enumerate(kv)}
        if keep:
            for v in kv:
                if any(cols[j][0] == 0 for j in v):
                    minimal = False

    dropped = {}
    for i, a in jbasis:
        for gu, gks in gens.items():
            if gu + i <= hi:
                dropped[gu + i] = dropped.get(gu + i, 0) + len(gks)

    dims = {u: len(v) for u, v in kern.items()}
    gact = []
    zero = set(zero_gens)
    for g, (dg, gidx) in enumerate(gens_alg):
        per = {}
        if g in zero:
            gact.append(per)
            continue
        for u, kv in kern.items():
            t = u + dg
            if t not in kern:
                continue
            cols = columns[u]
            # kernel vectors carry a single free column each, so coordinates
            # in the kernel basis are the entries on free columns
            tpos = kpos[t]
            target = {key: tpos[col] for key, col in colindex[t].items() if col in tpos}
            colmap = {}
            out = []
            for z in kv:
                w = {}
                for j, c in z.items():
                    m = colmap.get(j)
                    if m is None:
                        i, a, gu, gk = cols[j]
                        tab = mult.get((dg, i))
                        m = []
                        if tab is not None:
                            for a2, c2 in tab[gidx][a].items():
                                kc = target.get((i + dg, a2, gu, gk))
                                if kc is not None:
                                    m.append((kc, c2))
                        colmap[j] = m
                    for kc, c2 in m:
                        w[kc] = w.get(kc, 0) + c * c2
                if p:
                    out.append({k: x % p for k, x in w.items() if x % p})
                else:
                    out.append({k: x for k, x in w.items() if x})
            per[u] = out
        gact.append(per)
    K = _Mod(dims, gact)
    if keep:
        return _Step(gens, K, columns, kern, minimal, dropped)
    return _Step(gens, K, dropped=dropped)


def _rref(F, vectors) -> dict:
    """Reduced echelon rows (pivot -> row) spanning the given vectors."""
    E = Echelon(F)
    for v in vectors:
        E.add(v)
    rows = {}
    for c in sorted(E.rows):
        r = dict(E.rows[c])
        for c2 in [c2 for c2 in r if c2 in rows]:
            x = r.get(c2)
            if x:
                axpy(r, -x, rows[c2], F.p)
        rows[c] = r
    return rows


def _reduce_rref(w: dict, rows: dict, p: int) -> dict:
    hit = [c for c in w if c in rows]
    if not hit:
        return w
    w = dict(w)
    for c in hit:
        x = w.get(c)
        if x:
            axpy(w, -x, rows[c], p)
    return w


def _quotient(alg, X: _Mod, qrows: dict, decs: dict):
    """X/Q for a submodule Q given by reduced echelon rows per degree.

    ``decs`` maps degree -> echelon rows of A_+X; the result carries the rows
    of A_+(X/Q), the image of A_+X.
    """
    F, p = alg.field, alg.field.p
    keep, pos = {}, {}
    for u, d in X.dims.items():
        rows = qrows.get(u, ())
        kept = [k for k in range(d) if k not in rows]
        if kept:
            keep[u] = kept
            pos[u] = {k: i for i, k in enumerate(kept)}
    gact = []
    for g, (dg, _) in enumerate(alg.generators):
        per = {}
        for u, kept in keep.items():
            t = u + dg
            im = X.gact[g].get(u)
            if not im or t not in keep:
                continue
            rows, tpos = qrows.get(t), pos[t]
            out = []
            for k in kept:
                w = _reduce_rref(im[k], rows, p) if rows else im[k]
                out.append({tpos[j]: x for j, x in w.items()})
            per[u] = out
        gact.append(per)
    newdecs = {}
    for u, kept in keep.items():
        rows, p_u = qrows.get(u), pos[u]
        E = Echelon(F)
        for r in decs.get(u, {}).values():
            if rows:
                r = _reduce_rref(r, rows, p)
            if r:
                E.add({p_u[j]: x for j, x in r.items()})
        newdecs[u] = E.rows
    return _Mod({u: len(k) for u, k in keep.items()}, gact), newdecs


def _common_kernel(F, X: _Mod, u: int, which) -> list:
    """Vectors of X_u killed by every generator in ``which``."""
    d = X.dims[u]
    acting = [im for im in (X.gact[g].get(u) for g in which) if im]
    if not acting:
        return [{k: F(1)} for k in range(d)]
    images = [{} for _ in range(d)]
    off = 0
    for im in acting:
        width = 0
        for k, v in enumerate(im):
            row = images[k]
            for key, c in v.items():
                row[off + key] = c
                if key >= width:
                    width = key + 1
        off += width
    return kernel(images, F)


def _split(alg, X: _Mod, ext_gens=()):
    """Split off summands of known cyclic types.

    Type "k": socle vectors independent modulo A_+X span copies of k.
    Type g (an odd generator): with J the ideal of the other generators,
    B/J = k[g]/(g^2) is self-injective, so vectors x with Jx = 0 and gx
    independent modulo JX generate copies of B/J that are direct summands.

    Returns (X', {type: {u: count}}, decomposables of X' per degree).
    """
    F, p = alg.field, alg.field.p
    ngen = len(alg.generators)
    decs = {u: dict(_decomposables(alg, X, u).rows) for u in X.dims}
    counts = {}
    qrows = {}
    for u in sorted(X.dims):
        soc = _common_kernel(F, X, u, range(ngen))
        if not soc:
            continue
        D = Echelon(F)
        D.rows = dict(decs[u])
        chosen = [z for z in soc if D.add(z) is not None]
        if chosen:
            qrows[u] = _rref(F, chosen)
    if qrows:
        counts["k"] = {u: len(r) for u, r in qrows.items()}
        X, decs = _quotient(alg, X, qrows, decs)
    for g in ext_gens:
        dg = alg.generators[g][0]
        others = [h for h in range(ngen) if h != g]
        qvecs, cnt = {}, {}
        for u in sorted(X.dims):
            t = u + dg
            img = X.gact[g].get(u)
            if not img or not any(img):
                continue
            Z = _common_kernel(F, X, u, others)
            if not Z:
                continue
            JX = Echelon(F)
            for h in others:
                ims = X.gact[h].get(t - alg.generators[h][0])
                if ims:
                    for v in ims:
                        if v:
                            JX.add(v)
            chosen = []
            for z in Z:
                w = _apply_gen(X, g, u, z, p)
                if w and JX.add(w) is not None:
                    chosen.append((z, w))
            if chosen:
                cnt[u] = len(chosen)
                qvecs.setdefault(u, []).extend(z for z, _ in chosen)
                qvecs.setdefault(t, []).extend(w for _, w in chosen)
        if cnt:
            counts[g] = cnt
            X, decs = _quotient(alg, X, {u: _rref(F, vs) for u, vs in qvecs.items()}, decs)
    return X, counts, {u: _wrap(F, rows) for u, rows in decs.items()}


def _wrap(F, rows):
    E = Echelon(F)
    E.rows = rows
    return E


def _exterior_generators(alg):
    """Odd generators g outside the socle: candidates for k[g]/(g^2) summands."""
    soc = set(_socle_generators(alg))
    return [g for g, (dg, _) in enumerate(alg.generators) if dg % 2 == 1 and g not in soc]


# ---------------------------------------------------------------- dg mode

@dataclass
class BettiTable:
    mode: str
    entries: dict
    exact: dict = field(default_factory=dict)
    minimal: bool = True
    dropped: dict = None  # u -> copies of k split off with the ideal J

    def ranks(self, lo, hi):
        return [self.entries.get(i, 0) for i in range(lo, hi + 1)]

    def rows(self):
        out = []
        for key in sorted(self.entries):
            if self.mode == "dg":
                out.append((key, self.entries[key], self.exact.get(key, True)))
            else:
                i, j = key
                out.append((i, j, self.entries[key], self.exact.get(key, True)))
        return out


def _chain(alg, M: _Mod, N: int, split: bool, split_first: bool, keep=False, levels=None):
    """Walk the syzygies of M; count generators by (s, u) up to total degree N.

    With ``levels`` set (ring mode) the bound N applies to the internal
    degree at every level and the walk stops after that many syzygies.

    Returns (gens, summands, steps): gens[(s,u)] generator counts and
    summands[type][(s,u)] the number of split-off cyclic summands of each
    type in the s-th syzygy, generated in degree u.
    """
    gens, summands, steps = {}, {}, []
    X = M
    s = 0
    gdeg = [dg for dg, _ in alg.generators]
    socle = _socle_generators(alg) if split else []
    ext = _exterior_generators(alg) if split else []

    def record(kind, level, u, c):
        d = summands.setdefault(kind, {})
        d[(level, u)] = d.get((level, u), 0) + c

    while X.dims:
        if levels is not None and s > levels:
            break
        hi = N - s if levels is None else N
        X = _restrict_degrees(X, hi, gdeg)
        if not X.dims:
            break
        dec = None
        if split and (s > 0 or split_first):
            X, counts, dec = _split(alg, X, ext)
            for kind, per in counts.items():
                for u, c in per.items():
                    record(kind, s, u, c)
            if not X.dims:
                break
        zero = ()
        if split:
            zero = [g for g in socle if not any(any(v) for v in X.gact[g].values())]
        step = _syzygy(alg, X, hi, hi - 1 if levels is None else hi, keep=keep, zero_gens=zero, dec=dec)
        for u, ks in step.gens.items():
            gens[(s, u)] = len(ks)
        for u, c in (step.dropped or {}).items():
            record("k", s + 1, u, c)
        if keep:
            steps.append((X, step))
        X = step.kernel
        s += 1
    return gens, summands, steps


def _restrict_degrees(X: _Mod, hi, gdeg) -> _Mod:
    if all(u <= hi for u in X.dims):
        return X
    dims = {u: d for u, d in X.dims.items() if u <= hi}
    gact = [{u: v for u, v in per.items() if u in dims and u + dg <= hi} for per, dg in zip(X.gact, gdeg)]
    return _Mod(dims, gact)


def _type_module(alg, kind) -> _Mod:
    gact = [dict() for _ in alg.generators]
    if kind == "k":
        return _Mod({0: 1}, gact)
    dg = alg.generators[kind][0]
    gact[kind] = {0: [{0: alg.field(1)}]}
    return _Mod({0: 1, dg: 1}, gact)


def _type_series(alg, N: int, kinds=("k",)) -> dict:
    """Poincare series (through t^N) of k and of each cyclic type met on the way.

    Each type's chain splits off further summands; the series solve the
    resulting triangular system P_T = Q_T + sum_T' R_{T,T'} P_T'.
    """
    Q, R = {}, {}
    todo = list(kinds)
    while todo:
        kind = todo.pop()
        if kind in Q:
            continue
        gens, summands, _ = _chain(alg, _type_module(alg, kind), N, split=True, split_first=False)
        q = [0] * (N + 1)
        for (s, u), c in gens.items():
            if s + u <= N:
                q[s + u] += c
        Q[kind] = q
        R[kind] = {}
        for other, per in summands.items():
            r = [0] * (N + 1)
            for (s, u), c in per.items():
                if s + u <= N:
                    r[s + u] += c
            if r[0]:
                raise AssertionError("summand split off in total degree 0")
            R[kind][other] = r
            todo.append(other)
    P = {kind: [0] * (N + 1) for kind in Q}
    for i in range(N + 1):
        for kind in Q:
            x = Q[kind][i]
            for other, r in R[kind].items():
                Po = P[other]
                x += sum(r[j] * Po[i - j] for j in range(1, i + 1))
            P[kind][i] = x
    return P


_SERIES_CACHE = {}


def type_series(alg, N: int, kinds=("k",)) -> dict:
    hit = _SERIES_CACHE.get(id(alg))
    if hit is not None and hit[0] is alg and hit[1] >= N and all(k in hit[2] for k in kinds):
        return {k: v[: N + 1] for k, v in hit[2].items()}
    if hit is not None and hit[0] is alg:
        kinds = set(kinds) | set(hit[2])
    P = _type_series(alg, N, tuple(kinds))
    _SERIES_CACHE[id(alg)] = (alg, N, P)
    return P


def residue_poincare(alg, N: int) -> list:
    """Coefficients of P_k through t^N (dg mode)."""
    return type_series(alg, N)["k"]


def _module_series(alg, M: GradedModule, N: int) -> dict:
    """total degree -> rank of Tor(M, k), for total degrees <= N."""
    return _mod_series(alg, _from_module(alg, M, N), N)


def _mod_series(alg, X: _Mod, N: int) -> dict:
    gens, summands, _ = _chain(alg, X, N, split=True, split_first=True)
    out = {}
    for (s, u), c in gens.items():
        if s + u <= N:
            out[s + u] = out.get(s + u, 0) + c
    shifts = [s + u for per in summands.values() for s, u in per]
    if shifts:
        series = type_series(alg, N - min(shifts), tuple(summands))
        for kind, per in summands.items():
            P = series[kind]
            for (s, u), c in per.items():
                base = s + u
                for i, x in enumerate(P):
                    if base + i > N:
                        break
                    if x:
                        out[base + i] = out.get(base + i, 0) + c * x
    return out


def poincare_oracle(B: GradedAlgebra, M: GradedModule | None = None, N: int = 10) -> list:
    """Coefficients of P^B_M for t^lo .. t^N where lo = lowest degree of M (lo = 0 for M = k)."""
    if M is None:
        return residue_poincare(B, N)
    lo = min(M.dims)
    series = _module_series(B, M, N)
    return [series.get(i, 0) for i in range(lo, N + 1)]


def syzygy_poincare(B: GradedAlgebra, M: GradedModule, N: int = 10):
    """(lo, coefficients) of the Poincare series of the first syzygy of M.

    The syzygy is the kernel of a minimal free cover G -> M, so it sits
    inside B_+ G.
    """
    X = _from_module(B, M, N)
    K = _syzygy(B, X, N, N).kernel
    if not K.dims:
        return 0, []
    lo = min(K.dims)
    series = _mod_series(B, K, N)
    return lo, [series.get(i, 0) for i in range(lo, N + 1)]


def bass_oracle(B: GradedAlgebra, N: int = 10) -> list:
    """Coefficients of I_B on the window t^{-top} .. t^N, computed as P^B of B*."""
    Bstar = dual(regular_module(B), 0)
    series = _module_series(B, Bstar, N)
    return [series.get(i, 0) for i in range(-B.top, N + 1)]


def module_bass_oracle(B: GradedAlgebra, N_mod: GradedModule, N: int = 10):
    """(lo, coefficients) of I^B_N on t^lo .. t^N, via P^B of the dual module."""
    D = dual(N_mod, 0)
    lo = min(D.dims)
    series = _module_series(B, D, N)
    return lo, [series.get(i, 0) for i in range(lo, N + 1)]


def dg_resolution(B: GradedAlgebra, M: GradedModule, bound: int) -> BettiTable:
    """Explicit minimal resolution (no summand splitting), ranks by total degree."""
    X = _from_module(B, M, bound)
    gens, _, steps = _chain(B, X, bound, split=False, split_first=False, keep=True)
    entries = {}
    for (s, u), c in gens.items():
        if s + u <= bound:
            entries[s + u] = entries.get(s + u, 0) + c
    minimal = all(step.minimal for _, step in steps)
    lo = min(M.dims)
    for i in range(lo, bound + 1):
        entries.setdefault(i, 0)
    return BettiTable("dg", entries, {i: True for i in entries}, minimal)


def _levels(steps):
    levels = []
    for s, (Xs, step) in enumerate(steps):
        gl = [(u, k) for u in sorted(step.gens) for k in step.gens[u]]
        levels.append({"gens": gl, "diff": {}})
    for s in range(1, len(steps)):
        prev = steps[s - 1][1]
        cur = steps[s][1]
        diff = {}
        for u, ks in cur.gens.items():
            cols = prev.columns[u]
            for k in ks:
                z = prev.embed[u][k]
                diff[(u, k)] = {cols[j]: c for j, c in z.items()}
        levels[s]["diff"] = diff
    return levels


def explicit_resolution(alg, M: GradedModule, bound: int):
    """Levels of the minimal resolution of M with differentials (dg total-degree bound).

    Returns a list of levels; level s is a dict with
      gens: list of (u, k) generator names (u internal degree),
      diff: for s >= 1, {(u, k): {(i, a, gu, gk): coef}} the image of each
            generator in the previous free module (a in A_i, (gu, gk) a
            generator of level s-1).
    """
    X = _from_module(alg, M, bound)
    _, _, steps = _chain(alg, X, bound, split=False, split_first=False, keep=True)
    return _levels(steps), all(st.minimal for _, st in steps)


def ext_oracle(B: GradedAlgebra, N_mod: GradedModule, ilo: int, ihi: int) -> list:
    """dim Ext^i_B(k, N) for ilo <= i <= ihi, from Hom_B(F, N), F resolving k.

    Hom_B(F, N)_j = prod over generators g of N_{|g|+j}; Ext^i is its homology
    in degree j = -i.  F must reach total degree top(N) + ihi + 1.
    """
    F, p = B.field, B.field.p
    nlo, nhi = min(N_mod.dims), max(N_mod.dims)
    bound = nhi + ihi + 1
    levels, _ = explicit_resolution(B, residue_module(B), bound)
    gens = []   # (s, u, k, total)
    for s, lev in enumerate(levels):
        for u, k in lev["gens"]:
            gens.append((s, u, k, s + u))

    def hom_basis(j):
        out = []
        for s, u, k, tot in gens:
            deg = tot + j
            for x in range(N_mod.dim(deg)):
                out.append((s, u, k, x))
        return out

    def boundary_rank(j):
        """rank of the map Hom_j -> Hom_{j-1}, phi -> phi o d."""
        src = hom_basis(j)
        tgt = hom_basis(j - 1)
        tindex = {b: n for n, b in enumerate(tgt)}
        if not src or not tgt:
            return 0
        # (phi o d)(g) = sum_{(i,a,h)} c * (+-) a . phi(h)
        cols = {b: {} for b in src}
        for s, lev in enumerate(levels):
            if s == 0:
                continue
            for (u, k), dv in lev["diff"].items():
                tot = s + u
                deg_target = tot + j - 1
                if N_mod.dim(deg_target) == 0:
                    continue
                for (i, a, gu, gk), c in dv.items():
                    htot = s - 1 + gu
                    sign = -1 if (i * j) % 2 else 1
                    hdeg = htot + j
                    for x in range(N_mod.dim(hdeg)):
                        res = N_mod.acts(i, a, hdeg, x)
                        for y, cy in res.items():
                            key = (s, u, k, y)
                            col = cols[(s - 1, gu, gk, x)]
                            val = col.get(tindex[key], 0) + sign * c * cy
                            val = val % p if p else val
                            if val:
                                col[tindex[key]] = val
                            else:
                                col.pop(tindex[key], None)
        ech = Echelon(F)
        for v in cols.values():
            if v:
                ech.add(v)
        return len(ech)

    out = []
    for i in range(ilo, ihi + 1):
        j = -i
        dim_j = len(hom_basis(j))
        out.append(dim_j - boundary_rank(j) - boundary_rank(j + 1))
    return out


# ---------------------------------------------------------------- ring mode

WINDOW_TOO_SMALL = "WindowTooSmall"


def ring_dual(alg) -> GradedModule:
    """Graded k-dual of a truncated commutative ring, (x mu)(m) = mu(x m), no signs."""
    F = alg.field
    dims = {-j: d for j, d in enumerate(alg.dims) if d}
    act = {}
    for j, dj in dims.items():
        for i in range(1, alg.top + 1):
            if (i + j) not in dims:
                continue
            src = -i - j
            out = [[{} for _ in range(dj)] for _ in range(alg.dims[i])]
            for a in range(alg.dims[i]):
                for m in range(alg.dims[src]):
                    for b, x in alg.mul(i, a, src, m).items():
                        out[a][b][m] = x
            act[i, j] = out
    return GradedModule(alg, dims, act)


def _ring_steps(R, target, levels, D):
    alg = R.truncated_algebra(D)
    if target == "k":
        M = residue_module(alg)
    elif target == "dual":
        if R.top_degree(D) is None:
            raise ValueError("the dual target needs an artinian ring inside the window")
        M = ring_dual(alg)
    else:
        raise ValueError(f"unknown target {target!r}")
    X = _from_module(alg, M, D)
    _, _, steps = _chain(alg, X, D, split=False, split_first=False, keep=True, levels=levels)
    return alg, steps


def ring_resolution(R, target="k", imax: int = 4, D: int | None = None) -> BettiTable:
    """Bigraded Betti numbers beta_{i,j} of k (or of the dual of R) over R, i <= imax.

    The ring is truncated above internal degree D; an entry is marked exact
    when j <= D - (largest degree of a defining relation).
    """
    if D is None:
        D = imax + 2 * max(R.max_degree, 1)
    alg, steps = _ring_steps(R, target, imax, D)
    entries, exact = {}, {}
    cut = D - R.max_degree
    for s, (_, step) in enumerate(steps):
        for u, ks in step.gens.items():
            entries[s, u] = len(ks)
            exact[s, u] = u <= cut
    minimal = all(st.minimal for _, st in steps)
    table = BettiTable("ring", entries, exact, minimal)
    table.window = D
    return table


def betti_totals(table: BettiTable, imax: int) -> list:
    out = [0] * (imax + 1)
    for (i, j), c in table.entries.items():
        if i <= imax:
            out[i] += c
    return out


@dataclass
class RingBass:
    mu: list
    exact: list
    by_degree: dict   # (i, u) -> rank of Ext^i(k, R) in internal degree u
    window: int


def bass_ring_oracle(R, imax: int, D: int | None = None) -> RingBass:
    """mu^i = dim Ext^i_R(k, R) for i <= imax, from graded maps of the resolution of k into R.

    For artinian R (R_j = 0 somewhere inside the window) the numbers are
    certified: generators of the i-th free module sit in degrees at most
    i * top(R), and the window is checked against that.  Otherwise entries
    are marked inexact.
    """
    if D is None:
        D = (imax + 2) * max(R.max_degree, 2) + 2
    alg, steps = _ring_steps(R, "k", imax + 1, D)
    levels = _levels(steps)
    F, p = alg.field, alg.field.p
    while len(levels) < imax + 2:
        levels.append({"gens": [], "diff": {}})
    top = R.top_degree(D)
    complete = [True]
    for s in range(1, imax + 2):
        prev = [u for u, _ in levels[s - 1]["gens"]]
        ok = complete[-1] and top is not None and (max(prev, default=0) + top <= D)
        complete.append(ok)

    def hom_basis(s, u):
        out = []
        for g in levels[s]["gens"]:
            deg = g[0] + u
            if 0 <= deg <= alg.top:
                out.extend((g, b) for b in range(alg.dims[deg]))
        return out

    def coboundary_rank(s, u):
        """rank of Hom^s_u -> Hom^{s+1}_u, phi -> phi o d."""
        src = hom_basis(s, u)
        tgt = hom_basis(s + 1, u)
        if not src or not tgt:
            return 0
        tindex = {x: n for n, x in enumerate(tgt)}
        cols = {x: {} for x in src}
        for g2, dz in levels[s + 1]["diff"].items():
            for (i, a, gu, gk), c in dz.items():
                deg = gu + u
                if deg < 0 or deg > alg.top:
                    continue
                for b in range(alg.dims[deg]):
                    prod = alg.mul(i, a, deg, b)
                    if not prod:
                        continue
                    col = cols[((gu, gk), b)]
                    for b2, x in prod.items():
                        axpy(col, c * x, {tindex[(g2, b2)]: 1}, p)
        return rank(list(cols.values()), F)

    mu, exact, by_degree = [], [], {}
    for s in range(imax + 1):
        degs = [u for lev in levels[max(s - 1, 0): s + 2] for u, _ in lev["gens"]]
        here = [u for u, _ in levels[s]["gens"]]
        total = 0
        if here:
            lo = -max(here)
            hi = (top - min(here)) if top is not None else D - max(degs)
            for u in range(lo, hi + 1):
                dimh = len(hom_basis(s, u))
                if not dimh:
                    continue
                r_out = coboundary_rank(s, u)
                r_in = coboundary_rank(s - 1, u) if s > 0 else 0
                x = dimh - r_out - r_in
                if x:
                    by_degree[s, u] = x
                    total += x
        mu.append(total)
        exact.append(complete[s + 1] if s + 1 < len(complete) else False)
    return RingBass(mu, exact, by_degree, D)
