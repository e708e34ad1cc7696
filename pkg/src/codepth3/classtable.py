"""Class tags, invariant tuples, admissibility rules and the closed-form series.

For a local ring R of embedding codepth c <= 3 the Koszul homology algebra A
falls in one of the classes C(c), S, T, B, G(r), H(p,q).  Each class comes
with polynomials f, g in Z[t] such that

    P^R_k = (1+t)^(e-1) / g        I_R = t^d f / g.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from .powser import T, LaurentPoly, RationalSeries


class InadmissibleInvariants(ValueError):
    def __init__(self, verdict):
        super().__init__("; ".join(f"{name} {w}" for name, w in verdict.violations))
        self.verdict = verdict


class EquivalenceViolation(ValueError):
    pass


@dataclass(frozen=True)
class ClassId:
    kind: str  # one of C S T B G H
    params: tuple = ()

    def __post_init__(self):
        k, ps = self.kind, self.params
        want = {"C": 1, "S": 0, "T": 0, "B": 0, "G": 1, "H": 2}
        if k not in want or len(ps) != want[k]:
            raise ValueError(f"bad class {k}{ps}")
        if k == "C" and ps[0] < 0:
            raise ValueError("C(c) needs c >= 0")
        if k == "G" and ps[0] < 2:
            raise ValueError("G(r) needs r >= 2")
        if k == "H" and min(ps) < 0:
            raise ValueError("H(p,q) needs p, q >= 0")

    def __str__(self):
        if not self.params:
            return self.kind
        return f"{self.kind}({','.join(str(x) for x in self.params)})"

    @classmethod
    def parse(cls, text: str) -> "ClassId":
        m = re.fullmatch(r"\s*([CSTBGH])\s*(?:\(([\d,\s]*)\))?\s*", text)
        if not m:
            raise ValueError(f"cannot parse class {text!r}")
        params = tuple(int(x) for x in m.group(2).split(",")) if m.group(2) else ()
        return cls(m.group(1), params)


def C(c):
    return ClassId("C", (c,))


def G(r):
    return ClassId("G", (r,))


def H(p, q):
    return ClassId("H", (p, q))


S = ClassId("S")
TT = ClassId("T")
BB = ClassId("B")


@dataclass(frozen=True)
class RingInvariants:
    e: int
    d: int
    h: int
    l: int
    m: int
    n: int
    p: int = 0
    q: int = 0
    r: int = 0
    c: int | None = None

    def __post_init__(self):
        if self.c is None:
            object.__setattr__(self, "c", self.e - self.d)
        if self.c != self.e - self.d:
            raise ValueError("codepth must equal e - d")

    @classmethod
    def of(cls, e, d, h, l, n, p=0, q=0, r=0, m=None):
        """Build with m defaulted from the rank alternation (m = l + n in codepth 3)."""
        if m is None:
            m = {0: 0, 1: 0, 2: l}.get(e - d, l + n)
        return cls(e, d, h, l, m, n, p, q, r)

    def sextuple(self):
        return (self.h, self.l, self.n, self.p, self.q, self.r)

    def as_dict(self):
        return {k: getattr(self, k) for k in "e d c h l m n p q r".split()}


def canonical_invariants(cls: ClassId, e: int, d: int, h: int = 0, l: int | None = None, n: int | None = None) -> RingInvariants:
    """Fill in the ranks forced by the class row (p, q, r, m and, for C(c), l and n)."""
    k = cls.kind
    if k == "C":
        c = cls.params[0]
        ext = {0: (-1, 0, 0, 0, 0, 0), 1: (0, 0, 0, 0, 0, 0), 2: (1, 1, 0, 1, 0, 0), 3: (2, 3, 1, 3, 1, 3)}
        if c not in ext:
            raise ValueError("codepth above 3 is out of scope")
        l_, m_, n_, p_, q_, r_ = ext[c]
        return RingInvariants(e, d, h, l_, m_, n_, p_, q_, r_)
    if k == "S":
        return RingInvariants(e, d, h, l, l, 0, 0, 0, 0)
    pqr = {"T": (3, 0, 0), "B": (1, 1, 2)}
    if k in pqr:
        p_, q_, r_ = pqr[k]
    elif k == "G":
        p_, q_, r_ = 0, 1, cls.params[0]
    else:
        p_, q_ = cls.params
        r_ = q_
    return RingInvariants(e, d, h, l, l + n, n, p_, q_, r_)


@dataclass
class AdmissibilityVerdict:
    ok: bool
    violations: list = field(default_factory=list)
    gorenstein: bool = False

    def __bool__(self):
        return self.ok


def _is_ci(cls):
    return cls.kind == "C"


def table_row_violations(cls: ClassId, inv: RingInvariants) -> list:
    """Lower bounds and fixed ranks of the non-Gorenstein admissibility table."""
    v = []
    h, l, n, p, q, r = inv.sextuple()

    def need(name, cond, **w):
        if not cond:
            v.append((name, w))

    k = cls.kind
    if k == "S":
        need("c = 2", inv.c == 2, c=inv.c)
        need("h <= 1", h <= 1, h=h)
        need("l >= 2-h", l >= 2 - h, l=l, h=h)
        need("n = 0", n == 0, n=n)
        need("(p,q,r) = (0,0,0)", (p, q, r) == (0, 0, 0), p=p, q=q, r=r)
    elif k in "TBG":
        need("c = 3", inv.c == 3, c=inv.c)
        need("h <= 1", h <= 1, h=h)
        if k == "T":
            need("l >= 3-h", l >= 3 - h, l=l, h=h)
            need("n >= 2", n >= 2, n=n)
            need("(p,q,r) = (3,0,0)", (p, q, r) == (3, 0, 0), p=p, q=q, r=r)
        elif k == "B":
            need("l >= 4-h", l >= 4 - h, l=l, h=h)
            need("n >= 2-h", n >= 2 - h, n=n, h=h)
            need("(p,q,r) = (1,1,2)", (p, q, r) == (1, 1, 2), p=p, q=q, r=r)
        else:
            rr = cls.params[0]
            need("l >= max{4-h, r+1}", l >= max(4 - h, rr + 1), l=l, h=h, r=rr)
            need("n >= 2-h", n >= 2 - h, n=n, h=h)
            need("(p,q,r) = (0,1,r)", (p, q, r) == (0, 1, rr), p=p, q=q, r=r)
    elif k == "H":
        pp, qq = cls.params
        need("c = 3", inv.c == 3, c=inv.c)
        need("h <= 2", h <= 2, h=h)
        need("l >= max{3-h, p, q+1, 2}", l >= max(3 - h, pp, qq + 1, 2), l=l, h=h, p=pp, q=qq)
        need("n >= max{2-h, p-1, q, 1}", n >= max(2 - h, pp - 1, qq, 1), n=n, h=h, p=pp, q=qq)
        need("(p,q,r) = (p,q,q)", (p, q, r) == (pp, qq, qq), p=p, q=q, r=r)
    return v


def _gorenstein_g(cls, inv):
    return cls.kind == "G" and inv.c == 3 and inv.n == 1 and inv.r == inv.l + 1 and inv.h == 0


def admissible(cls: ClassId, inv: RingInvariants) -> AdmissibilityVerdict:
    v = []
    h, l, n, p, q, r = inv.sextuple()

    def need(name, cond, **w):
        if not cond:
            v.append((name, w))

    need("c = e - d", inv.c == inv.e - inv.d, c=inv.c, e=inv.e, d=inv.d)
    need("h >= 0", h >= 0, h=h)
    need("d >= 0", inv.d >= 0, d=inv.d)
    need("c <= 3", inv.c <= 3, c=inv.c)
    if inv.c == 3:
        need("m = l + n", inv.m == l + n, m=inv.m, l=l, n=n)
    if inv.c == 2:
        need("m = l", inv.m == l, m=inv.m, l=l)
    need("l + 1 >= c - h >= 0", l + 1 >= inv.c - h >= 0, l=l, c=inv.c, h=h)

    gorenstein = False
    if _is_ci(cls):
        c = cls.params[0]
        need("c matches class", inv.c == c, c=inv.c)
        need("l = c - 1", l == c - 1, l=l, c=c)
        need("h = 0", h == 0, h=h)
        gorenstein = True
        ref = canonical_invariants(cls, inv.e, inv.d)
        need("(m,n,p,q,r) of the exterior algebra", (inv.m, n, p, q, r) == (ref.m, ref.n, ref.p, ref.q, ref.r),
             m=inv.m, n=n, p=p, q=q, r=r)
        return AdmissibilityVerdict(not v, v, gorenstein)

    # every remaining class is not a complete intersection
    need("l >= c - h >= 1", l >= inv.c - h >= 1, l=l, c=inv.c, h=h)
    if l == 1:
        need("l = 1 forces c = 2 and h = 1", inv.c == 2 and h == 1, c=inv.c, h=h)
    if h == 2:
        need("h = 2 forces H(0,0)", cls == H(0, 0), cls=str(cls))

    if _gorenstein_g(cls, inv):
        gorenstein = True
        need("Gorenstein G(r): l even >= 4", l % 2 == 0 and l >= 4, l=l)
        need("(p,q,r) = (0,1,l+1)", (p, q, r) == (0, 1, l + 1), p=p, q=q, r=r)
        return AdmissibilityVerdict(not v, v, gorenstein)

    v.extend(table_row_violations(cls, inv))

    if inv.c == 3:
        if h == 0 and n == 1:
            v.append(("h = 0 and n = 1 forces Gorenstein G(l+1)", {"cls": str(cls), "r": r, "l": l}))
        k = cls.kind
        # rings with l = 2
        if l == 2:
            allowed = False
            if h == 1:
                allowed = (cls == H(2, 1) and n == 1) or (cls in (H(0, 0), H(1, 0)) and n >= 1) \
                    or (cls in (H(2, 0), TT) and n >= 2)
            elif h == 2:
                allowed = cls == H(0, 0)
            if not allowed:
                v.append(("l = 2 case list", {"cls": str(cls), "h": h, "n": n}))
        if l == 3 and h == 0:
            allowed = (cls == H(3, 2) and n == 2) or (k == "T" and n >= 3 and n % 2 == 1) \
                or (cls == H(3, 0) and n >= 4 and n % 2 == 0)
            if not allowed:
                v.append(("l = 3, h = 0 case list", {"cls": str(cls), "n": n}))
        if l >= 4 and h == 0 and n == 2 and p > 0:
            allowed = (k == "B" and l % 2 == 0) or (cls == H(1, 2) and l % 2 == 1)
            if not allowed:
                v.append(("l >= 4, h = 0, n = 2, p > 0 case list", {"cls": str(cls), "l": l}))
        flags = cor_conditions(inv, cls)
        if any(flags.values()) and not all(flags.values()):
            v.append(("l = q+1 <=> (l = p and n = q) <=> H(p,q) with n = p-1", flags))
        tau = 1 if k == "T" else 0
        if not ((l >= q + 2 and n >= p - tau) or (l == q + 1 and n == p - 1 - tau)):
            v.append(("l >= q+2 and n >= p-tau, or l = q+1 and n = p-1-tau", {"l": l, "n": n, "p": p, "q": q, "tau": tau}))
    return AdmissibilityVerdict(not v, v, gorenstein)


def cor_conditions(inv: RingInvariants, cls: ClassId) -> dict:
    h, l, n, p, q, r = inv.sextuple()
    return {
        "l = q+1": l == q + 1,
        "l = p and n = q": l == p and n == q,
        "H(p,q) with n = p-1": cls.kind == "H" and n == p - 1,
    }


def cor_class_report(inv: RingInvariants, cls: ClassId) -> dict:
    if inv.c != 3 or cls == C(3):
        raise ValueError("needs codepth 3 and a class other than C(3)")
    flags = cor_conditions(inv, cls)
    held = sum(flags.values())
    if held not in (0, 3):
        raise EquivalenceViolation(f"inconsistent invariants: {flags}")
    return flags


# ---------------------------------------------------------------- series

def fg_polys(cls: ClassId, inv: RingInvariants, force: bool = False):
    if not force:
        verdict = admissible(cls, inv)
        if not verdict.ok:
            raise InadmissibleInvariants(verdict)
    l, n = inv.l, inv.n
    t = T
    k = cls.kind
    if k == "C":
        c = cls.params[0]
        if c == 0:
            raise ValueError("C(0): g = 1/(1+t) is not a polynomial; use poincare_series/bass_series")
        f = g = (1 - t) ** c * (1 + t) ** (c - 1)
    elif k == "S":
        g = 1 - t - l * t**2
        f = l + t - t**2
    elif k == "T":
        g = 1 - t - l * t**2 - (n - 3) * t**3 - t**5
        f = n + l * t - 2 * t**2 - t**3 + t**4
    elif k == "B":
        g = 1 - t - l * t**2 - (n - 1) * t**3 + t**4
        f = n + (l - 2) * t - t**2 + t**4
    elif k == "G":
        r = cls.params[0]
        g = 1 - t - l * t**2 - n * t**3 + t**4
        f = n + (l - r) * t - (r - 1) * t**2 - t**3 + t**4
    else:
        p, q = cls.params
        if p + q == 0:
            g = 1 - t - l * t**2 - n * t**3
            f = n + l * t + t**2 - t**3
        else:
            g = 1 - t - l * t**2 - (n - p) * t**3 + q * t**4
            f = n + (l - q) * t - p * t**2 - t**3 + t**4
    return f, g


def _fg_series(cls, inv, force):
    if cls == C(0):
        if not force:
            verdict = admissible(cls, inv)
            if not verdict.ok:
                raise InadmissibleInvariants(verdict)
        g = RationalSeries(1, 1 + T)
        return g, g
    f, g = fg_polys(cls, inv, force)
    return RationalSeries(f), RationalSeries(g)


def poincare_series(cls: ClassId, inv: RingInvariants, force: bool = False) -> RationalSeries:
    _, g = _fg_series(cls, inv, force)
    return RationalSeries((1 + T) ** (inv.e - 1)) / g if inv.e >= 1 else RationalSeries(1, 1 + T) / g


def bass_series(cls: ClassId, inv: RingInvariants, force: bool = False) -> RationalSeries:
    f, g = _fg_series(cls, inv, force)
    return RationalSeries(T ** inv.d) * f / g


def lift_poincare(PAk, e: int) -> RationalSeries:
    return RationalSeries._lift(PAk) * (1 + T) ** e


def lift_bass(IA, e: int) -> RationalSeries:
    return RationalSeries._lift(IA).shift(e)


def algebra_poincare(cls: ClassId, inv: RingInvariants, force: bool = False) -> RationalSeries:
    """P^A_k = 1/((1+t) g)."""
    _, g = _fg_series(cls, inv, force)
    return 1 / (g * (1 + T))


def algebra_bass(cls: ClassId, inv: RingInvariants, force: bool = False) -> RationalSeries:
    """I_A = t^-c (1+t) f P^A_k = t^-c f / g."""
    f, g = _fg_series(cls, inv, force)
    return RationalSeries(T ** (-inv.c)) * f / g
