"""Sparse exact linear algebra over Q or F_p.

Vectors are dicts index -> nonzero scalar.  Scalars are ``Fraction`` in
characteristic 0 and ints in [0, p) otherwise.  ``Echelon`` keeps a row
echelon basis keyed by pivot, the pivot of a row being its largest index.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

from sympy import isprime


class FieldError(ValueError):
    pass


class Field:
    """The prime field of the given characteristic (0 means Q)."""

    __slots__ = ("p",)

    def __init__(self, char: int = 0):
        char = int(char)
        if char == 2:
            raise FieldError("characteristic 2 is not supported")
        if char < 0 or (char and not isprime(char)) or char >= 2**31:
            raise FieldError(f"characteristic must be 0 or an odd prime < 2^31, got {char}")
        self.p = char

    @property
    def char(self):
        return self.p

    def __call__(self, x):
        p = self.p
        if not p:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def inv(self, x):
        if self.p:
            return pow(x, -1, self.p)
        return 1 / x

    def neg(self, x):
        return (-x) % self.p if self.p else -x

    def norm(self, x):
        return x % self.p if self.p else x

    def to_int_pair(self, x):
        """Serialize a scalar as (numerator, denominator)."""
        if self.p:
            return (int(x), 1)
        return (x.numerator, x.denominator)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if not self.p else f"GF({self.p})"


def axpy(v: dict, c, w: dict, p: int) -> None:
    """v += c*w in place."""
    if p:
        for k, x in w.items():
            y = (v.get(k, 0) + c * x) % p
            if y:
                v[k] = y
            else:
                v.pop(k, None)
    else:
        for k, x in w.items():
            y = v.get(k, 0) + c * x
            if y:
                v[k] = y
            else:
                v.pop(k, None)


def scale(v: dict, c, p: int) -> dict:
    if p:
        return {k: x * c % p for k, x in v.items()}
    return {k: x * c for k, x in v.items()}


def lincomb(terms, p: int) -> dict:
    """sum of c*w for (c, w) in terms."""
    out = {}
    for c, w in terms:
        if c:
            axpy(out, c, w, p)
    return out


class Echelon:
    """Row echelon basis of a subspace, rows keyed by pivot (= max index)."""

    __slots__ = ("F", "p", "rows")

    def __init__(self, F: Field):
        self.F = F
        self.p = F.p
        self.rows = {}

    def __len__(self):
        return len(self.rows)

    def __contains__(self, pivot):
        return pivot in self.rows

    def reduce(self, v: dict, track: bool = False):
        """Return (remainder, coefficients) with v = remainder + sum coef[c]*rows[c]."""
        rows, p = self.rows, self.p
        v = dict(v)
        coeffs = {} if track else None
        heap = [-k for k in v if k in rows]
        if not heap:
            return v, coeffs
        heapq.heapify(heap)
        while heap:
            c = -heapq.heappop(heap)
            x = v.get(c)
            if x is None:
                continue
            if track:
                coeffs[c] = x
            for k, y in rows[c].items():
                old = v.get(k)
                if p:
                    z = ((old or 0) - x * y) % p
                else:
                    z = (old or 0) - x * y
                if z:
                    v[k] = z
                    if old is None and k in rows and k != c:
                        heapq.heappush(heap, -k)
                else:
                    v.pop(k, None)
        return v, coeffs

    def add(self, v: dict):
        """Insert v; return the new pivot, or None if v was dependent."""
        r, _ = self.reduce(v)
        if not r:
            return None
        c = max(r)
        x = r[c]
        if x != 1:
            r = scale(r, self.F.inv(x), self.p)
        self.rows[c] = r
        return c

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)[0]

    def coordinates(self, v: dict) -> dict:
        """Coefficients of v on the rows; v must lie in the span."""
        r, coeffs = self.reduce(v, track=True)
        if r:
            raise ValueError("vector not in span")
        return coeffs


def kernel(images, F: Field):
    """Kernel of the map e_j -> images[j], as vectors with distinct max index.

    The j-th kernel vector produced (if any) has max index j and coefficient 1
    there, so the returned list is already in ``Echelon`` form.
    """
    p = F.p
    ech = Echelon(F)
    combos = {}
    out = []
    one = F(1)
    for j, im in enumerate(images):
        r, coeffs = ech.reduce(im, track=True)
        combo = {j: one}
        for c, x in coeffs.items():
            axpy(combo, -x, combos[c], p)
        if r:
            c = max(r)
            inv = F.inv(r[c])
            ech.rows[c] = scale(r, inv, p)
            combos[c] = scale(combo, inv, p)
        else:
            out.append(combo)
    return out


def rank(vectors, F: Field) -> int:
    ech = Echelon(F)
    for v in vectors:
        ech.add(v)
    return len(ech)


def echelon_of(vectors, F: Field) -> Echelon:
    ech = Echelon(F)
    for v in vectors:
        ech.add(v)
    return ech


def rows_from_kernel(vectors, F: Field) -> Echelon:
    """Wrap the output of ``kernel`` as an Echelon without re-reducing."""
    ech = Echelon(F)
    for v in vectors:
        ech.rows[max(v)] = v
    return ech


def random_invertible(n: int, F: Field, rng):
    """Random invertible n x n matrix as a list of rows (dense lists)."""
    while True:
        if F.p:
            m = [[rng.randrange(F.p) for _ in range(n)] for _ in range(n)]
        else:
            m = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        vecs = [{j: x for j, x in enumerate(row) if x} for row in m]
        if rank(vecs, F) == n:
            return m


def invert(m, F: Field):
    """Inverse of a dense square matrix (Gauss-Jordan)."""
    n = len(m)
    p = F.p
    a = [[F(x) for x in row] + [F(1) if i == j else F(0) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        inv = F.inv(a[col][col])
        a[col] = [F.norm(x * inv) for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [F.norm(x - f * y) for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
