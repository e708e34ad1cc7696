"""Exact integer Laurent polynomials and rational Laurent series.

Every generating function in the package (Poincare series, Bass series,
Hilbert series) is a ``RationalSeries``: a quotient of two integer Laurent
polynomials whose denominator has a unit lowest coefficient, so that the
Laurent expansion has integer coefficients.
"""

from __future__ import annotations

from typing import Iterable


class NonUnitDenominator(ValueError):
    """The lowest coefficient of a denominator is not +1 or -1."""


class LaurentPoly:
    """Finitely supported map exponent -> nonzero int."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            self._c = {}
        elif isinstance(coeffs, LaurentPoly):
            self._c = dict(coeffs._c)
        elif isinstance(coeffs, int):
            self._c = {0: coeffs} if coeffs else {}
        else:
            self._c = {int(e): int(v) for e, v in dict(coeffs).items() if v}

    @classmethod
    def from_list(cls, coeffs: Iterable[int], lo: int = 0) -> "LaurentPoly":
        return cls({lo + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, exp: int, coef: int = 1) -> "LaurentPoly":
        return cls({exp: coef})

    # -- access
    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def items(self):
        return sorted(self._c.items())

    def low(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no lowest exponent")
        return min(self._c)

    def high(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no highest exponent")
        return max(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def to_dict(self) -> dict:
        return dict(self._c)

    def evaluate(self, x):
        return sum(v * x**e for e, v in self._c.items())

    # -- arithmetic
    @staticmethod
    def _lift(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly(x)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._c)
        for e, v in other._c.items():
            s = out.get(e, 0) + v
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + v1 * v2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._c) == 1:
                (e, v), = self._c.items()
                if v in (1, -1):
                    return _raw({-e * (-k): v ** (-k)})
            raise ValueError("negative power of a non-monomial")
        out = LaurentPoly(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return _raw({e + k: v for e, v in self._c.items()})

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in self.items():
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if mono and abs(v) == 1:
                term = mono
            elif mono:
                term = f"{abs(v)}*{mono}"
            else:
                term = str(abs(v))
            sign = "-" if v < 0 else "+"
            parts.append((sign, term))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {x}" for s, x in parts[1:]])


def _raw(d: dict) -> LaurentPoly:
    p = LaurentPoly.__new__(LaurentPoly)
    p._c = d
    return p


T = LaurentPoly.monomial(1)
ONE = LaurentPoly(1)


def substitute_inverse(p: LaurentPoly) -> LaurentPoly:
    """t -> 1/t."""
    return _raw({-e: v for e, v in p._c.items()})


class RationalSeries:
    """num/den as a Laurent series in t.

    After normalization the denominator has lowest exponent 0 and constant
    term 1.  Equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = LaurentPoly._lift(num)
        den = LaurentPoly._lift(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("series needs Laurent polynomial data")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        lo = den.low()
        c0 = den.coeff(lo)
        if c0 not in (1, -1):
            raise NonUnitDenominator(f"lowest coefficient {c0} of {den!r} is not a unit")
        self.num = num.shift(-lo) * c0
        self.den = den.shift(-lo) * c0

    @staticmethod
    def _lift(x):
        if isinstance(x, RationalSeries):
            return x
        if isinstance(x, (int, LaurentPoly)):
            return RationalSeries(x)
        return NotImplemented

    def order(self):
        """Lowest exponent with a nonzero coefficient (None for zero)."""
        return None if self.num.is_zero() else self.num.low()

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalSeries(self.num + other.num, self.den)
        return RationalSeries(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalSeries(-self.num, self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return RationalSeries(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero series")
        return RationalSeries(self.den, self.num)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k >= 0:
            return RationalSeries(self.num**k, self.den**k)
        return self.inverse() ** (-k)

    def shift(self, k: int):
        return RationalSeries(self.num.shift(k), self.den)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RationalSeries is unhashable (equality is not structural)")

    def taylor(self, lo: int, hi: int) -> list[int]:
        return taylor(self, lo, hi)

    def __repr__(self):
        if self.den == ONE:
            return f"({self.num!r})"
        return f"({self.num!r})/({self.den!r})"


def series(num, den=1) -> RationalSeries:
    return RationalSeries(num, den)


def taylor(s: RationalSeries, lo: int, hi: int) -> list[int]:
    """Coefficients of t^lo .. t^hi in the Laurent expansion of s."""
    if lo > hi:
        raise ValueError("empty window")
    if s.num.is_zero():
        return [0] * (hi - lo + 1)
    start = s.num.low()
    if hi < start:
        return [0] * (hi - lo + 1)
    den = s.den.to_dict()
    d0 = den[0]
    tail = [(j, v) for j, v in den.items() if j > 0]
    num = s.num.to_dict()
    coef = {}
    for k in range(start, hi + 1):
        acc = num.get(k, 0)
        for j, v in tail:
            c = coef.get(k - j)
            if c:
                acc -= v * c
        coef[k] = acc * d0  # d0 is +-1
    return [coef.get(k, 0) for k in range(lo, hi + 1)]


def truncated(s: RationalSeries, hi: int) -> LaurentPoly:
    """The Laurent polynomial formed by the terms of s up to t^hi."""
    if s.num.is_zero():
        return LaurentPoly()
    lo = s.num.low()
    return LaurentPoly.from_list(taylor(s, lo, hi), lo) if hi >= lo else LaurentPoly()


def dominates(s1, s2, N: int) -> bool:
    """True iff every coefficient of s1 - s2 up to t^N is >= 0."""
    diff = RationalSeries._lift(s1) - RationalSeries._lift(s2)
    if diff.is_zero():
        return True
    lo = diff.order()
    if lo > N:
        return True
    return all(c >= 0 for c in taylor(diff, lo, N))


def from_coefficients(coeffs: Iterable[int], lo: int = 0) -> RationalSeries:
    """A finite window of coefficients as a (polynomial) series."""
    return RationalSeries(LaurentPoly.from_list(coeffs, lo))


def guess_rational(coeffs, lo: int = 0):
    """Rational series with the shortest linear recurrence fitting the window.

    Returns None when no recurrence of order <= len/2 fits, or when the
    recurrence is not monic over Z.  The fit is only as good as the window:
    two rationals whose degree sums are below the window length agree.
    """
    from sympy import Poly, sequence, symbols

    coeffs = list(coeffs)
    if not any(coeffs):
        return RationalSeries(0)
    t, i = symbols("t i")
    seq = sequence(tuple(coeffs), (i, 0, len(coeffs) - 1))
    rec, gf = seq.find_linear_recurrence(len(coeffs), gfvar=t)
    if not rec:
        # only polynomials are left; insist on a zero second half
        if any(coeffs[(len(coeffs) + 1) // 2:]):
            return None
        return from_coefficients(coeffs, lo)
    num, den = gf.as_numer_denom()
    num, den = Poly(num, t), Poly(den, t)
    if any(c.q != 1 for c in num.all_coeffs() + den.all_coeffs()):
        return None
    as_laurent = lambda P: LaurentPoly({m[0]: int(c) for m, c in P.terms()})
    try:
        s = RationalSeries(as_laurent(num), as_laurent(den)).shift(lo)
    except NonUnitDenominator:
        return None
    return s if taylor(s, lo, lo + len(coeffs) - 1) == coeffs else None
