"""Growth of Bass numbers: difference sequences, the a_i / b_i coefficient
bounds, exceptional rings and window certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classtable import H, ClassId, RingInvariants, S, admissible, bass_series, fg_polys
from .powser import T, LaurentPoly, RationalSeries, from_coefficients, taylor


class OrderMismatch(ValueError):
    pass


class SOutOfRange(ValueError):
    pass


class GorensteinInput(ValueError):
    pass


class GrowthViolation(AssertionError):
    def __init__(self, i, mu):
        super().__init__(f"growth fails at i={i}: {mu}")
        self.i = i
        self.mu = mu


def bass_diffs(s: RationalSeries, d: int, N: int) -> list[int]:
    """mu^{d+i} - mu^{d+i-1} for i = 0..N, read off (1-t) I_R / t^d."""
    if not s.is_zero() and s.order() < d:
        raise OrderMismatch(f"series starts at t^{s.order()}, below t^{d}")
    return taylor((1 - T) * s.shift(-d), 0, N)


def coeffs_a(f: LaurentPoly, g: LaurentPoly, N: int) -> list[int]:
    return taylor(RationalSeries(f - g, 1 - T**2), 0, N)


def coeffs_b(f: LaurentPoly, s: int, N: int, m_minus_p: int | None = None) -> list[int]:
    if s < 0 or (m_minus_p is not None and s > m_minus_p):
        raise SOutOfRange(f"s={s} outside [0, {m_minus_p}]")
    return taylor(RationalSeries(f * (1 + T**3) ** s, (1 - T**2) ** 2), 0, N)


def exception_kind(cls: ClassId, inv: RingInvariants) -> str:
    if cls == S and inv.l == 1:
        return "wxwy"
    if cls == H(2, 1) and inv.l == 2 and inv.n == 1:
        return "wxwyz"
    return "none"


@dataclass
class GrowthReport:
    window: int
    mu: list          # mu^d .. mu^{d+N}
    flags: list       # flags[i-1] for i = 1..N: mu^{d+i} >= mu^{d+i-1} + 1
    exception: str
    gamma_window: Fraction

    def as_dict(self):
        return {
            "window": self.window,
            "mu": self.mu,
            "strict_increase": self.flags,
            "exception": self.exception,
            "gamma_window": [self.gamma_window.numerator, self.gamma_window.denominator],
            "gamma_label": "window bound",
        }


def growth_verdict(cls: ClassId, inv: RingInvariants, N: int = 12, force: bool = False) -> GrowthReport:
    verdict = admissible(cls, inv)
    if verdict.gorenstein:
        raise GorensteinInput(f"{cls} is Gorenstein; the growth statement covers non-Gorenstein rings")
    mu = taylor(bass_series(cls, inv, force=force), inv.d, inv.d + N)
    exc = exception_kind(cls, inv)
    flags = [mu[i] >= mu[i - 1] + 1 for i in range(1, N + 1)]
    for i in range(1, N + 1):
        if flags[i - 1]:
            continue
        if exc != "none" and i == 2 and mu[2] == mu[1] == 2:
            continue
        raise GrowthViolation(i, mu)
    if exc != "none" and not (N >= 2 and mu[2] == mu[1] == 2):
        raise GrowthViolation(2, mu)
    ratios = [Fraction(mu[i], mu[i - 1]) for i in range(1, N + 1)
              if not (exc != "none" and i == 2)]
    return GrowthReport(N, mu, flags, exc, min(ratios))


def lemma_a_route(f, g, l: int, N: int):
    """Differences predicted by the a_i machinery: (mu^d, diff_1, diff_2) and bounds."""
    a = coeffs_a(f, g, N)
    exact = {0: a[0] + 1, 1: a[1] - 1, 2: a[2] + (l - 1) * a[0]}
    bound = None
    if l >= 1 and all(x >= 0 for x in a[1:]):
        bound = RationalSeries(LaurentPoly.from_list([0, 0] + [a[i] + (l - 1) * a[i - 2] for i in range(2, N + 1)]))
    return a, exact, bound


def lemma_b_route(f, l: int, N: int, s: int = 0, m_minus_p: int | None = None):
    b = coeffs_b(f, s, N, m_minus_p)
    exact = {0: b[0], 1: b[1], 2: b[2] + (l - 2) * b[0]}
    bound = None
    if l >= 2 and all(x >= 0 for x in b[1:]):
        bound = RationalSeries(LaurentPoly.from_list([0, 0] + [b[i] + (l - 2) * b[i - 2] for i in range(2, N + 1)]))
    return b, exact, bound


def tail_series(diffs, start=2):
    """Polynomial with the difference values from index ``start`` on."""
    return RationalSeries(LaurentPoly({i: x for i, x in enumerate(diffs) if i >= start}))
