"""Rigorous enclosures with rational endpoints.

Nothing here touches floating point.  Every function returns a
:class:`RatInterval` that provably contains the exact real value, and whose
width is at most the requested ``eps``.  The enclosures are used to test the
asymptotic expansions of ``n!`` and of ``theta_n`` at concrete ``n``.

Constants:

* ``e^n``: Taylor partial sum; once ``k >= 2n`` the term ratio is at most 1/2,
  so the tail is below twice the next term.
* ``pi``: ``16 atan(1/5) - 4 atan(1/239)``; alternating series bracket the value
  between consecutive partial sums.
* square roots: integer square roots of a scaled radicand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "RatInterval",
    "IntervalTooWide",
    "ValidationReport",
    "exp_nat",
    "pi_interval",
    "sqrt_interval",
    "theta_exact",
    "stirling_ratio",
    "validate_expansion",
    "DEFAULT_EPS",
]

DEFAULT_EPS = Fraction(1, 10**40)


class IntervalTooWide(ArithmeticError):
    """The enclosure straddles the decision threshold; retry with a smaller eps."""


def _rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _check_eps(eps) -> Fraction:
    eps = _rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    return eps


@dataclass(frozen=True)
class RatInterval:
    """Closed interval ``[lo, hi]`` with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", _rat(self.lo))
        object.__setattr__(self, "hi", _rat(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "RatInterval":
        return cls(x, x)

    @staticmethod
    def _coerce(other) -> "RatInterval":
        return other if isinstance(other, RatInterval) else RatInterval.point(other)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def magnitude(self) -> Fraction:
        """Largest absolute value in the interval."""
        return max(abs(self.lo), abs(self.hi))

    def __contains__(self, x) -> bool:
        if isinstance(x, RatInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= _rat(x) <= self.hi

    def __add__(self, other):
        o = self._coerce(other)
        return RatInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RatInterval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> "RatInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RatInterval(0, self.magnitude())

    def rounded(self, bits: int) -> "RatInterval":
        """Outward rounding of both ends to multiples of ``2^-bits``; keeps denominators small."""
        scale = 1 << bits
        lo = Fraction(math.floor(self.lo * scale), scale)
        hi = Fraction(math.ceil(self.hi * scale), scale)
        return RatInterval(lo, hi)

    def sqrt(self, eps) -> "RatInterval":
        if self.lo < 0:
            raise ValueError("square root of an interval reaching below zero")
        return RatInterval(sqrt_interval(self.lo, eps).lo, sqrt_interval(self.hi, eps).hi)

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def _bits_for(eps: Fraction) -> int:
    """Smallest ``b`` with ``2^-b <= eps``."""
    return max(0, math.ceil(math.log2(eps.denominator)) - math.floor(math.log2(eps.numerator)) + 1)


def exp_nat(n: int, eps=DEFAULT_EPS) -> RatInterval:
    """Enclosure of ``e^n`` (``n >= 0``) with width at most ``eps``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    eps = _check_eps(eps)
    total = Fraction(0)
    term = Fraction(1)
    k = 0
    while k < 2 * n or 2 * term > eps / 2:
        total += term
        k += 1
        term = term * n / k
    iv = RatInterval(total, total + 2 * term)
    return iv.rounded(_bits_for(eps / 4))


def _atan_inv(q: int, eps: Fraction) -> RatInterval:
    """``atan(1/q)`` for an integer ``q >= 2``, bracketed by consecutive alternating partial sums."""
    s = Fraction(0)
    k = 0
    while True:
        term = Fraction(1, (2 * k + 1) * q ** (2 * k + 1))
        nxt = s + (-1) ** k * term
        if term <= eps:
            return RatInterval(min(s, nxt), max(s, nxt))
        s = nxt
        k += 1


def pi_interval(eps=DEFAULT_EPS) -> RatInterval:
    """Enclosure of pi with width at most ``eps``."""
    eps = _check_eps(eps)
    iv = 16 * _atan_inv(5, eps / 64) - 4 * _atan_inv(239, eps / 64)
    return iv.rounded(_bits_for(eps / 4))


def _is_square(m: int) -> bool:
    return m >= 0 and math.isqrt(m) ** 2 == m


def sqrt_interval(q, eps=DEFAULT_EPS) -> RatInterval:
    """Enclosure of ``sqrt(q)`` for rational ``q >= 0``; exact when ``q`` is a rational square."""
    q = _rat(q)
    eps = _check_eps(eps)
    if q < 0:
        raise ValueError("negative radicand")
    if _is_square(q.numerator) and _is_square(q.denominator):
        return RatInterval.point(Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator)))
    bits = _bits_for(eps / 2)
    scaled = q * (1 << (2 * bits))
    lo = math.isqrt(math.floor(scaled))
    top = math.ceil(scaled)
    hi = math.isqrt(top)
    if hi * hi < top:
        hi += 1
    return RatInterval(Fraction(lo, 1 << bits), Fraction(hi, 1 << bits))


def _stirling_prefactor_inv(n: int) -> Fraction:
    """``n! / n^n``, exact."""
    return Fraction(math.factorial(n), n**n)


def theta_exact(n: int, eps=DEFAULT_EPS) -> RatInterval:
    """Enclosure of ``theta_n = (e^n/2 - sum_{k<n} n^k/k!) n!/n^n`` with width at most ``eps``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    eps = _check_eps(eps)
    partial = sum((Fraction(n**k, math.factorial(k)) for k in range(n)), Fraction(0))
    scale = _stirling_prefactor_inv(n)
    return (exp_nat(n, eps / scale) / 2 - partial) * scale


def stirling_ratio(n: int, eps=DEFAULT_EPS) -> RatInterval:
    """Enclosure of ``n! / (sqrt(2 pi n) (n/e)^n)`` with width at most ``eps``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    eps = _check_eps(eps)
    scale = _stirling_prefactor_inv(n)
    # Budgets fixed in advance (proportional to eps) so that shrinking eps nests the results.
    # With e^n < 3^n and sqrt(2 pi n) > 2, the product's width stays below eps.
    exp_eps = eps / (4 * scale)
    root_eps = eps / (4 * 3**n * scale)
    root = (2 * n * pi_interval(root_eps / (2 * n))).sqrt(root_eps / 4)
    return exp_nat(n, exp_eps) * scale / root


@dataclass(frozen=True)
class ValidationReport:
    target: str
    n: int
    terms: int
    partial_sum: Fraction
    exact: RatInterval
    error: RatInterval
    bound: Fraction
    factor: Fraction
    passed: bool

    @property
    def width(self) -> Fraction:
        return self.error.width


def _coefficients(target: str, count: int) -> list[Fraction]:
    from ramastir.sequences import gamma_r, rho_r

    if target == "stirling":
        return [gamma_r(r) for r in range(count)]
    if target == "theta":
        return [rho_r(r) for r in range(count)]
    raise ValueError(f"unknown target {target!r}; expected 'stirling' or 'theta'")


def validate_expansion(target: str, n: int, terms: int, eps=DEFAULT_EPS, factor=2) -> ValidationReport:
    """Compare the exact value at ``n`` with the partial sum of ``terms`` coefficients.

    The error ``E = |exact - sum_{r<R} coef_r n^-r|`` is enclosed and compared
    with ``factor * |coef_R| * n^-R``.  If the enclosure of ``E`` straddles the
    bound, :class:`IntervalTooWide` is raised.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    if n < 1:
        raise ValueError("n must be >= 1")
    eps = _check_eps(eps)
    factor = _rat(factor)
    coefs = _coefficients(target, terms + 1)
    partial = sum((c / Fraction(n) ** r for r, c in enumerate(coefs[:terms])), Fraction(0))
    exact = stirling_ratio(n, eps) if target == "stirling" else theta_exact(n, eps)
    error = abs(exact - partial)
    bound = factor * abs(coefs[terms]) / Fraction(n) ** terms
    if error.hi <= bound:
        passed = True
    elif error.lo > bound:
        passed = False
    else:
        raise IntervalTooWide(f"error enclosure {error} straddles bound {bound}; use a smaller eps")
    return ValidationReport(target, n, terms, partial, exact, error, bound, factor, passed)
