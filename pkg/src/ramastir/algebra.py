"""Exact scalars, polynomials and truncated power series.

Scalars are :class:`fractions.Fraction` (aliased :data:`Rat`) or
:class:`Sqrt2Rat`, an element ``a + b*sqrt(2)`` of the quadratic field.

A :class:`PowerSeries` always knows the highest exponent for which its
coefficients are exact (its ``order``).  Every operation derives the order of
its result from the orders of its inputs, and asking for a coefficient past
that order raises :class:`TruncationError` rather than returning zero.

Order rules (``N`` is an operand's order, ``v`` its valuation):

* ``a + b``: ``min(Na, Nb)``
* ``a * b``: ``min(Na + vb, Nb + va)``
* ``a'``: ``N - 1``
* ``1/a``, ``log a``, ``exp a``, ``a**e`` with ``a(0) != 0``: ``N``
* ``a**e`` with ``a(0) == 0`` and integer ``e >= 1``: ``N + v*(e - 1)``
* ``outer(inner)`` with ``inner(0) == 0``: ``min(N_inner, v_inner*(N_outer + 1) - 1)``
* reversion: ``N``
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Sequence, Union

Rat = Fraction

__all__ = [
    "Rat",
    "Sqrt2Rat",
    "sqrt2_pow",
    "Poly",
    "PowerSeries",
    "TruncationError",
    "ps_add",
    "ps_sub",
    "ps_mul",
    "ps_scale",
    "ps_derive",
    "ps_integrate",
    "ps_recip",
    "ps_log",
    "ps_exp",
    "ps_pow",
    "ps_compose",
    "ps_revert",
    "ps_revert_newton",
    "demoivre",
    "demoivre_multinomial",
    "DeMoivreTable",
]


class TruncationError(ValueError):
    """A coefficient was requested beyond the order a series is exact to."""


# ---------------------------------------------------------------------------
# Q(sqrt 2)
# ---------------------------------------------------------------------------


def _as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class Sqrt2Rat:
    """Element ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _as_rat(a))
        object.__setattr__(self, "b", _as_rat(b))

    def __setattr__(self, name, value):
        raise AttributeError("Sqrt2Rat is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, Sqrt2Rat):
            return other
        if isinstance(other, (int, Fraction)):
            return Sqrt2Rat(other, 0)
        return None

    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        """The value as a Fraction; raises ValueError if the sqrt(2) part is nonzero."""
        if self.b != 0:
            raise ValueError(f"{self} is not rational")
        return self.a

    def conjugate(self) -> "Sqrt2Rat":
        return Sqrt2Rat(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 2 * self.b * self.b

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Sqrt2Rat(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Sqrt2Rat(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Sqrt2Rat(o.a - self.a, o.b - self.b)

    def __neg__(self):
        return Sqrt2Rat(-self.a, -self.b)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Sqrt2Rat(self.a * other, self.b * other)
        if not isinstance(other, Sqrt2Rat):
            return NotImplemented
        a, b, c, d = self.a, self.b, other.a, other.b
        return Sqrt2Rat(a * c + 2 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(sqrt2)")
            return Sqrt2Rat(self.a / other, self.b / other)
        if not isinstance(other, Sqrt2Rat):
            return NotImplemented
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt2)")
        return self * other.conjugate() / n

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return Sqrt2Rat(1) / self ** (-e)
        result = Sqrt2Rat(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        return f"Sqrt2Rat({self.a!s}, {self.b!s})"

    def __str__(self):
        return f"{self.a}+{self.b}*sqrt2"

    @classmethod
    def parse(cls, text: str) -> "Sqrt2Rat":
        """Inverse of ``str``: ``"a+b*sqrt2"`` with ``a``, ``b`` written ``p/q``."""
        body = text.strip()
        if not body.endswith("*sqrt2"):
            raise ValueError(f"not a Q(sqrt2) literal: {text!r}")
        body = body[: -len("*sqrt2")]
        head, sep, tail = body[1:].partition("+")
        if not sep:
            raise ValueError(f"not a Q(sqrt2) literal: {text!r}")
        return cls(Fraction(body[0] + head), Fraction(tail))


def sqrt2_pow(n: int) -> Sqrt2Rat:
    """``sqrt(2)**n`` for any integer ``n``."""
    if n % 2 == 0:
        return Sqrt2Rat(Fraction(2) ** (n // 2), 0)
    return Sqrt2Rat(0, Fraction(2) ** ((n - 1) // 2))


# ---------------------------------------------------------------------------
# Polynomials over Q
# ---------------------------------------------------------------------------


class Poly:
    """Dense polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        """Degree, or ``-math.inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        n = len(self.coeffs) + len(other.coeffs) - 1
        return Poly(_convolve(self.coeffs, other.coeffs, n))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Poly([1])
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        if not divisor.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dlen = len(divisor.coeffs)
        lead = divisor.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dlen + 1, 0)
        for i in range(len(rem) - dlen, -1, -1):
            q = rem[i + dlen - 1] / lead
            quot[i] = q
            if q:
                for j, d in enumerate(divisor.coeffs):
                    rem[i + j] -= q * d
        return Poly(quot), Poly(rem[: dlen - 1])

    def exact_div(self, divisor: "Poly") -> "Poly":
        q, r = self.divmod(divisor)
        if r.coeffs:
            raise ValueError("polynomial division is not exact")
        return q

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly([x])


# ---------------------------------------------------------------------------
# Convolution kernel
# ---------------------------------------------------------------------------


def _all_rational(seq) -> bool:
    return all(type(c) is Fraction or type(c) is int for c in seq)


def _convolve(a: Sequence, b: Sequence, n: int) -> list:
    """First ``n`` coefficients of the product of coefficient lists ``a``, ``b``.

    For rational inputs both operands are brought to a common denominator so
    the inner loop is pure integer arithmetic; one Fraction is built per
    output coefficient instead of one per term.
    """
    la, lb = min(len(a), n), min(len(b), n)
    if la == 0 or lb == 0:
        return [Fraction(0)] * n
    if _all_rational(a[:la]) and _all_rational(b[:lb]):
        da = math.lcm(*(Fraction(c).denominator for c in a[:la]))
        db = math.lcm(*(Fraction(c).denominator for c in b[:lb]))
        ia = [int(c * da) for c in a[:la]]
        ib = [int(c * db) for c in b[:lb]]
        den = da * db
        out = []
        for k in range(n):
            lo = max(0, k - lb + 1)
            hi = min(k, la - 1)
            s = 0
            for i in range(lo, hi + 1):
                x = ia[i]
                if x:
                    s += x * ib[k - i]
            out.append(Fraction(s, den))
        return out
    out = []
    for k in range(n):
        lo = max(0, k - lb + 1)
        hi = min(k, la - 1)
        s = Fraction(0)
        for i in range(lo, hi + 1):
            s = s + a[i] * b[k - i]
        out.append(s)
    return out


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------


class PowerSeries:
    """Power series exact through ``x**order``; coefficients are immutable."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable = (), order: int | None = None):
        cs = list(coeffs)
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self.coeffs = tuple(Fraction(c) if type(c) is int else c for c in cs)
        self.order = order

    @classmethod
    def from_function(cls, f: Callable[[int], object], order: int) -> "PowerSeries":
        return cls([f(n) for n in range(order + 1)], order)

    @classmethod
    def x(cls, order: int) -> "PowerSeries":
        return cls([0, 1], order) if order >= 1 else cls([0], order)

    @classmethod
    def const(cls, c, order: int) -> "PowerSeries":
        return cls([c], order)

    def __getitem__(self, n: int):
        if n < 0:
            return Fraction(0)
        if n > self.order:
            raise TruncationError(f"coefficient x^{n} requested from a series exact only to x^{self.order}")
        return self.coeffs[n]

    def valuation(self) -> int:
        """Index of the first nonzero coefficient (``order + 1`` if none)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return self.order + 1

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise TruncationError(f"cannot extend a series of order {self.order} to {order}")
        return PowerSeries(self.coeffs[: order + 1], order)

    def __add__(self, other):
        return ps_add(self, _as_series(other, self.order))

    __radd__ = __add__

    def __sub__(self, other):
        return ps_sub(self, _as_series(other, self.order))

    def __rsub__(self, other):
        return ps_sub(_as_series(other, self.order), self)

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.order)

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return ps_mul(self, other)
        return PowerSeries([c * other for c in self.coeffs], self.order)

    def __rmul__(self, other):
        return PowerSeries([other * c for c in self.coeffs], self.order)

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return ps_mul(self, ps_recip(other))
        return PowerSeries([c / other for c in self.coeffs], self.order)

    def __pow__(self, e):
        return ps_pow(self, e)

    def __call__(self, inner: "PowerSeries") -> "PowerSeries":
        return ps_compose(self, inner)

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and all(x == y for x, y in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        body = ", ".join(str(c) for c in self.coeffs)
        return f"PowerSeries([{body}], order={self.order})"


def _as_series(x, order: int) -> PowerSeries:
    if isinstance(x, PowerSeries):
        return x
    return PowerSeries([x], order)


def ps_add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.order, b.order)
    return PowerSeries([a.coeffs[i] + b.coeffs[i] for i in range(n + 1)], n)


def ps_sub(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.order, b.order)
    return PowerSeries([a.coeffs[i] - b.coeffs[i] for i in range(n + 1)], n)


def ps_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.order + b.valuation(), b.order + a.valuation())
    # coefficients past either operand's order only enter multiplied by known zeros
    ac = list(a.coeffs) + [Fraction(0)] * max(0, n - a.order)
    bc = list(b.coeffs) + [Fraction(0)] * max(0, n - b.order)
    return PowerSeries(_convolve(ac, bc, n + 1), n)


def ps_scale(a: PowerSeries, c) -> PowerSeries:
    """Substitute ``x -> c*x``."""
    out, p = [], Fraction(1)
    for coef in a.coeffs:
        out.append(coef * p)
        p = p * c
    return PowerSeries(out, a.order)


def ps_derive(a: PowerSeries) -> PowerSeries:
    if a.order == 0:
        raise TruncationError("derivative of an order-0 series carries no exact coefficient")
    return PowerSeries([k * a.coeffs[k] for k in range(1, a.order + 1)], a.order - 1)


def ps_integrate(a: PowerSeries, constant=0) -> PowerSeries:
    return PowerSeries([constant] + [a.coeffs[k] / (k + 1) for k in range(a.order + 1)], a.order + 1)


def ps_recip(a: PowerSeries) -> PowerSeries:
    a0 = a.coeffs[0]
    if a0 == 0:
        raise ZeroDivisionError("reciprocal of a series with zero constant term")
    inv0 = 1 / a0
    out = [inv0]
    for n in range(1, a.order + 1):
        s = a.coeffs[1] * out[n - 1]
        for k in range(2, n + 1):
            s = s + a.coeffs[k] * out[n - k]
        out.append(-s * inv0)
    return PowerSeries(out, a.order)


def ps_log(a: PowerSeries) -> PowerSeries:
    if a.coeffs[0] != 1:
        raise ValueError("log requires constant term 1")
    if a.order == 0:
        return PowerSeries([0], 0)
    quotient = ps_mul(ps_derive(a), ps_recip(a.truncate(a.order - 1)))
    return ps_integrate(quotient)


def ps_exp(a: PowerSeries) -> PowerSeries:
    if a.coeffs[0] != 0:
        raise ValueError("exp requires constant term 0")
    out = [Fraction(1)]
    for n in range(1, a.order + 1):
        s = a.coeffs[1] * out[n - 1]
        for k in range(2, n + 1):
            s = s + k * a.coeffs[k] * out[n - k]
        out.append(s / n)
    return PowerSeries(out, a.order)


def ps_pow(a: PowerSeries, e) -> PowerSeries:
    """``a**e`` for rational ``e``.

    With a nonzero constant term this is the binomial series, evaluated by the
    recurrence ``n*a0*b[n] = sum_k ((e+1)*k - n)*a[k]*b[n-k]``; a non-integer
    exponent additionally needs ``a(0) == 1``.  With a zero constant term only
    nonnegative integer exponents are allowed.
    """
    if isinstance(e, Fraction) and e.denominator == 1:
        e = int(e)
    a0 = a.coeffs[0]
    if isinstance(e, int):
        if e == 0:
            return PowerSeries([1], a.order)
        if a0 == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of a series with zero constant term")
            return _pow_binary(a, e)
        b0 = a0**e
    else:
        e = Fraction(e)
        if a0 != 1:
            raise ValueError("non-integer power requires constant term 1")
        b0 = Fraction(1)
    out = [b0]
    inv0 = 1 / a0
    for n in range(1, a.order + 1):
        s = Fraction(0)
        for k in range(1, n + 1):
            ak = a.coeffs[k]
            if ak:
                s = s + ((e + 1) * k - n) * ak * out[n - k]
        out.append(s * inv0 / n)
    return PowerSeries(out, a.order)


def _pow_binary(a: PowerSeries, e: int) -> PowerSeries:
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else ps_mul(result, base)
        e >>= 1
        if e:
            base = ps_mul(base, base)
    return result


def ps_compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    if inner.coeffs[0] != 0:
        raise ValueError("composition requires the inner series to have zero constant term")
    v = inner.valuation()
    n = min(inner.order, v * (outer.order + 1) - 1)
    inner = inner.truncate(n)
    acc = PowerSeries([outer.coeffs[outer.order]], n)
    for k in range(outer.order - 1, -1, -1):
        acc = ps_mul(acc, inner).truncate(n)
        acc = PowerSeries((acc.coeffs[0] + outer.coeffs[k],) + acc.coeffs[1:], n)
    return acc


def _check_revertible(F: PowerSeries) -> None:
    if F.coeffs[0] != 0:
        raise ValueError("reversion requires F(0) == 0")
    if F.order < 1 or F.coeffs[1] == 0:
        raise ValueError("reversion requires a nonzero linear coefficient")


def ps_revert(F: PowerSeries) -> PowerSeries:
    """Compositional inverse ``G`` of ``F`` through Lagrange's coefficient formula.

    ``n [x^n] G = [x^(n-1)] (x/F)^n``; ``x/F`` is exact to order ``N-1`` so
    every ``[x^n] G`` with ``n <= N`` is available.
    """
    _check_revertible(F)
    N = F.order
    h = ps_recip(PowerSeries(F.coeffs[1:], N - 1))
    out = [Fraction(0)]
    power = None
    for n in range(1, N + 1):
        power = h if power is None else ps_mul(power, h)
        out.append(power.coeffs[n - 1] / n)
    return PowerSeries(out, N)


def ps_revert_newton(F: PowerSeries) -> PowerSeries:
    """Compositional inverse by Newton iteration ``G <- G - (F(G) - x)/F'(G)``.

    Independent of :func:`ps_revert`; kept as its cross-check.
    """
    _check_revertible(F)
    N = F.order
    x = PowerSeries.x(N)
    G = PowerSeries([0, 1 / F.coeffs[1]], N)
    dF = ps_derive(F) if N > 1 else PowerSeries([F.coeffs[1]], 0)
    # quadratic convergence: log2(N) + 1 rounds suffice, the bound is a guard
    for _ in range(N + 1):
        resid = ps_sub(ps_compose(F, G), x)
        if not any(resid.coeffs):
            break
        step = ps_mul(resid, ps_recip(ps_compose(dF, G)))
        G = ps_sub(G, step).truncate(N)
    return G


# ---------------------------------------------------------------------------
# De Moivre polynomials A_{n,k}(a) = [x^n] (a_1 x + a_2 x^2 + ...)^k
# ---------------------------------------------------------------------------

Stream = Union[Callable[[int], object], Sequence]


def _stream_fn(a: Stream) -> Callable[[int], object]:
    if callable(a):
        return a
    seq = list(a)

    def get(j: int):
        return seq[j - 1] if j - 1 < len(seq) else Fraction(0)

    return get


def demoivre(n: int, k: int, a: Stream):
    """``A_{n,k}(a)`` via a series power.

    ``a`` is either a callable ``j -> a_j`` (``j >= 1``) or a sequence whose
    first entry is ``a_1``.
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k == 0:
        return Fraction(int(n == 0))
    if n < k:
        return Fraction(0)
    f = _stream_fn(a)
    h = PowerSeries([f(j + 1) for j in range(n - k + 1)], n - k)
    return ps_pow(h, k)[n - k]


def demoivre_multinomial(n: int, k: int, a: Stream):
    """``A_{n,k}(a)`` by the explicit multinomial sum over compositions."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k == 0:
        return Fraction(int(n == 0))
    if n < k:
        return Fraction(0)
    f = _stream_fn(a)
    total = Fraction(0)
    kfact = math.factorial(k)
    # each multiset of k part sizes summing to n
    for parts in combinations_with_replacement(range(1, n - k + 2), k):
        if sum(parts) != n:
            continue
        counts: dict[int, int] = {}
        for p in parts:
            counts[p] = counts.get(p, 0) + 1
        coef = kfact
        term = Fraction(1)
        for p, m in counts.items():
            coef //= math.factorial(m)
            term = term * f(p) ** m
        total = total + coef * term
    return total


class DeMoivreTable:
    """Memoized ``A_{n,k}(a)`` for one fixed stream.

    Stores the powers ``h**k`` of ``h(x) = sum_{j>=v} a_j x^(j-v)`` where ``v``
    is the stream's valuation, so ``A_{n,k} = [x^(n - v*k)] h**k``.  The table
    grows on demand; a grown table is built completely before it replaces the
    old one, so concurrent readers never observe partial state.
    """

    def __init__(self, a: Stream, valuation: int = 1):
        self._a = _stream_fn(a)
        self.valuation = valuation
        self._lock = threading.Lock()
        self._powers: tuple = ()
        self._order = -1

    def _build(self, kmax: int, order: int) -> tuple:
        v = self.valuation
        h = PowerSeries([self._a(j + v) for j in range(order + 1)], order)
        powers = [PowerSeries([1], order)]
        for _ in range(kmax):
            powers.append(ps_mul(powers[-1], h))
        return tuple(powers)

    def __call__(self, n: int, k: int):
        if k == 0:
            return Fraction(int(n == 0))
        m = n - self.valuation * k
        if m < 0:
            return Fraction(0)
        powers, order = self._powers, self._order
        if k >= len(powers) or m > order:
            with self._lock:
                powers, order = self._powers, self._order
                if k >= len(powers) or m > order:
                    new_k = max(k, 2 * (len(powers) - 1), 8)
                    new_order = max(m, 2 * order, 8)
                    powers = self._build(new_k, new_order)
                    order = new_order
                    self._powers, self._order = powers, order
        return powers[k].coeffs[m]
