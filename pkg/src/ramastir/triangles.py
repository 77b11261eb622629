"""Number triangles and scalar combinatorial sequences.

Every triangle accepts any integer ``k`` and returns an exact zero outside its
support.  Rows are filled on demand; a fill builds the complete new table and
then swaps it in, so readers on other threads only ever see finished rows.
"""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ramastir.algebra import DeMoivreTable, Poly

__all__ = [
    "TriangleKind",
    "Triangle",
    "triangle",
    "stirling_cycle",
    "stirling_cycle_star",
    "eulerian2",
    "eulerian2_star",
    "eulerian2_poly",
    "eulerian2_star_coeffs",
    "eulerian2_via_ratfun",
    "assoc_stirling",
    "ATMode",
    "ATArray",
    "at_array",
    "bernoulli",
    "bernoulli_classical",
    "omega",
    "double_factorial",
    "binomial_rat",
    "binomial_half",
]


class TriangleKind(enum.Enum):
    STIRLING_CYCLE = "stirling_cycle"
    STIRLING_CYCLE_STAR = "stirling_cycle_star"
    EULERIAN2 = "eulerian2"
    EULERIAN2_STAR = "eulerian2_star"
    ASSOC_CYCLE = "assoc_cycle"
    ASSOC_SET = "assoc_set"


# kind -> (first row index, lowest k stored)
_LAYOUT = {
    TriangleKind.STIRLING_CYCLE: (0, 0),
    TriangleKind.STIRLING_CYCLE_STAR: (0, 0),
    TriangleKind.EULERIAN2: (0, 0),
    TriangleKind.EULERIAN2_STAR: (1, -1),
}


class Triangle:
    """Lazily filled table ``T(n, k)`` of one :class:`TriangleKind`."""

    def __init__(self, kind: TriangleKind):
        self.kind = kind
        self._lock = threading.Lock()
        if kind in _LAYOUT:
            self.first_row, self.kmin = _LAYOUT[kind]
            # rows[i] holds row first_row + i for k in kmin..kmax
            self._rows: tuple = ()
            self._kmax = -1
        else:
            self.first_row, self.kmin = 0, 0
            self._memo: dict = {}
            table_stream = (lambda j: Fraction(1, j)) if kind is TriangleKind.ASSOC_CYCLE else (
                lambda j: Fraction(1, math.factorial(j))
            )
            self._demoivre = DeMoivreTable(table_stream, valuation=3)

    def support(self, n: int) -> tuple[int, int | None]:
        """Inclusive ``(kmin, kmax)`` of possibly nonzero entries in row ``n``; ``None`` means unbounded."""
        kind = self.kind
        if kind is TriangleKind.STIRLING_CYCLE or kind is TriangleKind.EULERIAN2:
            return 0, n
        if kind is TriangleKind.EULERIAN2_STAR:
            return -1, n - 2 if n >= 2 else -1
        if kind is TriangleKind.STIRLING_CYCLE_STAR:
            return (1, None) if n == 0 else (2, None)
        return 0, n // 3

    def __call__(self, n: int, k: int) -> Fraction:
        if n < self.first_row:
            raise ValueError(f"{self.kind.value} is undefined for n < {self.first_row}")
        lo, hi = self.support(n)
        if k < lo or (hi is not None and k > hi):
            return Fraction(0)
        if self.kind in (TriangleKind.ASSOC_CYCLE, TriangleKind.ASSOC_SET):
            return self._assoc(n, k)
        rows, kmax = self._rows, self._kmax
        if n - self.first_row >= len(rows) or k > kmax:
            rows, kmax = self._grow(n, k)
        return rows[n - self.first_row][k - self.kmin]

    get = __call__

    def row(self, n: int, kmax: int | None = None) -> list[tuple[int, Fraction]]:
        """``(k, value)`` pairs across row ``n``, cut at ``kmax`` when the support is unbounded."""
        lo, hi = self.support(n)
        if hi is None:
            hi = n if kmax is None else kmax
        elif kmax is not None:
            hi = min(hi, kmax)
        return [(k, self(n, k)) for k in range(lo, hi + 1)]

    def _grow(self, n: int, k: int):
        with self._lock:
            rows, kmax = self._rows, self._kmax
            if n - self.first_row < len(rows) and k <= kmax:
                return rows, kmax
            new_n = max(n, 2 * (len(rows) + self.first_row), 8)
            new_k = max(k, new_n, 2 * kmax)
            built = self._build(new_n, new_k)
            self._rows, self._kmax = built, new_k
            return built, new_k

    def _build(self, nmax: int, kmax: int) -> tuple:
        kmin = self.kmin
        width = kmax - kmin + 1
        kind = self.kind
        if kind is TriangleKind.STIRLING_CYCLE or kind is TriangleKind.EULERIAN2:
            row = [Fraction(int(k == 0)) for k in range(kmin, kmax + 1)]
        elif kind is TriangleKind.EULERIAN2_STAR:
            row = [Fraction(int(k == -1)) for k in range(kmin, kmax + 1)]
        else:
            # row 0 of the starred cycle numbers: (-1)^(k-1) omega_k for k >= 1
            row = [Fraction(0) if k <= 0 else (-1) ** (k - 1) * omega(k) for k in range(kmin, kmax + 1)]
        rows = [tuple(row)]
        for n in range(self.first_row, nmax):
            prev = rows[-1]
            new = [Fraction(0)] * width
            for i in range(width):
                k = i + kmin
                left = prev[i - 1] if i > 0 else 0
                if kind is TriangleKind.EULERIAN2 or kind is TriangleKind.EULERIAN2_STAR:
                    new[i] = (k + 1) * prev[i] + (2 * n + 1 - k) * left
                else:
                    new[i] = left + n * prev[i]
            rows.append(tuple(new))
        return tuple(rows)

    def _assoc(self, n: int, k: int) -> Fraction:
        key = (n, k)
        value = self._memo.get(key)
        if value is None:
            value = Fraction(math.factorial(n), math.factorial(k)) * self._demoivre(n, k)
            self._memo.setdefault(key, value)
        return value


_TRIANGLES = {kind: Triangle(kind) for kind in TriangleKind}


def triangle(kind: TriangleKind | str) -> Triangle:
    """The shared instance for ``kind`` (an enum member or its string value)."""
    return _TRIANGLES[TriangleKind(kind)]


def stirling_cycle(n: int, k: int) -> Fraction:
    return _TRIANGLES[TriangleKind.STIRLING_CYCLE](n, k)


def stirling_cycle_star(n: int, k: int) -> Fraction:
    return _TRIANGLES[TriangleKind.STIRLING_CYCLE_STAR](n, k)


def eulerian2(n: int, k: int) -> Fraction:
    return _TRIANGLES[TriangleKind.EULERIAN2](n, k)


def eulerian2_star(n: int, k: int) -> Fraction:
    if n < 1:
        raise ValueError("the starred second-order Eulerian numbers start at n = 1")
    return _TRIANGLES[TriangleKind.EULERIAN2_STAR](n, k)


def eulerian2_poly(n: int) -> Poly:
    """``E_n(x) = sum_k <<n,k>> x^k``."""
    return Poly(eulerian2(n, k) for k in range(n + 1))


def eulerian2_star_coeffs(n: int) -> dict[int, Fraction]:
    """Coefficients of the Laurent polynomial ``E*_n(x)`` keyed by exponent (may include -1)."""
    return {k: v for k, v in _TRIANGLES[TriangleKind.EULERIAN2_STAR].row(n) if v}


@lru_cache(maxsize=None)
def eulerian2_via_ratfun(n: int) -> Poly:
    """``E_n`` from ``F_{n+1} = (x/(1-x) * F_n)'`` with ``F_n = E_n/(1-x)^(2n)``.

    Only polynomial arithmetic is used: quotient rule, then exact division by
    the common factor of numerator and denominator.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    one_minus_x = Poly([1, -1])
    x = Poly([0, 1])
    E = Poly([1])
    for m in range(n):
        num = x * E
        den = one_minus_x ** (2 * m + 1)
        d_num = num.derivative() * den - num * den.derivative()
        # d_num / den**2 = E_{m+1} / (1-x)^(2m+2)
        E = d_num.exact_div(one_minus_x ** (2 * m))
    return E


def assoc_stirling(kind: str, n: int, k: int) -> Fraction:
    """Arrangements of ``n`` elements into ``k`` cycles (``kind="cycle"``) or blocks (``"set"``), each of size >= 3."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if kind == "cycle":
        return _TRIANGLES[TriangleKind.ASSOC_CYCLE](n, k)
    if kind == "set":
        return _TRIANGLES[TriangleKind.ASSOC_SET](n, k)
    raise ValueError(f"unknown associated Stirling kind {kind!r}")


# ---------------------------------------------------------------------------
# Akiyama-Tanigawa arrays
# ---------------------------------------------------------------------------


class ATMode(enum.Enum):
    DIVIDE = "divide"
    MULTIPLY = "multiply"


@dataclass(frozen=True)
class ATArray:
    rows: tuple
    mode: ATMode


def at_array(nrows: int, ncols: int, mode: ATMode = ATMode.DIVIDE) -> ATArray:
    """Rows ``0..nrows-1`` and columns ``0..ncols-1`` of the array seeded by ``1, 1/2, 1/3, ...``."""
    width = ncols + nrows - 1
    row = [Fraction(1, m + 1) for m in range(width)]
    rows = [tuple(row[:ncols])]
    for _ in range(1, nrows):
        if mode is ATMode.DIVIDE:
            row = [(row[m] - row[m + 1]) / (m + 1) for m in range(len(row) - 1)]
        else:
            row = [(row[m] - row[m + 1]) * (m + 1) for m in range(len(row) - 1)]
        rows.append(tuple(row[:ncols]))
    return ATArray(tuple(rows), mode)


class _ATHeads:
    """Growing list of ``a_{n,0}``, computed with the in-place triangular update."""

    def __init__(self, mode: ATMode):
        self.mode = mode
        self._lock = threading.Lock()
        self._heads: tuple = ()

    def __call__(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("n must be >= 0")
        heads = self._heads
        if n >= len(heads):
            with self._lock:
                heads = self._heads
                if n >= len(heads):
                    heads = self._compute(max(n, 2 * len(heads)))
                    self._heads = heads
        return heads[n]

    def _compute(self, nmax: int) -> tuple:
        A = [Fraction(0)] * (nmax + 1)
        out = []
        divide = self.mode is ATMode.DIVIDE
        for m in range(nmax + 1):
            A[m] = Fraction(1, m + 1)
            for j in range(m, 0, -1):
                A[j - 1] = (A[j - 1] - A[j]) / j if divide else (A[j - 1] - A[j]) * j
            out.append(A[0])
        return tuple(out)


_bernoulli_at = _ATHeads(ATMode.MULTIPLY)
_omega_at = _ATHeads(ATMode.DIVIDE)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number with ``B_1 = +1/2``."""
    return _bernoulli_at(n)


@lru_cache(maxsize=None)
def _bernoulli_minus(n: int) -> Fraction:
    if n == 0:
        return Fraction(1)
    s = sum(math.comb(n + 1, j) * _bernoulli_minus(j) for j in range(n))
    return -s / (n + 1)


def bernoulli_classical(n: int) -> Fraction:
    """Bernoulli number from ``sum_{j<=n} C(n+1, j) B_j = 0``, reported with ``B_1 = +1/2``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    for m in range(n):  # warm the cache bottom-up to keep recursion shallow
        _bernoulli_minus(m)
    b = _bernoulli_minus(n)
    return -b if n == 1 else b


def omega(n: int) -> Fraction:
    """Head ``a_{n,0}`` of the divide-mode array."""
    return _omega_at(n)


# ---------------------------------------------------------------------------
# Factorial-type helpers
# ---------------------------------------------------------------------------


def double_factorial(n: int) -> int:
    if n < -1:
        raise ValueError("double factorial is defined for n >= -1")
    return math.prod(range(n, 0, -2))


def binomial_rat(alpha, k: int) -> Fraction:
    """``alpha (alpha-1) ... (alpha-k+1) / k!`` for rational ``alpha``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    alpha = Fraction(alpha)
    num = Fraction(1)
    for i in range(k):
        num *= alpha - i
    return num / math.factorial(k)


def binomial_half(n: int, k: int) -> Fraction:
    """``C(n, k - 1/2) = (2n)!! / ((2k-1)!! (2n-2k-1)!!)`` for ``0 <= k <= n``."""
    if not 0 <= k <= n:
        raise ValueError("binomial_half needs 0 <= k <= n")
    return Fraction(double_factorial(2 * n), double_factorial(2 * k - 1) * double_factorial(2 * n - 2 * k - 1))
