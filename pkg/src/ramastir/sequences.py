"""Named coefficient sequences, each available through several formulas.

Sequences and their method enums:

* ``gamma_r``   Stirling coefficients, ``GammaMethod``
* ``rho_hat``   theta_n coefficients minus ``delta_{r,0}``, ``RhoHatMethod``
* ``tau_r``     coefficients of ``Gamma(n+1) Psi_n`` normalised like gamma, ``TauMethod``
* ``psi_r``     Psi_n coefficients, from a triangular solve against gamma and tau
* ``c_n``       coefficients of Watson's ``U`` in powers of ``t^(1/2)``, ``CMethod``
* ``alpha``, ``alpha_star``, ``beta``, ``beta_star``  Stirling-sum constants

Every method of one sequence must return the same value; the cross-method
audit in :mod:`ramastir.verifier` and the ``cross`` CLI command check that.

Integral representations over ``(-inf, 0]`` are never integrated numerically.
They are expanded into finite sums of beta functions at integer arguments.
"""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from ramastir.algebra import (
    DeMoivreTable,
    PowerSeries,
    Sqrt2Rat,
    ps_derive,
    ps_mul,
    ps_pow,
    ps_recip,
    ps_revert,
    sqrt2_pow,
)
from ramastir.triangles import (
    assoc_stirling,
    bernoulli,
    bernoulli_classical,
    binomial_rat,
    double_factorial,
    eulerian2,
    eulerian2_star,
    eulerian2_star_coeffs,
    omega,
    stirling_cycle,
    stirling_cycle_star,
)

__all__ = [
    "GammaMethod",
    "RhoHatMethod",
    "TauMethod",
    "CMethod",
    "AlphaMethod",
    "AlphaStarMethod",
    "BetaMethod",
    "BetaStarMethod",
    "SeqValue",
    "METHODS",
    "DEFAULT_METHOD",
    "gamma_r",
    "rho_hat",
    "rho_r",
    "tau_r",
    "psi_r",
    "c_n",
    "d_n",
    "s_n_k",
    "alpha",
    "alpha_star",
    "beta",
    "beta_star",
    "beta_integral_F",
    "beta_integral_F_closed",
    "neg_axis_integral",
    "product_integral",
    "s_series",
    "v_series",
    "v_star_series",
    "u_series",
    "evaluate",
    "method_names",
    "Sequences",
]


class GammaMethod(enum.Enum):
    WRENCH_RECURRENCE = "wrench"
    DEMOIVRE_RECIPROCAL = "demoivre"
    DEMOIVRE_FACTORIAL_RECIPROCAL = "demoivre-factorial"
    PERRON = "perron"
    BRASSESCO_MENDEZ = "brassesco-mendez"
    ASSOC_CYCLE = "assoc-cycle"
    ASSOC_SET = "assoc-set"
    EXP_OF_LOG = "exp-log"
    FROM_C = "from-c"
    MARSAGLIA = "marsaglia"
    V_POWER = "v-power"
    V_STAR = "v-star"


class RhoHatMethod(enum.Enum):
    DEMOIVRE_RECIPROCAL = "demoivre"
    DEMOIVRE_FACTORIAL_RECIPROCAL = "demoivre-factorial"
    PERRON = "perron"
    BRASSESCO_MENDEZ = "brassesco-mendez"
    ASSOC_CYCLE = "assoc-cycle"
    ASSOC_SET = "assoc-set"
    BERNOULLI_RECURRENCE = "bernoulli-recurrence"
    FROM_C = "from-c"
    MARSAGLIA = "marsaglia"
    V_POWER = "v-power"
    V_STAR = "v-star"


class TauMethod(enum.Enum):
    DEMOIVRE_RECIPROCAL = "demoivre"
    PERRON = "perron"
    V_POWER = "v-power"
    V_STAR_LOG_DERIVATIVE = "v-star-logderiv"
    FROM_C = "from-c"


class CMethod(enum.Enum):
    RECURSION = "recursion"
    FUNCTIONAL = "functional"
    REVERSION = "reversion"


class AlphaMethod(enum.Enum):
    DEFINITION = "stirling-sum"
    EULERIAN = "eulerian"
    EULERIAN_BINOMIAL = "eulerian-binomial"
    BERNOULLI = "bernoulli"
    BETA_INTEGRAL = "beta-integral"


class AlphaStarMethod(enum.Enum):
    DEFINITION = "stirling-sum"
    EULERIAN_STAR = "eulerian-star"
    EULERIAN_STAR_BINOMIAL = "eulerian-star-binomial"
    EULERIAN = "eulerian"
    BETA_INTEGRAL = "beta-integral"
    STAR_BETA_INTEGRAL = "star-beta-integral"


class BetaMethod(enum.Enum):
    DEFINITION = "stirling-sum"
    EULERIAN = "eulerian"
    BETA_INTEGRAL = "beta-integral"


class BetaStarMethod(enum.Enum):
    DEFINITION = "stirling-sum"
    EULERIAN_STAR = "eulerian-star"


@dataclass(frozen=True)
class SeqValue:
    value: object
    method: enum.Enum | str | None
    index: int


# ---------------------------------------------------------------------------
# Caches that grow on demand
# ---------------------------------------------------------------------------


class _Growing:
    """Holds ``build(size)`` for the largest size requested so far."""

    def __init__(self, build: Callable[[int], object]):
        self._build = build
        self._lock = threading.Lock()
        self._size = -1
        self._value = None

    def get(self, size: int):
        if size > self._size:
            with self._lock:
                if size > self._size:
                    new_size = max(size, 2 * self._size, 8)
                    self._value = self._build(new_size)
                    self._size = new_size
        return self._value


def _build_s(order: int) -> PowerSeries:
    return PowerSeries([0] + [Fraction(1, j + 2) for j in range(1, order + 1)], order)


def _build_v(order: int) -> PowerSeries:
    return ps_pow(1 + 2 * _build_s(order), Fraction(1, 2))


def _build_v_star(order: int) -> PowerSeries:
    V = _v_cache.get(order).truncate(order)
    G = ps_revert(PowerSeries((Fraction(0),) + V.coeffs, order + 1))
    return PowerSeries(G.coeffs[1:], order)


_v_cache = _Growing(_build_v)
_v_star_cache = _Growing(_build_v_star)


def s_series(order: int) -> PowerSeries:
    """``S(x) = x/3 + x^2/4 + x^3/5 + ...``."""
    return _build_s(order)


def v_series(order: int) -> PowerSeries:
    """``V(x) = (1 + 2 S(x))^(1/2)``."""
    return _v_cache.get(order).truncate(order)


def v_star_series(order: int) -> PowerSeries:
    """``V*(x)`` where ``x V*(x)`` is the compositional inverse of ``x V(x)``."""
    return _v_star_cache.get(order).truncate(order)


def _v_power_coeff(e, n: int) -> Fraction:
    return ps_pow(v_series(n), e)[n]


# ---------------------------------------------------------------------------
# De Moivre streams
# ---------------------------------------------------------------------------

_RECIP = DeMoivreTable(lambda j: Fraction(1, j + 2))
_FACT_RECIP = DeMoivreTable(lambda j: Fraction(1, math.factorial(j + 2)))
_LOG_GAMMA = DeMoivreTable(lambda j: bernoulli(j + 1) / ((j + 1) * j))


# ---------------------------------------------------------------------------
# c_n
# ---------------------------------------------------------------------------

_SQRT2 = Sqrt2Rat(0, 1)


def _build_c_recursion(nmax: int) -> tuple:
    c = [Sqrt2Rat(1), _SQRT2]
    quarter_root2 = _SQRT2 / 4
    for n in range(1, nmax):
        s = Sqrt2Rat()
        for j in range(2, n + 1):
            s = s + c[j] * c[n + 2 - j]
        c.append(_SQRT2 * c[n] / (n + 2) - quarter_root2 * s)
    return tuple(c[: nmax + 1])


def _build_c_functional(nmax: int) -> tuple:
    # sum_{x+y=n} x c_x c_y = n c_n + 2 c_{n-2}, solved for c_{n-1}
    c = [Sqrt2Rat(1), _SQRT2]
    for m in range(2, nmax + 1):
        s = Sqrt2Rat()
        for x in range(2, m):
            s = s + x * c[x] * c[m + 1 - x]
        c.append((2 * c[m - 1] - s) / ((m + 1) * c[1]))
    return tuple(c[: nmax + 1])


def _build_c_reversion(nmax: int) -> tuple:
    # U = 1 + x V*(-x) with x = sqrt(2t): c_n = (-1)^(n-1) [x^(n-1)] V* * sqrt2^n
    Vs = v_star_series(max(nmax - 1, 0))
    c = [Sqrt2Rat(1)]
    for n in range(1, nmax + 1):
        c.append((-1) ** (n - 1) * Vs[n - 1] * sqrt2_pow(n))
    return tuple(c)


_c_caches = {
    CMethod.RECURSION: _Growing(_build_c_recursion),
    CMethod.FUNCTIONAL: _Growing(_build_c_functional),
    CMethod.REVERSION: _Growing(_build_c_reversion),
}


def c_n(n: int, method: CMethod = CMethod.RECURSION) -> Sqrt2Rat:
    """Coefficient of ``t^(n/2)`` in ``U(t)``; zero for negative ``n``."""
    if n < 0:
        return Sqrt2Rat()
    return _c_caches[CMethod(method)].get(n)[n]


def d_n(n: int, method: CMethod = CMethod.RECURSION) -> Sqrt2Rat:
    """``n!! c_n`` (zero for negative ``n``)."""
    if n < 0:
        return Sqrt2Rat()
    return double_factorial(n) * c_n(n, method)


def _build_u(order: int) -> PowerSeries:
    return PowerSeries([c_n(j) for j in range(order + 1)], order)


_u_cache = _Growing(_build_u)


def u_series(order: int) -> PowerSeries:
    """``U`` as a series in ``s = t^(1/2)`` over Q(sqrt2)."""
    return _u_cache.get(order).truncate(order)


@lru_cache(maxsize=None)
def _u_powers(k: int, order: int) -> tuple:
    U = u_series(order)
    out = [U]
    for _ in range(1, k):
        out.append(ps_mul(out[-1], U).truncate(order))
    return tuple(out)


def s_n_k(n: int, k: int) -> Sqrt2Rat:
    """``S_n(k) = [t^(n/2)] U(t)^k``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0:
        return Sqrt2Rat()
    order = max(n, 16)
    order = 1 << (order - 1).bit_length()
    kk = max(k, 16)
    kk = 1 << (kk - 1).bit_length()
    return _u_powers(kk, order)[k - 1][n]


def _sum_xcyc(n: int) -> Sqrt2Rat:
    """``sum_{x+y=n} x c_x * y c_y``."""
    s = Sqrt2Rat()
    for x in range(1, n):
        s = s + x * c_n(x) * (n - x) * c_n(n - x)
    return s


# ---------------------------------------------------------------------------
# gamma_r
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _gamma_wrench(r: int) -> Fraction:
    if r == 0:
        return Fraction(1)
    s = sum(bernoulli(j + 2) / (j + 2) * _gamma_wrench(r - 1 - j) for j in range(r))
    return s / r


def _gamma_demoivre(r: int, table: DeMoivreTable) -> Fraction:
    total = Fraction(0)
    for k in range(2 * r + 1):
        total += binomial_rat(Fraction(-2 * r - 1, 2), k) * 2**k * table(2 * r, k)
    return double_factorial(2 * r - 1) * total


def _gamma_double_factorial(r: int, table: DeMoivreTable) -> Fraction:
    total = Fraction(0)
    for k in range(2 * r + 1):
        total += Fraction((-1) ** k * double_factorial(2 * r + 2 * k - 1), math.factorial(k)) * table(2 * r, k)
    return total


def _gamma_assoc(r: int, kind: str) -> Fraction:
    return sum(
        (Fraction((-1) ** k, double_factorial(2 * r + 2 * k)) * assoc_stirling(kind, 2 * r + 2 * k, k)
         for k in range(2 * r + 1)),
        Fraction(0),
    )


def _gamma_exp_log(r: int) -> Fraction:
    return sum((_LOG_GAMMA(r, k) / math.factorial(k) for k in range(r + 1)), Fraction(0))


def _gamma_from_c(r: int) -> Fraction:
    n = 2 * r + 1
    return (double_factorial(n) * c_n(n) * sqrt2_pow(-n)).rational()


def _gamma_marsaglia(r: int) -> Fraction:
    # sqrt2 * Gamma(r + 3/2) / Gamma(1/2) * c_{2r+1}
    ratio = math.prod((Fraction(2 * i + 1, 2) for i in range(r + 1)), start=Fraction(1))
    return (_SQRT2 * ratio * c_n(2 * r + 1, CMethod.FUNCTIONAL)).rational()


_GAMMA_IMPL = {
    GammaMethod.WRENCH_RECURRENCE: _gamma_wrench,
    GammaMethod.DEMOIVRE_RECIPROCAL: lambda r: _gamma_demoivre(r, _RECIP),
    GammaMethod.DEMOIVRE_FACTORIAL_RECIPROCAL: lambda r: _gamma_demoivre(r, _FACT_RECIP),
    GammaMethod.PERRON: lambda r: _gamma_double_factorial(r, _RECIP),
    GammaMethod.BRASSESCO_MENDEZ: lambda r: _gamma_double_factorial(r, _FACT_RECIP),
    GammaMethod.ASSOC_CYCLE: lambda r: _gamma_assoc(r, "cycle"),
    GammaMethod.ASSOC_SET: lambda r: _gamma_assoc(r, "set"),
    GammaMethod.EXP_OF_LOG: _gamma_exp_log,
    GammaMethod.FROM_C: _gamma_from_c,
    GammaMethod.MARSAGLIA: _gamma_marsaglia,
    GammaMethod.V_POWER: lambda r: double_factorial(2 * r - 1) * _v_power_coeff(-2 * r - 1, 2 * r),
    GammaMethod.V_STAR: lambda r: double_factorial(2 * r + 1) * v_star_series(2 * r)[2 * r],
}


@lru_cache(maxsize=None)
def gamma_r(r: int, method: GammaMethod = GammaMethod.WRENCH_RECURRENCE) -> Fraction:
    """Stirling coefficient: ``Gamma(n+1) ~ sqrt(2 pi n) (n/e)^n sum_r gamma_r n^-r``."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return _GAMMA_IMPL[GammaMethod(method)](r)


# ---------------------------------------------------------------------------
# rho_hat_r = rho_r - delta_{r,0}
# ---------------------------------------------------------------------------


def _rho_demoivre(r: int, table: DeMoivreTable) -> Fraction:
    total = Fraction(0)
    for k in range(2 * r + 2):
        total += binomial_rat(-r - 1, k) * 2**k * table(2 * r + 1, k)
    return double_factorial(2 * r) * total


def _rho_double_factorial(r: int, table: DeMoivreTable) -> Fraction:
    total = Fraction(0)
    for k in range(2 * r + 2):
        total += Fraction((-1) ** k * double_factorial(2 * r + 2 * k), math.factorial(k)) * table(2 * r + 1, k)
    return total


def _rho_assoc_sum(r: int, kind: str) -> Fraction:
    return sum(
        (Fraction((-1) ** k, double_factorial(2 * r + 2 * k + 1)) * assoc_stirling(kind, 2 * r + 2 * k + 1, k)
         for k in range(2 * r + 2)),
        Fraction(0),
    )


def _delta0(r: int) -> int:
    return 1 if r == 0 else 0


@lru_cache(maxsize=None)
def _rho_bernoulli_recurrence(r: int) -> Fraction:
    s = alpha_star(r + 1, AlphaStarMethod.EULERIAN) - bernoulli(r + 2) / (r + 2)
    for j in range(r):
        s += bernoulli(j + 2) / (j + 2) * _rho_bernoulli_recurrence(r - 1 - j)
    return s / Fraction(2 * r + 1, 2)


def _rho_from_c(r: int) -> Fraction:
    n = 2 * r + 2
    return (-double_factorial(n) * c_n(n) * sqrt2_pow(-n)).rational()


def _rho_marsaglia(r: int) -> Fraction:
    return (-math.factorial(r + 1) * c_n(2 * r + 2, CMethod.FUNCTIONAL)).rational()


_RHO_IMPL = {
    RhoHatMethod.DEMOIVRE_RECIPROCAL: lambda r: _rho_demoivre(r, _RECIP),
    RhoHatMethod.DEMOIVRE_FACTORIAL_RECIPROCAL: lambda r: -_delta0(r) - _rho_demoivre(r, _FACT_RECIP),
    RhoHatMethod.PERRON: lambda r: _rho_double_factorial(r, _RECIP),
    RhoHatMethod.BRASSESCO_MENDEZ: lambda r: -_delta0(r) - _rho_double_factorial(r, _FACT_RECIP),
    RhoHatMethod.ASSOC_CYCLE: lambda r: _rho_assoc_sum(r, "cycle"),
    RhoHatMethod.ASSOC_SET: lambda r: -_delta0(r) - _rho_assoc_sum(r, "set"),
    RhoHatMethod.BERNOULLI_RECURRENCE: _rho_bernoulli_recurrence,
    RhoHatMethod.FROM_C: _rho_from_c,
    RhoHatMethod.MARSAGLIA: _rho_marsaglia,
    RhoHatMethod.V_POWER: lambda r: double_factorial(2 * r) * _v_power_coeff(-2 * r - 2, 2 * r + 1),
    RhoHatMethod.V_STAR: lambda r: double_factorial(2 * r + 2) * v_star_series(2 * r + 1)[2 * r + 1],
}


@lru_cache(maxsize=None)
def rho_hat(r: int, method: RhoHatMethod = RhoHatMethod.DEMOIVRE_RECIPROCAL) -> Fraction:
    """``rho_r - delta_{r,0}`` where ``theta_n ~ sum_r rho_r n^-r``."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return _RHO_IMPL[RhoHatMethod(method)](r)


def rho_r(r: int, method: RhoHatMethod = RhoHatMethod.DEMOIVRE_RECIPROCAL) -> Fraction:
    return rho_hat(r, method) + _delta0(r)


# ---------------------------------------------------------------------------
# tau_r and psi_r
# ---------------------------------------------------------------------------


def _tau_demoivre(r: int) -> Fraction:
    total = Fraction(0)
    for k in range(2 * r + 2):
        total += binomial_rat(Fraction(-2 * r - 1, 2), k) * 2**k * _RECIP(2 * r + 1, k)
    return double_factorial(2 * r - 1) * total


def _tau_perron(r: int) -> Fraction:
    total = Fraction(0)
    for k in range(2 * r + 2):
        total += Fraction((-1) ** k * double_factorial(2 * r + 2 * k - 1), math.factorial(k)) * _RECIP(2 * r + 1, k)
    return total


def _tau_v_star(r: int) -> Fraction:
    Vs = v_star_series(2 * r + 1)
    logd = ps_mul(ps_derive(Vs), ps_recip(Vs.truncate(2 * r)))
    return double_factorial(2 * r - 1) * logd[2 * r]


def _tau_from_c(r: int) -> Fraction:
    corr = double_factorial(2 * r - 1) * sqrt2_pow(-(2 * r - 1)) * _sum_xcyc(2 * r + 3) / 4
    return gamma_r(r, GammaMethod.FROM_C) - corr.rational()


_TAU_IMPL = {
    TauMethod.DEMOIVRE_RECIPROCAL: _tau_demoivre,
    TauMethod.PERRON: _tau_perron,
    TauMethod.V_POWER: lambda r: double_factorial(2 * r - 1) * _v_power_coeff(-2 * r - 1, 2 * r + 1),
    TauMethod.V_STAR_LOG_DERIVATIVE: _tau_v_star,
    TauMethod.FROM_C: _tau_from_c,
}


@lru_cache(maxsize=None)
def tau_r(r: int, method: TauMethod = TauMethod.DEMOIVRE_RECIPROCAL) -> Fraction:
    """Coefficients of ``Gamma(n+1) Psi_n / (sqrt(2 pi n) (n/e)^n)``."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return _TAU_IMPL[TauMethod(method)](r)


@lru_cache(maxsize=None)
def psi_r(r: int,
          tau_method: TauMethod = TauMethod.DEMOIVRE_RECIPROCAL,
          gamma_method: GammaMethod = GammaMethod.WRENCH_RECURRENCE) -> Fraction:
    """Psi_n coefficients from ``sum_j psi_j gamma_{r-j} = tau_r``."""
    if r < 0:
        raise ValueError("r must be >= 0")
    s = tau_r(r, tau_method)
    for j in range(r):
        s -= psi_r(j, tau_method, gamma_method) * gamma_r(r - j, gamma_method)
    return s / gamma_r(0, gamma_method)


# ---------------------------------------------------------------------------
# beta-function evaluation of integrals over (-inf, 0]
# ---------------------------------------------------------------------------


def _beta_fn(p: int, q: int) -> Fraction:
    return Fraction(math.factorial(p - 1) * math.factorial(q - 1), math.factorial(p + q - 1))


def neg_axis_integral(coeffs: dict[int, Fraction], a: int, e: int) -> Fraction:
    """``int_{-inf}^0 t^a (1-t)^(-e) P(t) dt`` for a Laurent polynomial ``P`` given as ``{power: coeff}``.

    Each monomial gives ``(-1)^(a+k) B(a+k+1, e-a-k-1)``; divergent terms raise ValueError.
    """
    total = Fraction(0)
    for k, p in coeffs.items():
        if not p:
            continue
        lo, hi = a + k + 1, e - a - k - 1
        if lo < 1 or hi < 1:
            raise ValueError(f"integral diverges (t^{a + k} against (1-t)^-{e})")
        total += (-1) ** (a + k) * p * _beta_fn(lo, hi)
    return total


def _e_coeffs(n: int, starred: bool) -> dict[int, Fraction]:
    if starred:
        return eulerian2_star_coeffs(n)
    return {k: eulerian2(n, k) for k in range(n + 1) if eulerian2(n, k)}


def beta_integral_F(a: int, b: int, n: int, starred: bool = False) -> Fraction:
    """``int_{-inf}^0 t^a (1-t)^(-a-b-2) F_n(t) dt`` with ``F_n = E_n/(x-1)^(2n)``, evaluated exactly."""
    if a < 0 or n < 1 or n + b + 1 < 0:
        raise ValueError("need a >= 0, n >= 1 and n + b + 1 >= 0")
    if starred and n < 2:
        raise ValueError("the starred form needs n >= 2")
    return neg_axis_integral(_e_coeffs(n, starred), a, a + b + 2 + 2 * n)


def beta_integral_F_closed(a: int, b: int, n: int, starred: bool = False) -> Fraction:
    """The same integral as :func:`beta_integral_F` through reciprocal binomial coefficients."""
    if a < 0 or n < 1 or n + b + 1 < 0:
        raise ValueError("need a >= 0, n >= 1 and n + b + 1 >= 0")
    if starred and n < 2:
        raise ValueError("the starred form needs n >= 2")
    coef = eulerian2_star if starred else eulerian2
    m = 2 * n + a + b
    s = sum((Fraction((-1) ** k, math.comb(m, k + a)) * coef(n, k) for k in range(n)), Fraction(0))
    return (-1) ** a * s / (m + 1)


def product_integral(j: int, m: int, starred: bool = False) -> Fraction:
    """``int_{-inf}^0 t (1-t)^(-1) F_j(t) F_m(t) dt``; with ``starred`` the second factor is ``F*_m``."""
    ej = _e_coeffs(j, False) if j else {0: Fraction(1)}
    em = _e_coeffs(m, starred) if (m or starred) else {0: Fraction(1)}
    prod: dict[int, Fraction] = {}
    for p, x in ej.items():
        for q, y in em.items():
            prod[p + q] = prod.get(p + q, Fraction(0)) + x * y
    return neg_axis_integral(prod, 1, 1 + 2 * (j + m))


# ---------------------------------------------------------------------------
# alpha, alpha*, beta, beta*
# ---------------------------------------------------------------------------


def _stirling_sum_alpha(j: int, T) -> Fraction:
    total = Fraction(0)
    for ell in range(2, 2 * j + 3):
        inner = 0
        for k in range(1, ell + 1):
            t = T(k, k - j)
            if t:
                inner += (-1) ** k * k * t * math.comb(ell - 1, k - 1)
        total += Fraction(inner) / ell
    return total


def _stirling_sum_beta(j: int, T) -> Fraction:
    total = Fraction(0)
    for ell in range(2, 2 * j + 4):
        inner = 0
        for k in range(2, ell + 1):
            t = T(k, k - j)
            if t:
                inner += (-1) ** k * k * t * math.comb(ell - 2, k - 2)
        total += Fraction(inner) / ell
    return total


def _eulerian_alpha(j: int, coef) -> Fraction:
    s = sum((Fraction((-1) ** r, math.comb(2 * j + 1, r + 1)) * coef(j + 1, r) for r in range(j + 1)), Fraction(0))
    return -s / (2 * (j + 1))


def _eulerian_binomial_alpha(j: int, coef) -> Fraction:
    total = Fraction(0)
    for r in range(-1, j + 1):
        e = coef(j + 1, r)
        if not e:
            continue
        for ell in range(max(2, 2 * j + 1 - r), 2 * j + 3):
            total += Fraction((-1) ** ell * math.comb(r + 1, 2 * j + 2 - ell), ell) * e
    return total


def _alpha_eulerian(j: int) -> Fraction:
    return Fraction(1, 2) if j == 0 else _eulerian_alpha(j, eulerian2)


def _alpha_beta_integral(j: int) -> Fraction:
    return Fraction(1, 2) if j == 0 else beta_integral_F(1, -2, j + 1)


_ALPHA_IMPL = {
    AlphaMethod.DEFINITION: lambda j: _stirling_sum_alpha(j, stirling_cycle),
    AlphaMethod.EULERIAN: _alpha_eulerian,
    AlphaMethod.EULERIAN_BINOMIAL: lambda j: _eulerian_binomial_alpha(j, eulerian2),
    AlphaMethod.BERNOULLI: lambda j: bernoulli(j + 1) / (j + 1),
    AlphaMethod.BETA_INTEGRAL: _alpha_beta_integral,
}


@lru_cache(maxsize=None)
def alpha(j: int, method: AlphaMethod = AlphaMethod.DEFINITION) -> Fraction:
    if j < 0:
        raise ValueError("j must be >= 0")
    return _ALPHA_IMPL[AlphaMethod(method)](j)


def _alpha_star_eulerian(n: int) -> Fraction:
    if n == 0:
        return Fraction(1, 2)
    s = sum((Fraction((-1) ** k, math.comb(2 * n + 1, k)) * eulerian2(n, k) for k in range(n)), Fraction(0))
    return (-1) ** n * s / (2 * (n + 1))


_ALPHA_STAR_IMPL = {
    AlphaStarMethod.DEFINITION: lambda j: _stirling_sum_alpha(j, stirling_cycle_star),
    AlphaStarMethod.EULERIAN_STAR: lambda j: Fraction(1, 2) if j == 0 else _eulerian_alpha(j, eulerian2_star),
    AlphaStarMethod.EULERIAN_STAR_BINOMIAL: lambda j: _eulerian_binomial_alpha(j, eulerian2_star),
    AlphaStarMethod.EULERIAN: _alpha_star_eulerian,
    AlphaStarMethod.BETA_INTEGRAL: lambda j: Fraction(1, 2) if j == 0 else (-1) ** j * beta_integral_F(0, 1, j),
    AlphaStarMethod.STAR_BETA_INTEGRAL: lambda j: (
        Fraction(1, 2) if j == 0 else beta_integral_F(1, -2, j + 1, starred=True)
    ),
}


@lru_cache(maxsize=None)
def alpha_star(j: int, method: AlphaStarMethod = AlphaStarMethod.DEFINITION) -> Fraction:
    if j < 0:
        raise ValueError("j must be >= 0")
    return _ALPHA_STAR_IMPL[AlphaStarMethod(method)](j)


def _eulerian_beta(j: int, coef) -> Fraction:
    s = sum((Fraction((-1) ** r, math.comb(2 * j + 2, r + 2)) * coef(j + 1, r) for r in range(j + 1)), Fraction(0))
    return -s / (2 * j + 3)


_BETA_IMPL = {
    BetaMethod.DEFINITION: lambda j: _stirling_sum_beta(j, stirling_cycle),
    BetaMethod.EULERIAN: lambda j: Fraction(2, 3) if j == 0 else _eulerian_beta(j, eulerian2),
    BetaMethod.BETA_INTEGRAL: lambda j: Fraction(2, 3) if j == 0 else -beta_integral_F(2, -2, j + 1),
}

_BETA_STAR_IMPL = {
    BetaStarMethod.DEFINITION: lambda j: _stirling_sum_beta(j, stirling_cycle_star),
    BetaStarMethod.EULERIAN_STAR: lambda j: Fraction(1, 6) if j == 0 else _eulerian_beta(j, eulerian2_star),
}


@lru_cache(maxsize=None)
def beta(j: int, method: BetaMethod = BetaMethod.DEFINITION) -> Fraction:
    if j < 0:
        raise ValueError("j must be >= 0")
    return _BETA_IMPL[BetaMethod(method)](j)


@lru_cache(maxsize=None)
def beta_star(j: int, method: BetaStarMethod = BetaStarMethod.DEFINITION) -> Fraction:
    if j < 0:
        raise ValueError("j must be >= 0")
    return _BETA_STAR_IMPL[BetaStarMethod(method)](j)


# ---------------------------------------------------------------------------
# Uniform access
# ---------------------------------------------------------------------------

METHODS: dict[str, type[enum.Enum] | None] = {
    "gamma": GammaMethod,
    "rho": RhoHatMethod,
    "rho_hat": RhoHatMethod,
    "tau": TauMethod,
    "psi": None,
    "c": CMethod,
    "alpha": AlphaMethod,
    "alpha_star": AlphaStarMethod,
    "beta": BetaMethod,
    "beta_star": BetaStarMethod,
    "omega": None,
    "bernoulli": None,
}


DEFAULT_METHOD: dict[str, object] = {
    "gamma": GammaMethod.WRENCH_RECURRENCE,
    "rho": RhoHatMethod.DEMOIVRE_RECIPROCAL,
    "rho_hat": RhoHatMethod.DEMOIVRE_RECIPROCAL,
    "tau": TauMethod.DEMOIVRE_RECIPROCAL,
    "c": CMethod.RECURSION,
    "alpha": AlphaMethod.DEFINITION,
    "alpha_star": AlphaStarMethod.DEFINITION,
    "beta": BetaMethod.DEFINITION,
    "beta_star": BetaStarMethod.DEFINITION,
    "bernoulli": "akiyama-tanigawa",
}


def _bernoulli_by(n: int, method: str | None) -> Fraction:
    if method == "akiyama-tanigawa":
        return bernoulli(n)
    if method == "classical":
        return bernoulli_classical(n)
    raise ValueError(f"unknown Bernoulli method {method!r}")


def evaluate(name: str, index: int, method=None) -> SeqValue:
    """Value of sequence ``name`` at ``index``; ``method`` is an enum member, its string value, or None for the default."""
    if name not in METHODS:
        raise KeyError(f"unknown sequence {name!r}")
    enum_cls = METHODS[name]
    if method is None:
        method = DEFAULT_METHOD.get(name)
    if enum_cls is not None and method is not None:
        method = enum_cls(method.value if isinstance(method, enum.Enum) else method)
    elif enum_cls is None and name != "bernoulli" and method is not None:
        raise ValueError(f"{name} has a single method")
    fn = {
        "gamma": gamma_r,
        "rho": rho_r,
        "rho_hat": rho_hat,
        "tau": tau_r,
        "c": c_n,
        "alpha": alpha,
        "alpha_star": alpha_star,
        "beta": beta,
        "beta_star": beta_star,
    }.get(name)
    if fn is not None:
        value = fn(index, method)
    elif name == "psi":
        value = psi_r(index)
    elif name == "omega":
        value = omega(index)
    else:
        value = _bernoulli_by(index, method)
    return SeqValue(value, method, index)


def method_names(name: str) -> list[str]:
    """String tags accepted by ``evaluate(name, ..., method)``."""
    if name == "bernoulli":
        return ["akiyama-tanigawa", "classical"]
    enum_cls = METHODS[name]
    return [] if enum_cls is None else [m.value for m in enum_cls]


class Sequences:
    """Default-method view of every sequence, memoized per instance.

    The identity checks read all sequence values through an instance of this
    class.  Subclasses can override single accessors, e.g. to corrupt one
    stored value and confirm the checks notice.
    """

    def __init__(self):
        self._memo: dict = {}
        self._lock = threading.Lock()

    def _cached(self, key, compute):
        try:
            return self._memo[key]
        except KeyError:
            pass
        value = compute()
        with self._lock:
            return self._memo.setdefault(key, value)

    def gamma(self, r: int) -> Fraction:
        return gamma_r(r)

    def rho_hat(self, r: int) -> Fraction:
        # rho_hat_{-1} = -Gamma(1) c_0 = -1 keeps the even c-relations uniform at r = 0
        return Fraction(-1) if r == -1 else rho_hat(r)

    def rho(self, r: int) -> Fraction:
        return self.rho_hat(r) + _delta0(r)

    def tau(self, r: int) -> Fraction:
        return tau_r(r)

    def psi(self, r: int) -> Fraction:
        def compute():
            s = self.tau(r)
            for j in range(r):
                s -= self.psi(j) * self.gamma(r - j)
            return s / self.gamma(0)

        return self._cached(("psi", r), compute)

    def c(self, n: int) -> Sqrt2Rat:
        return c_n(n)

    def d(self, n: int) -> Sqrt2Rat:
        return Sqrt2Rat() if n < 0 else double_factorial(n) * self.c(n)

    def s(self, n: int, k: int) -> Sqrt2Rat:
        return s_n_k(n, k)

    def alpha(self, j: int) -> Fraction:
        return alpha(j)

    def alpha_star(self, j: int) -> Fraction:
        return alpha_star(j)

    def beta(self, j: int) -> Fraction:
        return beta(j)

    def beta_star(self, j: int) -> Fraction:
        return beta_star(j)

    def bernoulli(self, n: int) -> Fraction:
        return bernoulli(n)
