"""Registry of identities, checked exactly over finite index ranges.

Each identity is a generator that yields ``(index, lhs, rhs)`` triples for
every index up to a bound.  :func:`run_check` walks the triples and stops at
the first disagreement, so a failing report always carries the least failing
index together with both exact sides.

All sequence values are read through a :class:`~ramastir.sequences.Sequences`
instance (the *source*).  Passing a subclass with one corrupted accessor is
how the suite demonstrates that it can actually fail.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import sympy

from ramastir import sequences as seq
from ramastir.algebra import PowerSeries, Sqrt2Rat, ps_compose, ps_revert, ps_revert_newton, sqrt2_pow
from ramastir.sequences import (
    AlphaMethod,
    AlphaStarMethod,
    BetaMethod,
    BetaStarMethod,
    Sequences,
    TauMethod,
)
from ramastir.triangles import (
    ATMode,
    at_array,
    bernoulli,
    bernoulli_classical,
    binomial_half,
    binomial_rat,
    double_factorial,
    eulerian2,
    eulerian2_star,
    omega,
    stirling_cycle,
    stirling_cycle_star,
)

__all__ = ["IdentityCheck", "CheckReport", "REGISTRY", "check_ids", "run_check", "run_all", "default_range"]

Triple = tuple[object, object, object]
Checker = Callable[[Sequences, int], Iterator[Triple]]

MAX_ORDER_ENV = "RAMASTIR_MAX_ORDER"


@dataclass(frozen=True)
class IdentityCheck:
    id: str
    description: str
    checker: Checker
    default_range: int = 20
    aliases: tuple[str, ...] = ()


@dataclass(frozen=True)
class CheckReport:
    id: str
    max_index: int
    passed: bool
    index: object = None
    lhs: object = None
    rhs: object = None
    cases: int = 0
    elapsed: float = 0.0

    def summary(self) -> str:
        if self.passed:
            return f"{self.id}: pass ({self.cases} cases, max index {self.max_index}, {self.elapsed:.3f}s)"
        return f"{self.id}: FAIL at index {self.index}: lhs={self.lhs} rhs={self.rhs}"


def _delta(a: int, b: int) -> int:
    return 1 if a == b else 0


def _half_pow2(n: int) -> Sqrt2Rat:
    """``2^(n/2)`` in Q(sqrt2)."""
    return sqrt2_pow(n)


# ---------------------------------------------------------------------------
# Main theorem and its first reformulations
# ---------------------------------------------------------------------------


def _thm_main(src: Sequences, N: int):
    for r in range(N + 1):
        yield r, src.psi(r), (-1) ** (r + 1) * src.rho(r)


def _majer(src: Sequences, N: int):
    for n in range(N + 1):
        lhs = sum((Fraction((-1) ** k, math.comb(2 * n + 1, k + 1)) * eulerian2(n, k) for k in range(n + 1)),
                  Fraction(0))
        yield n, lhs, 2 * src.bernoulli(n + 1)


def _alx(src: Sequences, N: int):
    for r in range(N + 1):
        s = src.gamma(r) + src.tau(r)
        s += sum((-1) ** j * src.rho_hat(j) * src.gamma(r - j) for j in range(r + 1))
        yield r, s, 0


def _ins(src: Sequences, N: int):
    # psi comes from the source's own solve; tau on the right is taken from an independent route
    for r in range(N + 1):
        lhs = sum(src.psi(j) * src.gamma(r - j) for j in range(r + 1))
        yield r, lhs, seq.tau_r(r, TauMethod.V_STAR_LOG_DERIVATIVE)


def _ggd(src: Sequences, N: int):
    for r in range(N + 1):
        yield r, sum((-1) ** j * src.gamma(j) * src.gamma(r - j) for j in range(r + 1)), _delta(r, 0)


def _iff2(src: Sequences, N: int):
    for r in range(N + 1):
        lhs = sum((-1) ** j * (j + 1) * src.gamma(j + 1) * src.gamma(r - j) for j in range(r + 1))
        yield r, lhs, src.bernoulli(r + 2) / (r + 2)


def _wrench(src: Sequences, N: int):
    for r in range(N + 1):
        rhs = sum((src.bernoulli(j + 2) / (j + 2) * src.gamma(r - 1 - j) for j in range(r)), Fraction(0))
        yield r, r * src.gamma(r), rhs


# ---------------------------------------------------------------------------
# Series V and V*
# ---------------------------------------------------------------------------


def _lagrange_roundtrip(src: Sequences, N: int):
    V = seq.v_series(N)
    F = PowerSeries((Fraction(0),) + V.coeffs, N + 1)
    G = ps_revert(F)
    H = ps_revert_newton(F)
    FG = ps_compose(F, G)
    GF = ps_compose(G, F)
    for n in range(N + 2):
        yield ("F(G)", n), FG[n], _delta(n, 1)
        yield ("G(F)", n), GF[n], _delta(n, 1)
        yield ("newton", n), G[n], H[n]


def _v_power(kind: str):
    def check(src: Sequences, N: int):
        for r in range(N + 1):
            if kind == "rho":
                val = double_factorial(2 * r) * seq._v_power_coeff(-2 * r - 2, 2 * r + 1)
                yield r, val, src.rho_hat(r)
            elif kind == "gamma":
                val = double_factorial(2 * r - 1) * seq._v_power_coeff(-2 * r - 1, 2 * r)
                yield r, val, src.gamma(r)
            else:
                val = double_factorial(2 * r - 1) * seq._v_power_coeff(-2 * r - 1, 2 * r + 1)
                yield r, val, src.tau(r)

    return check


def _v_star(kind: str):
    def check(src: Sequences, N: int):
        Vs = seq.v_star_series(2 * N + 1)
        for r in range(N + 1):
            if kind == "rho":
                yield r, double_factorial(2 * r + 2) * Vs[2 * r + 1], src.rho_hat(r)
            elif kind == "gamma":
                yield r, double_factorial(2 * r + 1) * Vs[2 * r], src.gamma(r)
            else:
                yield r, seq.tau_r(r, TauMethod.V_STAR_LOG_DERIVATIVE), src.tau(r)

    return check


# ---------------------------------------------------------------------------
# Watson's U
# ---------------------------------------------------------------------------


def _sum_xy(src: Sequences, n: int, pred=lambda x: True) -> Sqrt2Rat:
    s = Sqrt2Rat()
    for x in range(n + 1):
        if pred(x):
            s = s + x * src.c(x) * (n - x) * src.c(n - x)
    return s


def _prop_c(src: Sequences, N: int):
    for r in range(N + 1):
        rho = -double_factorial(2 * r + 2) * src.c(2 * r + 2) / _half_pow2(2 * r + 2)
        gam = double_factorial(2 * r + 1) * src.c(2 * r + 1) / _half_pow2(2 * r + 1)
        tau = gam - double_factorial(2 * r - 1) / _half_pow2(2 * r - 1) * _sum_xy(src, 2 * r + 3) / 4
        yield (r, "rho_hat"), rho, Sqrt2Rat(src.rho_hat(r))
        yield (r, "gamma"), gam, Sqrt2Rat(src.gamma(r))
        yield (r, "tau"), tau, Sqrt2Rat(src.tau(r))


def _cos_half_pi(x: int) -> int:
    return (1, 0, -1, 0)[x % 4]


def _ccj(src: Sequences, N: int):
    for r in range(N + 1):
        n = 2 * r + 3
        odd = lambda x: x % 2 == 1  # noqa: E731
        lhs = 2 * double_factorial(n - 4) * _sum_xy(src, n, odd)
        rhs = -src.d(n) + 4 * src.d(n - 2)
        for x in range(1, n + 1, 2):
            y = n - x
            rhs = rhs + (-1) ** (y // 2) * src.d(x) * src.d(y)
        yield (n, "odd-split"), lhs, rhs
        sym = Sqrt2Rat()
        for x in range(n + 1):
            y = n - x
            w = double_factorial(n - 4) * x * y - Fraction(_cos_half_pi(x) + _cos_half_pi(y), 2) * (
                double_factorial(x) * double_factorial(y))
            sym = sym + src.c(x) * src.c(y) * w
        yield (n, "cosine"), sym, -src.d(n) + 4 * src.d(n - 2)


# ---------------------------------------------------------------------------
# Stirling cycle sums
# ---------------------------------------------------------------------------


def _lemma_s(src: Sequences, N: int):
    for n in range(1, N + 1):
        for k in range(1, N + 1):
            lhs = src.s(n, k + 1) / (k + 1)
            rhs = src.s(n, k) / k + Fraction(2, n) * src.s(n - 2, k)
            yield (n, k), lhs, rhs


def _thm_s(src: Sequences, N: int):
    for n in range(N + 1):
        for k in range(1, max(1, min(N, 10)) + 1):
            lhs = double_factorial(n) * src.s(n, k) / k
            rhs = Sqrt2Rat()
            for j in range(k):
                term = stirling_cycle(k, k - j) * src.d(n - 2 * j)
                if n == 2 * j:
                    term = term - stirling_cycle_star(k, k - j)
                rhs = rhs + 2**j * term
            yield (n, k), lhs, rhs


def _radu(src: Sequences, N: int):
    for n in range(N + 1):
        lhs = Fraction(n, 2) * src.d(n) / _half_pow2(n)
        rhs = Sqrt2Rat()
        for j in range(n // 2 + 1):
            rhs = rhs + src.d(n - 2 * j) / _half_pow2(n - 2 * j) * src.alpha(j)
        if n % 2 == 0:
            rhs = rhs - src.alpha_star(n // 2)
        yield n, lhs, rhs


def _gmj(src: Sequences, N: int):
    for m in range(N + 1):
        rhs = sum((src.alpha(j + 1) * src.gamma(m - 1 - j) for j in range(m)), Fraction(0))
        yield m, m * src.gamma(m), rhs


def _rhj(src: Sequences, N: int):
    for m in range(N + 1):
        rhs = src.alpha_star(m + 1) - src.alpha(m + 1)
        rhs += sum((src.alpha(j + 1) * src.rho_hat(m - 1 - j) for j in range(m)), Fraction(0))
        yield m, (m + Fraction(1, 2)) * src.rho_hat(m), rhs


# ---------------------------------------------------------------------------
# Second-order Eulerian numbers and beta integrals
# ---------------------------------------------------------------------------


def _ir(src: Sequences, N: int):
    for m in range(N + 1):
        for n in range(N + 1):
            rhs = sum(eulerian2(n, k) * math.comb(m + k, 2 * n) for k in range(n + 1))
            yield (m, n), stirling_cycle(m, m - n), rhs


def _ir2(src: Sequences, N: int):
    for m in range(1, N + 1):
        yield (m, 1, "diagonal"), stirling_cycle_star(m, m - 1), math.comb(m - 1, 2)
        for n in range(1, N + 1):
            rhs = sum(eulerian2_star(n, k) * math.comb(m + k, 2 * n) for k in range(-1, n - 1) if m + k >= 0)
            yield (m, n), stirling_cycle_star(m, m - n), rhs


def _pro_alpha(src: Sequences, N: int):
    for j in range(N + 1):
        yield (j, "alpha"), src.alpha(j), seq.alpha(j, AlphaMethod.EULERIAN)
        yield (j, "alpha-binomial"), src.alpha(j), seq.alpha(j, AlphaMethod.EULERIAN_BINOMIAL)
        yield (j, "alpha_star"), src.alpha_star(j), seq.alpha_star(j, AlphaStarMethod.EULERIAN_STAR)
        yield (j, "alpha_star-binomial"), src.alpha_star(j), seq.alpha_star(j, AlphaStarMethod.EULERIAN_STAR_BINOMIAL)


def _khe(src: Sequences, N: int):
    for n in range(1, max(1, N) + 1):
        for a in range(5):
            for b in range(-(n + 1), 5):
                yield (a, b, n), seq.beta_integral_F(a, b, n), seq.beta_integral_F_closed(a, b, n)
                if n >= 2:
                    yield (a, b, n, "*"), seq.beta_integral_F(a, b, n, True), seq.beta_integral_F_closed(a, b, n, True)


def _ann(src: Sequences, N: int):
    for n in range(1, N + 1):
        for j in range(n + 2):
            yield (n, j), src.alpha(n), (-1) ** j * seq.product_integral(j, n + 1 - j)


def _xt(src: Sequences, N: int):
    for n in range(1, N + 1):
        yield (n, "star-integral"), src.alpha_star(n), seq.beta_integral_F(1, -2, n + 1, starred=True)
        yield (n, "integral"), src.alpha_star(n), (-1) ** n * seq.beta_integral_F(0, 1, n)
        for j in range(n + 1):
            yield (n, j), src.alpha_star(n), (-1) ** j * seq.product_integral(j, n + 1 - j, starred=True)


def _xt3(src: Sequences, N: int):
    for n in range(N + 1):
        yield n, src.alpha_star(n), seq.alpha_star(n, AlphaStarMethod.EULERIAN)


# ---------------------------------------------------------------------------
# Bernoulli numbers
# ---------------------------------------------------------------------------


def _abba(src: Sequences, N: int):
    for j in range(N + 1):
        yield j, src.alpha(j), src.bernoulli(j + 1) / (j + 1)


def _rhj2(src: Sequences, N: int):
    for m in range(N + 1):
        rhs = src.alpha_star(m + 1) - src.bernoulli(m + 2) / (m + 2)
        rhs += sum((src.bernoulli(j + 2) / (j + 2) * src.rho_hat(m - 1 - j) for j in range(m)), Fraction(0))
        yield m, (m + Fraction(1, 2)) * src.rho_hat(m), rhs


def _at_vs_classical(src: Sequences, N: int):
    for n in range(N + 1):
        yield n, bernoulli(n), bernoulli_classical(n)


# ---------------------------------------------------------------------------
# beta(j) and the final reduction
# ---------------------------------------------------------------------------


def _ccj2(src: Sequences, N: int):
    for r in range(N + 1):
        n = 2 * r + 3
        lhs = Sqrt2Rat()
        for j in range((n - 3) // 2 + 1):
            lhs = lhs + src.beta(j) * 2**j * src.d(n - 2 - 2 * j)
        inner = 2 * src.d(n - 2) - src.d(n) / 2
        for x in range(1, n + 1, 2):
            y = n - x
            inner = inner + Fraction((-1) ** (y // 2), 2) * src.d(x) * src.d(y)
        yield n, lhs, Fraction(n - 2, 2) * inner


def _top3(src: Sequences, N: int):
    for m in range(1, N + 1):
        rhs = (-1) ** m * src.beta(m) + 2 * src.bernoulli(m + 1) / (m + 1)
        rhs += sum((src.bernoulli(j + 2) / (j + 2) * src.rho_hat(m - 1 - j) for j in range(m)), Fraction(0))
        yield m, (m + Fraction(1, 2)) * src.rho_hat(m), rhs


def _pro_beta(src: Sequences, N: int):
    for j in range(N + 1):
        yield (j, "beta"), src.beta(j), seq.beta(j, BetaMethod.EULERIAN)
        yield (j, "beta_star"), src.beta_star(j), seq.beta_star(j, BetaStarMethod.EULERIAN_STAR)
        if j >= 1:
            yield (j, "beta-integral"), src.beta(j), -seq.beta_integral_F(2, -2, j + 1)


def _mad(src: Sequences, N: int):
    for n in range(N + 1):
        lhs = Fraction(double_factorial(n), 4) * _sum_xy(src, n + 2)
        rhs = Sqrt2Rat()
        for j in range(n // 2 + 1):
            rhs = rhs + 2**j * src.d(n - 2 * j) * src.beta(j)
        if n % 2 == 0:
            rhs = rhs - 2 ** (n // 2) * src.beta_star(n // 2)
        yield n, lhs, rhs


def _goa(src: Sequences, N: int):
    for m in range(1, N + 1):
        rhs = (-1) ** m * src.beta(m) + src.bernoulli(m + 2) / (m + 2) + 2 * src.bernoulli(m + 1) / (m + 1)
        yield m, src.alpha_star(m + 1), rhs


# ---------------------------------------------------------------------------
# Relations between rho_hat and gamma
# ---------------------------------------------------------------------------


def _rr2(src: Sequences, N: int):
    for r in range(N + 1):
        lhs = sum((binomial_rat(r + Fraction(3, 2), j + 1) * src.rho_hat(j) * src.gamma(r - j) for j in range(r + 1)),
                  Fraction(0))
        yield r, lhs, -src.gamma(r)


def _rr3(src: Sequences, N: int):
    for r in range(N + 1):
        lhs = sum((math.comb(r + 1, j + 1) * src.rho_hat(j) * src.rho_hat(r - 1 - j) for j in range(r)), Fraction(0))
        lhs += sum((binomial_half(r + 2, j + 1) * src.gamma(j) * src.gamma(r - j) for j in range(r + 1)),
                   Fraction(0)) / (2 * (r + 2))
        yield r, lhs, -2 * src.rho_hat(r - 1)


def _our(src: Sequences, N: int):
    for r in range(N + 1):
        lhs = sum(
            (src.rho_hat(j) * src.gamma(r - j) * (binomial_rat(r - Fraction(1, 2), j) + Fraction((-1) ** j, 2))
             for j in range(r + 1)),
            Fraction(0),
        )
        yield r, lhs, -src.gamma(r)


def _madder(src: Sequences, N: int):
    for r in range(N + 1):
        lhs = r * sum((math.comb(r - 1, j) * src.rho_hat(j) * src.rho_hat(r - 1 - j) for j in range(r)), Fraction(0))
        lhs += sum((binomial_half(r, j) * src.gamma(j) * src.gamma(r - j) for j in range(r + 1)), Fraction(0)) / 2
        rhs = src.beta(r) - src.beta_star(r)
        rhs -= sum((src.beta(j) * src.rho_hat(r - 1 - j) for j in range(r)), Fraction(0))
        yield r, lhs, rhs


# ---------------------------------------------------------------------------
# The omega array
# ---------------------------------------------------------------------------


def _rr4(src: Sequences, N: int):
    for n in range(N + 1):
        for k in range(-1, N + 1):
            rhs = sum(((-1) ** (j - 1) * omega(j) * stirling_cycle(n, k - j) for j in range(1, k + 1)), Fraction(0))
            yield (n, k), stirling_cycle_star(n, k), rhs


def _stirstar_diag(src: Sequences, N: int):
    for n in range(1, N + 1):
        yield n, stirling_cycle_star(n, n), Fraction(n - 1, n)


def _largest_prime_factor_bound(m: int, bound: int) -> int:
    """Cofactor of ``m`` after removing every prime ``<= bound``."""
    for p in sympy.primerange(2, bound + 1):
        while m % p == 0:
            m //= p
    return m


def _omega_smooth(src: Sequences, N: int):
    for n in range(N + 1):
        yield n, _largest_prime_factor_bound(omega(n).denominator, n + 1), 1


def _at_positive(src: Sequences, N: int):
    rows = at_array(N + 1, N + 1, ATMode.DIVIDE).rows
    for n, row in enumerate(rows):
        for m, v in enumerate(row):
            yield (n, m), v > 0, True


OMEGA20_SMALL = (23, 29, 31, 37, 41, 41)


def _omega20(src: Sequences, N: int):
    num = abs(omega(20).numerator)
    small = math.prod(OMEGA20_SMALL)
    yield "divisible", num % small, 0
    p = _largest_prime_factor_bound(num, 41)
    yield "cofactor", num // p, small
    yield "prime", sympy.isprime(p), True
    yield "magnitude", f"{p:.5e}", "4.91473e+73"


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

_CHECKS = [
    IdentityCheck("thm-1.1", "psi_r = (-1)^(r+1) rho_r, with psi from the tau/gamma solve and rho from De Moivre",
                  _thm_main, 25),
    IdentityCheck("eq-1.7", "sum_k (-1)^k <<n,k>> / C(2n+1,k+1) = 2 B_(n+1)", _majer, 40, ("thm-7.2",)),
    IdentityCheck("prop-2.2", "gamma_r + tau_r + sum_j (-1)^j rho_hat_j gamma_(r-j) = 0", _alx),
    IdentityCheck("eq-2.8", "sum_j psi_j gamma_(r-j) = tau_r, tau via the log-derivative of V*", _ins),
    IdentityCheck("eq-2.9", "sum_j (-1)^j gamma_j gamma_(r-j) = delta_(r,0)", _ggd, 25),
    IdentityCheck("eq-2.10", "sum_j (-1)^j (j+1) gamma_(j+1) gamma_(r-j) = B_(r+2)/(r+2)", _iff2),
    IdentityCheck("lagrange-roundtrip", "x V and x V* are compositional inverses; Lagrange = Newton reversion",
                  _lagrange_roundtrip),
    IdentityCheck("eq-3.5", "rho_hat_r = (2r)!! [x^(2r+1)] V^(-2r-2)", _v_power("rho")),
    IdentityCheck("eq-3.6", "gamma_r = (2r-1)!! [x^(2r)] V^(-2r-1)", _v_power("gamma")),
    IdentityCheck("eq-3.7", "tau_r = (2r-1)!! [x^(2r+1)] V^(-2r-1)", _v_power("tau")),
    IdentityCheck("eq-3.8", "rho_hat_r = (2r+2)!! [x^(2r+1)] V*", _v_star("rho")),
    IdentityCheck("eq-3.9", "gamma_r = (2r+1)!! [x^(2r)] V*", _v_star("gamma")),
    IdentityCheck("eq-3.10", "tau_r = (2r-1)!! [x^(2r)] V*'/V*", _v_star("tau")),
    IdentityCheck("prop-4.2", "rho_hat, gamma and tau from the coefficients c_n of U", _prop_c),
    IdentityCheck("prop-4.3", "quadratic c_n identity for odd n >= 3, split and cosine forms", _ccj),
    IdentityCheck("lemma-5.2", "S_n(k+1)/(k+1) = S_n(k)/k + (2/n) S_(n-2)(k)", _lemma_s, 14),
    IdentityCheck("thm-5.3", "n!! S_n(k)/k = sum_j 2^j ([k,k-j] d_(n-2j) - [k,k-j]* delta_(n,2j))", _thm_s, 14),
    IdentityCheck("prop-5.4", "(n/2) d_n / 2^(n/2) = sum_j d_(n-2j)/2^(n/2-j) alpha(j) - alpha*(n/2)", _radu),
    IdentityCheck("eq-5.11", "m gamma_m = sum_j alpha(j+1) gamma_(m-1-j)", _gmj),
    IdentityCheck("eq-5.12", "(m+1/2) rho_hat_m = alpha*(m+1) - alpha(m+1) + sum_j alpha(j+1) rho_hat_(m-1-j)", _rhj),
    IdentityCheck("eq-6.1", "[m,m-n] = sum_k <<n,k>> C(m+k,2n)", _ir, 8),
    IdentityCheck("eq-6.2", "[m,m-n]* = sum_k <<n,k>>* C(m+k,2n), and [m,m-1]* = C(m-1,2)", _ir2, 8),
    IdentityCheck("prop-6.1", "alpha and alpha* from second-order Eulerian numbers", _pro_alpha),
    IdentityCheck("prop-6.2", "beta-function sum of int t^a (1-t)^(-a-b-2) F_n = reciprocal-binomial closed form",
                  _khe, 6),
    IdentityCheck("eq-6.9", "alpha(n) = (-1)^j int t (1-t)^(-1) F_j F_(n+1-j) for 0 <= j <= n+1", _ann, 8),
    IdentityCheck("eq-6.10", "alpha*(n) as integrals of F*_(n+1), F_n and products F_j F*_(n+1-j)", _xt, 8),
    IdentityCheck("eq-6.11", "alpha*(n) = (-1)^n/(2(n+1)) sum_k (-1)^k <<n,k>> / C(2n+1,k)", _xt3),
    IdentityCheck("prop-7.1", "alpha(j) = B_(j+1)/(j+1)", _abba),
    IdentityCheck("eq-7.3", "(m+1/2) rho_hat_m = alpha*(m+1) - B_(m+2)/(m+2) + sum_j B_(j+2)/(j+2) rho_hat_(m-1-j)",
                  _rhj2),
    IdentityCheck("prop-8.1", "beta(j)-weighted d_n sum for odd n >= 3", _ccj2),
    IdentityCheck("prop-8.2", "(m+1/2) rho_hat_m = (-1)^m beta(m) + 2 B_(m+1)/(m+1) + sum_j B_(j+2)/(j+2) rho_hat_(m-1-j)",
                  _top3),
    IdentityCheck("prop-8.3", "beta and beta* from second-order Eulerian numbers and a beta integral", _pro_beta),
    IdentityCheck("eq-8.4", "(n!!/4) sum_(x+y=n+2) x c_x y c_y = sum_j 2^j d_(n-2j) beta(j) - 2^(n/2) beta*(n/2)",
                  _mad, 16),
    IdentityCheck("eq-8.7", "alpha*(m+1) = (-1)^m beta(m) + B_(m+2)/(m+2) + 2 B_(m+1)/(m+1)", _goa),
    IdentityCheck("eq-9.9", "r gamma_r = sum_j B_(j+2)/(j+2) gamma_(r-1-j)", _wrench),
    IdentityCheck("eq-9.14", "sum_j C(r+3/2,j+1) rho_hat_j gamma_(r-j) = -gamma_r", _rr2),
    IdentityCheck("eq-9.15", "even-index quadratic relation between rho_hat and gamma (rho_hat_(-1) = -1)", _rr3),
    IdentityCheck("eq-9.16", "sum_j rho_hat_j gamma_(r-j) (C(r-1/2,j) + (-1)^j/2) = -gamma_r", _our),
    IdentityCheck("eq-9.17", "quadratic rho_hat/gamma relation against beta and beta*", _madder),
    IdentityCheck("eq-10.2", "[n,k]* = sum_j (-1)^(j-1) omega_j [n,k-j]", _rr4, 15),
    IdentityCheck("eq-10.3", "Akiyama-Tanigawa Bernoulli numbers equal the classical recurrence (B_1 = +1/2)",
                  _at_vs_classical),
    IdentityCheck("stirstar-diag", "[n,n]* = (n-1)/n for the triangle seeded by the omega row", _stirstar_diag),
    IdentityCheck("omega-denominator-smooth", "denominator(omega_n) has no prime factor above n+1", _omega_smooth, 25),
    IdentityCheck("at-array-positive", "every entry of the divide-mode array is positive", _at_positive, 30),
    IdentityCheck("omega-20-numerator", "numerator(omega_20) = 23*29*31*37*41^2*p with p a 74-digit prime",
                  _omega20, 0),
]

REGISTRY: dict[str, IdentityCheck] = {c.id: c for c in _CHECKS}
_ALIASES: dict[str, str] = {a: c.id for c in _CHECKS for a in c.aliases}


def check_ids() -> list[str]:
    """Registered ids in deterministic (sorted) order."""
    return sorted(REGISTRY)


def _resolve(check_id: str) -> IdentityCheck:
    key = _ALIASES.get(check_id, check_id)
    try:
        return REGISTRY[key]
    except KeyError:
        raise KeyError(f"unknown identity check {check_id!r}") from None


def default_range(check_id: str) -> int:
    """Default bound, or the value of RAMASTIR_MAX_ORDER when that is set."""
    env = os.environ.get(MAX_ORDER_ENV)
    if env:
        value = int(env)
        if value < 0:
            raise ValueError(f"{MAX_ORDER_ENV} must be >= 0")
        return value
    return _resolve(check_id).default_range


def run_check(check_id: str, max_index: int | None = None, source: Sequences | None = None) -> CheckReport:
    """Evaluate one identity for every index up to ``max_index``; stop at the first mismatch."""
    check = _resolve(check_id)
    N = default_range(check.id) if max_index is None else max_index
    if N < 0:
        raise ValueError("max_index must be >= 0")
    src = Sequences() if source is None else source
    start = time.perf_counter()
    cases = 0
    for index, lhs, rhs in check.checker(src, N):
        cases += 1
        if lhs != rhs:
            return CheckReport(check.id, N, False, index, lhs, rhs, cases, time.perf_counter() - start)
    return CheckReport(check.id, N, True, cases=cases, elapsed=time.perf_counter() - start)


def run_all(max_index: int | None = None, source: Sequences | None = None) -> list[CheckReport]:
    """Run every registered check, sharing one source, in sorted id order."""
    src = Sequences() if source is None else source
    return [run_check(cid, max_index, src) for cid in check_ids()]
