"""Acceptance suite: nine end-to-end criteria, each with a time budget.

Every test records one ``PASS``/``FAIL`` line (printed immediately and again
in the terminal summary by ``conftest.py``).  A criterion fails if its
assertion fails or if it overruns its budget.
"""

import random
import time
from fractions import Fraction as F

import pytest

from ramastir.algebra import (
    DeMoivreTable,
    PowerSeries,
    demoivre_multinomial,
    ps_compose,
    ps_exp,
    ps_log,
    ps_mul,
    ps_recip,
    ps_revert,
    ps_revert_newton,
)
from ramastir.numeric import validate_expansion
from ramastir.sequences import (
    CMethod,
    Sequences,
    c_n,
    evaluate,
    gamma_r,
    method_names,
    psi_r,
    rho_r,
)
from ramastir.triangles import eulerian2, eulerian2_star, stirling_cycle, stirling_cycle_star
from ramastir.verifier import run_all, run_check

RESULTS: list[str] = []


class criterion:
    """Time a criterion body and record its outcome line."""

    def __init__(self, number, title, budget):
        self.number, self.title, self.budget = number, title, budget

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        over = elapsed > self.budget
        ok = exc_type is None and not over
        reason = "" if ok else (" (over budget)" if exc_type is None else f" ({exc_type.__name__})")
        line = (f"criterion {self.number}: {'PASS' if ok else 'FAIL'}  {self.title}  "
                f"[{elapsed:.2f}s / budget {self.budget:g}s]{reason}")
        RESULTS.append(line)
        print(line)
        if exc_type is None and over:
            pytest.fail(line)
        return False


def test_criterion_1_golden_coefficients():
    with criterion(1, "golden gamma, rho, psi heads", 1):
        assert [gamma_r(r) for r in range(4)] == [1, F(1, 12), F(1, 288), F(-139, 51840)]
        assert [rho_r(r) for r in range(4)] == [F(1, 3), F(4, 135), F(-8, 2835), F(-16, 8505)]
        assert [psi_r(r) for r in range(4)] == [F(-1, 3), F(4, 135), F(8, 2835), F(-16, 8505)]


def test_criterion_2_main_theorem():
    with criterion(2, "psi_r = (-1)^(r+1) rho_r for r <= 25", 30):
        # psi from the tau/gamma triangular solve, rho from the De Moivre sum
        for r in range(26):
            assert psi_r(r) == (-1) ** (r + 1) * rho_r(r), r
        rep = run_check("thm-1.1", 25)
        assert rep.passed, rep.summary()


def test_criterion_3_eulerian_bernoulli_identity():
    with criterion(3, "alternating Eulerian sum = 2 B_(n+1) for n <= 40", 10):
        rep = run_check("eq-1.7", 40)
        assert rep.passed and rep.cases == 41, rep.summary()


def test_criterion_4_cross_method_audit():
    with criterion(4, "all method tags agree (<= 25), c_n routes agree (<= 50)", 120):
        for name in ("gamma", "rho_hat", "tau", "alpha", "alpha_star", "beta", "beta_star"):
            tags = method_names(name)
            assert len(tags) >= 2
            for i in range(26):
                ref = evaluate(name, i, tags[0]).value
                for tag in tags[1:]:
                    assert evaluate(name, i, tag).value == ref, (name, i, tag)
        for n in range(51):
            assert c_n(n, CMethod.RECURSION) == c_n(n, CMethod.REVERSION), n


def _row(fn, n, ks):
    return [fn(n, k) for k in ks if fn(n, k) != 0]


def test_criterion_5_figures():
    with criterion(5, "triangle rows n <= 5 and the omega row", 5):
        assert [_row(stirling_cycle, n, range(n + 1)) for n in range(1, 6)] == [
            [1], [1, 1], [2, 3, 1], [6, 11, 6, 1], [24, 50, 35, 10, 1]]
        assert [_row(stirling_cycle_star, n, range(n + 1)) for n in range(2, 6)] == [
            [F(1, 2)], [1, F(2, 3)], [3, 3, F(3, 4)], [12, 15, 6, F(4, 5)]]
        assert [_row(eulerian2, n, range(n + 1)) for n in range(0, 6)] == [
            [1], [1], [1, 2], [1, 8, 6], [1, 22, 58, 24], [1, 52, 328, 444, 120]]
        assert [_row(eulerian2_star, n, range(-1, n + 1)) for n in range(1, 6)] == [
            [1], [3], [3, 12], [3, 42, 60], [3, 108, 474, 360]]
        assert [stirling_cycle_star(0, k) for k in range(1, 5)] == [F(1, 2), F(-5, 12), F(7, 18), F(-1631, 4320)]


def test_criterion_6_full_verifier():
    with criterion(6, "every registered identity at its default range", 60):
        reports = run_all()
        failed = [r.summary() for r in reports if not r.passed]
        assert not failed, failed
        ids = {r.id for r in reports}
        for required in ("thm-5.3", "prop-4.3", "prop-5.4", "prop-6.1", "prop-6.2", "prop-7.1", "prop-8.1",
                         "prop-8.2", "prop-8.3", "eq-2.8", "eq-2.9", "eq-2.10", "eq-9.14", "eq-9.15",
                         "eq-9.16", "eq-9.17", "eq-10.2"):
            assert required in ids


def _random_series(rng, order, first):
    return PowerSeries([F(first)] + [F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(order)], order)


def test_criterion_7_property_suites():
    with criterion(7, "series inverses, De Moivre duality, AT positivity, omega denominators", 60):
        rng = random.Random(20240917)
        x = PowerSeries.x(10)
        for _ in range(25):
            f = _random_series(rng, 10, 0)
            f = f + x * (1 - f[1]) + x * F(rng.randint(1, 5))  # force a nonzero linear term
            g = ps_revert(f)
            assert ps_compose(f, g) == x and ps_compose(g, f) == x
            assert g == ps_revert_newton(f)
            u = _random_series(rng, 10, 1)
            assert ps_mul(u, ps_recip(u)) == PowerSeries.const(1, 10)
            assert ps_exp(ps_log(u)) == u
            z = _random_series(rng, 10, 0)
            assert ps_log(ps_exp(z)) == z
        stream = [F(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(40)]
        table = DeMoivreTable(lambda j: stream[j - 1])
        for n in range(12):
            for k in range(12):
                assert table(n, k) == demoivre_multinomial(n, k, lambda j: stream[j - 1])
        for cid, bound in (("at-array-positive", 30), ("omega-denominator-smooth", 25),
                           ("lagrange-roundtrip", 20)):
            rep = run_check(cid, bound)
            assert rep.passed, rep.summary()


def test_criterion_8_numeric_validation():
    with criterion(8, "|exact - partial| <= 2|coef_R| n^-R on {10,20,40} x {1..5}, widths <= 1e-30", 60):
        for target in ("stirling", "theta"):
            for n in (10, 20, 40):
                for R in range(1, 6):
                    rep = validate_expansion(target, n, R)
                    assert rep.passed, (target, n, R)
                    assert rep.width <= F(1, 10**30), (target, n, R)


def test_criterion_9_mutation_sensitivity():
    with criterion(9, "+1 on any gamma_r (r <= 5) breaks at least two checks", 60):
        for k in range(6):
            class Bumped(Sequences):
                def gamma(self, r, k=k):
                    return super().gamma(r) + (1 if r == k else 0)

            failed = [r for r in run_all(8, Bumped()) if not r.passed]
            assert len(failed) >= 2, k
            assert all(r.index is not None and r.lhs != r.rhs for r in failed)
