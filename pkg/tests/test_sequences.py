import threading
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction as F

import pytest
import sympy

from ramastir.algebra import Sqrt2Rat
from ramastir.sequences import (
    DEFAULT_METHOD,
    METHODS,
    AlphaMethod,
    CMethod,
    GammaMethod,
    SeqValue,
    Sequences,
    alpha,
    alpha_star,
    beta,
    beta_integral_F,
    beta_integral_F_closed,
    beta_star,
    c_n,
    d_n,
    evaluate,
    gamma_r,
    method_names,
    psi_r,
    rho_hat,
    rho_r,
    s_n_k,
    tau_r,
)
from ramastir.triangles import bernoulli, double_factorial


def _q(x):
    x = sympy.nsimplify(x)
    return F(int(x.p), int(x.q))


def test_gamma_head():
    assert [gamma_r(r) for r in range(4)] == [1, F(1, 12), F(1, 288), F(-139, 51840)]


def test_rho_and_psi_heads():
    assert [rho_r(r) for r in range(4)] == [F(1, 3), F(4, 135), F(-8, 2835), F(-16, 8505)]
    assert [psi_r(r) for r in range(4)] == [F(-1, 3), F(4, 135), F(8, 2835), F(-16, 8505)]
    assert rho_hat(0) == F(-2, 3)


def test_tau_head():
    assert [tau_r(r) for r in range(4)] == [F(-1, 3), F(1, 540), F(25, 6048), F(-101, 155520)]


def test_gamma_against_log_gamma_series():
    # Independent route: exp of the Bernoulli series for log Gamma, expanded by sympy in 1/n.
    h = sympy.symbols("h")
    order = 9
    log_series = sum(sympy.bernoulli(2 * k) / (2 * k * (2 * k - 1)) * h ** (2 * k - 1) for k in range(1, order))
    expansion = sympy.series(sympy.exp(log_series), h, 0, order).removeO()
    for r in range(order):
        assert gamma_r(r) == _q(expansion.coeff(h, r))


@pytest.mark.parametrize("method", list(GammaMethod))
def test_every_gamma_method(method):
    for r in range(14):
        assert gamma_r(r, method) == gamma_r(r)


@pytest.mark.parametrize("name", ["gamma", "rho_hat", "tau", "alpha", "alpha_star", "beta", "beta_star"])
def test_cross_method_agreement(name):
    tags = method_names(name)
    assert len(tags) >= 2
    for i in range(26):
        values = {evaluate(name, i, t).value for t in tags}
        assert len(values) == 1, (name, i, values)


def test_c_routes_agree_to_fifty():
    for n in range(51):
        assert c_n(n, CMethod.RECURSION) == c_n(n, CMethod.REVERSION) == c_n(n, CMethod.FUNCTIONAL)


def test_c_head_and_parity():
    assert [c_n(n) for n in range(5)] == [
        Sqrt2Rat(1), Sqrt2Rat(0, 1), Sqrt2Rat(F(2, 3)), Sqrt2Rat(0, F(1, 18)), Sqrt2Rat(F(-2, 135))]
    for n in range(30):
        assert c_n(n).is_rational() == (n % 2 == 0)
    assert d_n(3) == double_factorial(3) * c_n(3)


def test_prop_4_2_relations():
    # gamma_r, rho_hat_r from the odd and even c_n with powers of sqrt2 removed
    for r in range(10):
        odd = double_factorial(2 * r + 1) * c_n(2 * r + 1) / Sqrt2Rat(0, 1) ** (2 * r + 1)
        even = -double_factorial(2 * r + 2) * c_n(2 * r + 2) / Sqrt2Rat(2) ** (r + 1)
        assert odd == Sqrt2Rat(gamma_r(r))
        assert even == Sqrt2Rat(rho_hat(r))


def test_s_examples():
    assert s_n_k(2, 2) == Sqrt2Rat(F(10, 3))
    assert all(s_n_k(0, k) == Sqrt2Rat(1) for k in range(1, 8))
    assert s_n_k(5, 1) == c_n(5)


def test_s_is_convolution():
    for n in range(9):
        conv = sum((c_n(i) * c_n(n - i) for i in range(n + 1)), Sqrt2Rat())
        assert s_n_k(n, 2) == conv


def test_alpha_examples():
    assert alpha(0) == alpha_star(0) == F(1, 2)
    assert alpha(1) == F(1, 12)
    assert alpha_star(1) == F(-1, 4)
    for j in range(1, 20):
        assert alpha(j) == bernoulli(j + 1) / (j + 1)


def test_beta_examples():
    assert beta(0) == F(2, 3)
    assert beta_star(0) == F(1, 6)
    assert beta(2, "eulerian") == beta(2, "stirling-sum")


def test_beta_integral_examples():
    assert beta_integral_F(1, 0, 1) == F(-1, 12)
    # the Bernoulli form needs m >= 1; at m = 0 the integral picks up the classical B_1 = -1/2
    assert beta_integral_F(1, -2, 1) == F(-1, 2)
    for m in range(11):
        if m:
            assert beta_integral_F(1, -2, m + 1) == bernoulli(m + 1) / (m + 1)
        assert (-1) ** (m + 1) * beta_integral_F(0, 1, m + 1) == alpha_star(m + 1)


def test_beta_integral_closed_form_spot_range():
    for n in range(1, 7):
        for a in range(0, 7):
            for b in range(-(n + 1), 7):
                assert beta_integral_F(a, b, n) == beta_integral_F_closed(a, b, n), (a, b, n)
                if n >= 2:
                    assert beta_integral_F(a, b, n, True) == beta_integral_F_closed(a, b, n, True)


def test_beta_integral_against_numerical_quadrature():
    mpmath = pytest.importorskip("mpmath")
    # F_n(t) = E_n(t) / (1-t)^(2n), integrated numerically on (-inf, 0)
    from ramastir.triangles import eulerian2_via_ratfun

    for a, b, n in [(1, 0, 1), (0, 1, 2), (2, 1, 3), (1, -2, 4)]:
        num = eulerian2_via_ratfun(n)

        def f(t, num=num, a=a, b=b, n=n):
            p = sum(mpmath.mpf(c.numerator) / c.denominator * t**k for k, c in enumerate(num.coeffs))
            return t**a * (1 - t) ** (-a - b - 2) * p / (1 - t) ** (2 * n)

        approx = mpmath.quad(f, [-mpmath.inf, -1, 0])
        exact = beta_integral_F(a, b, n)
        assert abs(approx - mpmath.mpf(exact.numerator) / exact.denominator) < 1e-10


def test_beta_integral_preconditions():
    with pytest.raises(ValueError):
        beta_integral_F(0, -5, 1)
    with pytest.raises(ValueError):
        beta_integral_F(0, 0, 1, starred=True)


def test_evaluate_defaults_and_errors():
    sv = evaluate("gamma", 2)
    assert isinstance(sv, SeqValue) and sv.value == F(1, 288) and sv.method is DEFAULT_METHOD["gamma"]
    assert evaluate("psi", 0).method is None
    assert evaluate("omega", 0).value == 1
    assert evaluate("bernoulli", 1, "classical").value == F(1, 2)
    assert evaluate("alpha", 2, AlphaMethod.BERNOULLI).value == 0
    with pytest.raises(KeyError):
        evaluate("nope", 0)
    with pytest.raises(ValueError):
        evaluate("gamma", 0, "bogus")
    with pytest.raises(ValueError):
        evaluate("psi", 0, "demoivre")
    with pytest.raises(ValueError):
        evaluate("bernoulli", 0, "bogus")
    assert set(METHODS) == {"gamma", "rho", "rho_hat", "tau", "psi", "c", "alpha", "alpha_star", "beta",
                            "beta_star", "omega", "bernoulli"}


def test_sequences_view():
    s = Sequences()
    assert s.rho_hat(-1) == -1
    assert s.rho(0) == F(1, 3)
    assert [s.psi(r) for r in range(12)] == [psi_r(r) for r in range(12)]
    assert s.d(-1) == Sqrt2Rat()


def test_sequences_override_propagates_to_psi():
    class Shifted(Sequences):
        def gamma(self, r):
            return super().gamma(r) + (1 if r == 1 else 0)

    assert Shifted().psi(1) != psi_r(1)
    assert Shifted().psi(0) == psi_r(0)


def test_concurrent_access_is_consistent():
    expected = [psi_r(r) for r in range(20)]
    view = Sequences()
    barrier = threading.Barrier(8)

    def work(_):
        barrier.wait()
        return [view.psi(r) for r in range(19, -1, -1)][::-1]

    with ThreadPoolExecutor(8) as pool:
        results = list(pool.map(work, range(8)))
    assert all(r == expected for r in results)


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        gamma_r(-1)
