import itertools
import math
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from ramastir.algebra import Poly
from ramastir.triangles import (
    ATMode,
    Triangle,
    TriangleKind,
    assoc_stirling,
    at_array,
    bernoulli,
    bernoulli_classical,
    binomial_half,
    binomial_rat,
    double_factorial,
    eulerian2,
    eulerian2_poly,
    eulerian2_star,
    eulerian2_via_ratfun,
    omega,
    stirling_cycle,
    stirling_cycle_star,
    triangle,
)

# Figure rows n = 0..5, zeros omitted, as (k, value) pairs.
STIRLING_ROWS = {
    1: {1: 1},
    2: {1: 1, 2: 1},
    3: {1: 2, 2: 3, 3: 1},
    4: {1: 6, 2: 11, 3: 6, 4: 1},
    5: {1: 24, 2: 50, 3: 35, 4: 10, 5: 1},
}
STIRLING_STAR_ROWS = {
    1: {},
    2: {2: F(1, 2)},
    3: {2: 1, 3: F(2, 3)},
    4: {2: 3, 3: 3, 4: F(3, 4)},
    5: {2: 12, 3: 15, 4: 6, 5: F(4, 5)},
}
EULERIAN_ROWS = {
    0: {0: 1},
    1: {0: 1},
    2: {0: 1, 1: 2},
    3: {0: 1, 1: 8, 2: 6},
    4: {0: 1, 1: 22, 2: 58, 3: 24},
    5: {0: 1, 1: 52, 2: 328, 3: 444, 4: 120},
}
EULERIAN_STAR_ROWS = {
    1: {-1: 1},
    2: {0: 3},
    3: {0: 3, 1: 12},
    4: {0: 3, 1: 42, 2: 60},
    5: {0: 3, 1: 108, 2: 474, 3: 360},
}


def _nonzero_row(fn, n, ks):
    return {k: fn(n, k) for k in ks if fn(n, k) != 0}


@pytest.mark.parametrize("n", range(1, 6))
def test_stirling_figure(n):
    assert _nonzero_row(stirling_cycle, n, range(-2, 8)) == STIRLING_ROWS[n]


@pytest.mark.parametrize("n", range(1, 6))
def test_stirling_star_figure(n):
    assert _nonzero_row(stirling_cycle_star, n, range(-2, n + 1)) == STIRLING_STAR_ROWS[n]


@pytest.mark.parametrize("n", range(0, 6))
def test_eulerian_figure(n):
    assert _nonzero_row(eulerian2, n, range(-2, 8)) == EULERIAN_ROWS[n]


@pytest.mark.parametrize("n", range(1, 6))
def test_eulerian_star_figure(n):
    assert _nonzero_row(eulerian2_star, n, range(-3, 8)) == EULERIAN_STAR_ROWS[n]


def test_star_row_zero_is_signed_omega():
    assert [stirling_cycle_star(0, k) for k in range(0, 5)] == [0, F(1, 2), F(-5, 12), F(7, 18), F(-1631, 4320)]
    for k in range(1, 12):
        assert stirling_cycle_star(0, k) == (-1) ** (k - 1) * omega(k)


def test_star_diagonal():
    for n in range(1, 16):
        assert stirling_cycle_star(n, n) == F(n - 1, n)
    for n in range(1, 12):
        for k in range(-3, 2):
            assert stirling_cycle_star(n, k) == 0


def _count_cycles(perm):
    seen, cycles = set(), 0
    for i in range(len(perm)):
        if i not in seen:
            cycles += 1
            while i not in seen:
                seen.add(i)
                i = perm[i]
    return cycles


def test_stirling_cycle_by_permutation_enumeration():
    for n in range(0, 8):
        counts = {}
        for p in itertools.permutations(range(n)):
            c = _count_cycles(p)
            counts[c] = counts.get(c, 0) + 1
        for k in range(0, n + 1):
            assert stirling_cycle(n, k) == counts.get(k, 0), (n, k)


def test_stirling_recursion_and_integrality():
    for n in range(0, 20):
        assert stirling_cycle(n, n) == 1
        for k in range(-1, n + 3):
            assert stirling_cycle(n + 1, k) == stirling_cycle(n, k - 1) + n * stirling_cycle(n, k)
            assert stirling_cycle(n, k).denominator == 1


def test_star_recursion():
    for n in range(0, 12):
        for k in range(-1, 14):
            assert stirling_cycle_star(n + 1, k) == stirling_cycle_star(n, k - 1) + n * stirling_cycle_star(n, k)


def test_eulerian_row_sums_are_double_factorials():
    for n in range(0, 13):
        assert sum(eulerian2(n, k) for k in range(n + 1)) == double_factorial(2 * n - 1)


def test_eulerian_star_left_column_dies():
    for n in range(2, 13):
        assert eulerian2_star(n, -1) == 0
    with pytest.raises(ValueError):
        eulerian2_star(0, 0)


def test_eulerian_star_recursion():
    for n in range(1, 10):
        for k in range(-1, n + 2):
            expected = (k + 1) * eulerian2_star(n, k) + (2 * n + 1 - k) * eulerian2_star(n, k - 1)
            assert eulerian2_star(n + 1, k) == expected


def test_ratfun_route():
    assert eulerian2_via_ratfun(0) == Poly([1])
    assert eulerian2_via_ratfun(2) == Poly([1, 2])
    assert eulerian2_via_ratfun(3) == Poly([1, 8, 6])
    for n in range(0, 10):
        assert eulerian2_via_ratfun(n) == eulerian2_poly(n)


def _set_partitions(elems):
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def _cycle_arrangements_min3(n):
    """Count permutations of n points, all cycles of length >= 3, by number of cycles."""
    counts = {}
    for p in itertools.permutations(range(n)):
        seen, sizes = set(), []
        for i in range(n):
            if i not in seen:
                size = 0
                while i not in seen:
                    seen.add(i)
                    i = p[i]
                    size += 1
                sizes.append(size)
        if all(s >= 3 for s in sizes):
            counts[len(sizes)] = counts.get(len(sizes), 0) + 1
    return counts


def test_assoc_set_by_enumeration():
    for n in range(0, 10):
        counts = {}
        for part in _set_partitions(list(range(n))):
            if all(len(b) >= 3 for b in part):
                counts[len(part)] = counts.get(len(part), 0) + 1
        for k in range(0, n // 3 + 2):
            assert assoc_stirling("set", n, k) == counts.get(k, 0), (n, k)


def test_assoc_cycle_by_enumeration():
    for n in range(0, 9):
        counts = _cycle_arrangements_min3(n)
        for k in range(0, n // 3 + 2):
            assert assoc_stirling("cycle", n, k) == counts.get(k, 0), (n, k)


def test_assoc_examples():
    assert assoc_stirling("cycle", 6, 2) == 40
    assert assoc_stirling("set", 6, 2) == 10
    assert assoc_stirling("set", 0, 0) == 1
    assert assoc_stirling("cycle", 5, 2) == 0


def test_triangle_object():
    t = triangle("eulerian2")
    assert isinstance(t, Triangle) and t.kind is TriangleKind.EULERIAN2
    assert t.row(3) == [(0, 1), (1, 8), (2, 6), (3, 0)]
    assert triangle(TriangleKind.STIRLING_CYCLE_STAR).support(0) == (1, None)
    with pytest.raises(ValueError):
        triangle("nope")


def test_bernoulli_against_sympy():
    for n in range(0, 40):
        expected = F(int(sympy.bernoulli(n).p), int(sympy.bernoulli(n).q))
        if n == 1:
            expected = F(1, 2)
        assert bernoulli(n) == expected
        assert bernoulli_classical(n) == expected


def test_bernoulli_examples():
    assert bernoulli(1) == F(1, 2)
    assert bernoulli(2) == F(1, 6)
    assert all(bernoulli(n) == 0 for n in range(3, 40, 2))


def test_omega_values():
    assert [omega(n) for n in range(6)] == [1, F(1, 2), F(5, 12), F(7, 18), F(1631, 4320), F(96547, 259200)]


def test_at_array_figure():
    rows = [list(r) for r in at_array(5, 5, ATMode.DIVIDE).rows]
    assert rows[0][:4] == [1, F(1, 2), F(1, 3), F(1, 4)]
    assert rows[1][:4] == [F(1, 2), F(1, 12), F(1, 36), F(1, 80)]
    assert rows[2][:3] == [F(5, 12), F(1, 36), F(11, 2160)]
    assert rows[3][:2] == [F(7, 18), F(49, 4320)]
    assert rows[4][0] == F(1631, 4320)


def test_at_multiply_mode_heads_are_bernoulli():
    rows = at_array(12, 1, ATMode.MULTIPLY).rows
    assert [r[0] for r in rows] == [bernoulli(n) for n in range(12)]


def test_at_array_positive():
    for row in at_array(31, 31, ATMode.DIVIDE).rows:
        assert all(v > 0 for v in row)


def test_omega_tends_to_inverse_e():
    assert abs(float(omega(60)) - math.exp(-1)) < 0.01


def test_double_factorial():
    assert [double_factorial(n) for n in range(-1, 8)] == [1, 1, 1, 2, 3, 8, 15, 48, 105]
    with pytest.raises(ValueError):
        double_factorial(-2)


@given(st.integers(0, 25), st.data())
def test_binomial_half_against_gamma(n, data):
    k = data.draw(st.integers(0, n))
    expected = math.gamma(n + 1) * math.gamma(0.5) ** 2 / (math.gamma(k + 0.5) * math.gamma(n - k + 0.5))
    assert math.isclose(float(binomial_half(n, k)), expected, rel_tol=1e-12)


def test_binomial_half_examples():
    assert binomial_half(2, 1) == 8
    with pytest.raises(ValueError):
        binomial_half(2, 3)


@given(st.fractions(min_value=-10, max_value=10, max_denominator=7), st.integers(0, 10))
def test_binomial_rat_against_sympy(alpha, k):
    expected = sympy.binomial(sympy.Rational(alpha.numerator, alpha.denominator), k)
    assert binomial_rat(alpha, k) == F(int(expected.p), int(expected.q))
