from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semistable.mahler_space import (
    branch_length,
    c0_valuation,
    cr_valuation,
    evaluate,
    forward_difference,
    indicator,
    local_poly_approx,
    mahler_coeffs,
    mahler_series,
    wavelet_decompose,
)
from semistable.padic_core import INF, PadicScalar, binom, vp
from semistable.polylog import function_derivative, polylog_eval, single_term

P = 5


def as_ints(series):
    return [a.to_fraction() for a in series.coefficients]


def test_branch_length():
    assert branch_length(0, 5) == 0
    assert branch_length(4, 5) == 1
    assert branch_length(25, 5) == 3
    assert [branch_length(i, 5) for i in (1, 5, 24, 124, 125)] == [1, 2, 2, 3, 4]


def test_mahler_examples():
    assert as_ints(mahler_coeffs(lambda x: x * x, 4, P)) == [0, 1, 2, 0]
    s = mahler_coeffs(indicator(1, 1, P), 2, P)
    assert as_ints(s) == [0, 1]
    s = mahler_series([0, 1, 2, 0], P)
    assert evaluate(s, 3) == PadicScalar.exact(9, P)
    assert evaluate(mahler_series([1], P), 17) == PadicScalar.exact(1, P)
    s = mahler_coeffs(indicator(1, 1, P), 25, P)
    assert evaluate(s, 6) == PadicScalar.exact(1, P)


@pytest.mark.parametrize("m", range(8))
def test_binomial_coefficients_are_deltas(m):
    s = mahler_coeffs(lambda x: binom(x, m), 10, P)
    assert as_ints(s) == [1 if n == m else 0 for n in range(10)]


@given(st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=30))
def test_round_trip(coeffs):
    s = mahler_series(coeffs, P)
    back = mahler_coeffs(lambda x: evaluate(s, x), len(coeffs), P)
    assert back == s


@pytest.mark.parametrize("i", [1, 3, 4, 7, 12, 24, 30])
def test_indicator_coefficients(i):
    s = mahler_coeffs(indicator(i, branch_length(i, P), P), i + 1, P)
    vals = as_ints(s)
    assert vals[:i] == [0] * i
    assert vals[i] == 1


def test_c0_valuation_examples():
    assert c0_valuation(mahler_series([0, 1, 2, 0], P)) == 0
    assert c0_valuation(mahler_series([0, 0], P)) == INF
    assert c0_valuation(mahler_series([5, 25], P)) == 1


@given(st.lists(st.integers(-10**4, 10**4), min_size=1, max_size=P))
def test_c0_valuation_matches_pointwise_minimum(coeffs):
    s = mahler_series(coeffs, P)
    pointwise = min(vp(evaluate(s, x).to_fraction(), P) for x in range(P**3))
    assert c0_valuation(s) == pointwise


def test_cr_valuation_examples():
    s = mahler_series([0, 1, 2, 0], P)
    assert cr_valuation(s, 0).value == c0_valuation(s)
    s = mahler_series([P ** branch_length(n, P) for n in range(30)], P)
    assert cr_valuation(s, 1).value == 0
    assert cr_valuation(mahler_series([0, 0, 0, 1], P), 2).value == -2


def test_forward_difference():
    s = mahler_series([0, 1, 2, 0], P)
    assert as_ints(forward_difference(s, 1)) == [1, 2, 0]
    assert forward_difference(s, 0) == s
    assert len(forward_difference(mahler_series([1], P), 1)) == 0


@given(st.lists(st.integers(-100, 100), min_size=1, max_size=12), st.integers(0, 11))
def test_forward_difference_at_zero(coeffs, k):
    s = mahler_series(coeffs, P)
    d = forward_difference(s, k)
    expected = s.coefficients[k] if k < len(coeffs) else PadicScalar.zero(P)
    assert evaluate(d, 0) == expected


def test_binomials_are_integral_on_integers():
    for n in range(6):
        vals = [vp(binom(x, n), P) for x in range(P**2)]
        assert min(vals) >= 0
        assert vp(binom(n, n), P) == 0


def test_wavelet_examples():
    w = wavelet_decompose(lambda x: 1, P + 1, P)
    assert [b.to_fraction() for b in w.coefficients] == [1] + [0] * P
    w = wavelet_decompose(indicator(3, 1, P), 5, P)
    assert [b.to_fraction() for b in w.coefficients] == [0, 0, 0, 1, 0]
    w = wavelet_decompose(lambda x: 2 if x % 5 == 0 else 0, 5, P)
    assert [b.to_fraction() for b in w.coefficients] == [2, -2, -2, -2, -2]


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=30))
def test_wavelet_round_trip(values):
    w = wavelet_decompose(lambda x: values[x], len(values), P)
    assert all(w.evaluate(x) == PadicScalar.exact(values[x], P) for x in range(len(values)))


def test_local_poly_approx_reproduces_polynomials():
    g = lambda x: 3 * x**2 - x + 7
    deriv = lambda j, m: [g(m), 6 * m - 1, 6][j]
    approx = local_poly_approx(deriv, 2, 2, P)
    for x in range(P**2):
        assert approx.evaluate(x).constant_part == PadicScalar.exact(g(x), P)
    single = local_poly_approx(deriv, 0, 2, P)
    assert len(single.jets) == 1


def test_local_poly_approx_of_polylog():
    f = single_term(2, 3, P, center=1)
    approx = local_poly_approx(lambda j, m: function_derivative(f, j, m), 1, 1, P)
    assert approx.jets[0][0] == polylog_eval(f, 0)
    assert approx.jets[0][0].is_zero
    assert approx.jets[0][1] == function_derivative(f, 1, 0)


def test_local_approximation_improves_with_level():
    f = single_term(2, 3, P)
    L = Fraction(1)
    bounds = []
    for h in (1, 2, 3):
        approx = local_poly_approx(lambda j, m: function_derivative(f, j, m, 12, L), h, 1, P)
        diffs = []
        for x in range(P**4, P**4 + 40):
            d = (polylog_eval(f, x, 12, L) - approx.evaluate(x)).constant_part
            diffs.append(d.valuation_lower_bound())
        bounds.append(min(diffs))
    assert bounds[0] < bounds[1] < bounds[2]
