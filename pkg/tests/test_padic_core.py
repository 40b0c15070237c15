from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semistable.evalue import EValue, EllOverflowError, congruence_margin, is_congruent_mod_pi
from semistable.padic_core import (
    INF,
    PadicScalar,
    Prime,
    binom,
    harmonic_sum,
    legendre_count,
    teichmuller,
    v_plus_minus,
    vp,
    vp_factorial,
)

nonzero_rationals = st.fractions(max_denominator=10**6).filter(lambda x: x != 0)
primes = st.sampled_from([5, 7, 11, 13])


def test_prime_validation():
    assert Prime(7) == 7
    for bad in (2, 3, 9, 1, 0):
        with pytest.raises(ValueError):
            Prime(bad)


def test_vp_examples():
    assert vp(25, 5) == 2
    assert vp(Fraction(3, 10), 5) == -1
    assert vp(0, 5) == INF


@given(nonzero_rationals, nonzero_rationals, primes)
def test_vp_is_a_valuation(x, y, p):
    assert vp(x * y, p) == vp(x, p) + vp(y, p)
    if x + y != 0:
        assert vp(x + y, p) >= min(vp(x, p), vp(y, p))
        if vp(x, p) != vp(y, p):
            assert vp(x + y, p) == min(vp(x, p), vp(y, p))


def test_harmonic_sums():
    assert harmonic_sum(0) == 0
    assert harmonic_sum(2) == Fraction(3, 2)
    assert harmonic_sum(4) == Fraction(25, 12)
    with pytest.raises(ValueError):
        harmonic_sum(-1)


@pytest.mark.parametrize("r,expected", [(1, (0, 1)), (2, (0, 2)), (3, (1, 2)), (6, (2, 4)), (7, (3, 4))])
def test_v_plus_minus(r, expected):
    vm, vpl = v_plus_minus(r)
    assert (vm, vpl) == expected
    assert vm < Fraction(r, 2) < vpl


def test_teichmuller_examples():
    assert teichmuller(0, 5, 3) == 0
    assert teichmuller(1, 5, 3) == 1
    assert teichmuller(2, 5, 2) == 7


@given(st.integers(1, 10**6), primes, st.integers(1, 6))
def test_teichmuller_is_root_of_unity(a, p, N):
    if a % p == 0:
        return
    t = teichmuller(a, p, N)
    assert t % p == a % p
    assert pow(t, p - 1, p**N) == 1


def test_vp_factorial_examples():
    assert vp_factorial(0, 5) == 0
    assert vp_factorial(6, 5) == 1
    assert vp_factorial(25, 5) == 6


@pytest.mark.parametrize("p", [5, 7, 11])
def test_vp_factorial_matches_legendre(p):
    assert all(vp_factorial(j, p) == legendre_count(j, p) for j in range(10**4 + 1))


def test_binom():
    assert binom(5, 2) == 10
    assert binom(3, 0) == 1
    assert binom(2, 3) == 0
    assert binom(-1, 3) == -1
    assert binom(-2, 2) == 3


# PadicScalar


def scalars(p, N=8):
    return nonzero_rationals.map(lambda x: PadicScalar.from_rational(x, p, N))


@given(scalars(5), scalars(5), scalars(5))
def test_multiplication_commutative_associative(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert (a * b).valuation == a.valuation + b.valuation


@given(nonzero_rationals, nonzero_rationals)
def test_truncated_arithmetic_matches_rationals(x, y):
    p = 5
    a, b = PadicScalar.from_rational(x, p), PadicScalar.from_rational(y, p)
    assert a + b == PadicScalar.exact(x + y, p)
    assert a - b == PadicScalar.exact(x - y, p)
    assert a * b == PadicScalar.exact(x * y, p)
    assert a / b == PadicScalar.exact(x / y, p)


def test_truncated_zero_tracks_absolute_precision():
    a = PadicScalar.from_rational(1, 5, 3)
    z = a - a
    assert z.is_zero
    assert z.valuation_lower_bound() == 3
    assert (z + PadicScalar.exact(125, 5)).is_zero


def test_half_integer_valuations():
    s = PadicScalar.p_power(Fraction(1, 2), 5)
    assert (s * s) == PadicScalar.exact(5, 5)
    with pytest.raises(ValueError):
        s + PadicScalar.exact(1, 5)
    assert s.residue() == 0


def test_residue_and_fraction():
    a = PadicScalar.exact(Fraction(7, 3), 5)
    assert a.residue() == 7 * pow(3, -1, 5) % 5
    assert a.to_fraction() == Fraction(7, 3)


# EValue


def test_evalue_arithmetic_and_overflow():
    p = 5
    x = EValue(PadicScalar.exact(2, p), PadicScalar.exact(3, p))
    y = EValue.const(4, p)
    assert (x * y).ell_part == PadicScalar.exact(12, p)
    assert x.specialize(Fraction(1, 3)) == PadicScalar.exact(3, p)
    with pytest.raises(EllOverflowError):
        x * x


def test_congruence_margin():
    p = 5
    a = EValue(PadicScalar.exact(1, p), PadicScalar.exact(5, p))
    b = EValue(PadicScalar.exact(6, p), PadicScalar.zero(p))
    assert congruence_margin(a, b) == 1
    assert is_congruent_mod_pi(a, b)
    assert not is_congruent_mod_pi(a, EValue.zero(p))
