import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semistable.llc import (
    Fp2,
    Irreducible,
    ReductionInput,
    Reducible,
    det_check,
    input_for_nu,
    iwahori_llc,
    locate,
    marked_line,
    normalize_irreducible,
    nu,
    reduce,
    reduce_detailed,
    solve_quadratic,
)
from semistable.padic_core import INF

HALF = Fraction(1, 2)


def F(p, x, y=0):
    return Fp2(p, x, y)


def test_fp2_field_axioms():
    p = 7
    elems = [Fp2(p, x, y) for x in range(p) for y in range(p)]
    one = F(p, 1)
    for a in elems[1:]:
        assert a * a.inverse() == one
    assert len({a * a for a in elems}) == (p * p + 1) // 2


def test_nu_examples():
    assert nu(ReductionInput(5, 4, 0)) == 0
    assert nu(ReductionInput(5, 4, HALF * 3)) == INF
    assert nu(ReductionInput(7, 5, Fraction(5, 2) + 49)) == 2
    assert nu(ReductionInput(5, 3, 1, Fraction(1, 5))) == -HALF


def test_input_validation():
    with pytest.raises(ValueError):
        ReductionInput(5, 9, 0)
    with pytest.raises(ValueError):
        ReductionInput(5, 2, 0)
    with pytest.raises(ValueError):
        ReductionInput(9, 4, 0)


def test_reduce_examples():
    d = reduce(ReductionInput(5, 4, Fraction(1, 5) + HALF * 3))
    assert d == Irreducible(5, 3, F(5, 1))
    d = reduce(ReductionInput(5, 4, 0))
    assert d == Reducible(5, ((2, F(5, 3)), (1, F(5, 2))))
    res = reduce_detailed(ReductionInput(5, 3, 1))
    lam = res.lam
    assert lam * lam == F(5, -1)
    assert lam + lam.inverse() == F(5, 0)
    assert reduce(ReductionInput(5, 4, HALF * 3)) == Irreducible(5, 7, F(5, 1))


def test_locate_conventions():
    assert locate(Fraction(-10), 3) == ("interval", 1)
    assert locate(HALF, 3) == ("point", 2)
    assert locate(Fraction(7), 3) == ("point", 2)
    assert locate(INF, 3) == ("point", 2)
    assert locate(Fraction(1), 4) == ("interval", 3)
    assert locate(INF, 4) == ("interval", 3)
    assert locate(Fraction(0), 4) == ("point", 2)
    assert locate(Fraction(-1), 4) == ("point", 1)
    assert locate(-HALF, 4) == ("interval", 2)


def oracle_lambda(p, k, L, L_sqrt, i):
    """Direct substitution into the point formula."""
    r = k - 2
    vm = (r - 1) // 2 if r % 2 else r // 2 - 1
    vpl = vm + (1 if r % 2 else 2)
    H = sum(Fraction(1, j) for j in range(1, vm + 1)) + sum(Fraction(1, j) for j in range(1, vpl + 1))
    e = Fraction(i) - Fraction(r, 2)
    if e.denominator == 1:
        x = (L - H) / Fraction(p) ** int(e)
    else:
        x = L_sqrt / Fraction(p) ** int(e - HALF)
    c = (-1) ** i * i * math.comb(r + 1 - i, i) * x
    return c.numerator * pow(c.denominator, -1, p) % p


@pytest.mark.parametrize("p", [5, 7])
def test_points_match_hand_substitution(p):
    rng = random.Random(p)
    for k in range(3, p + 2):
        r = k - 2
        for kind, i in marked_line(r):
            if kind != "point":
                continue
            for _ in range(4):
                u = rng.randrange(1, p)
                inp = input_for_nu(p, k, Fraction(i) - Fraction(r, 2), u)
                res = reduce_detailed(inp)
                assert (res.branch, res.index) == ("point", i)
                c = oracle_lambda(p, k, inp.L, inp.L_sqrt, i)
                if r % 2 and i == (r + 1) // 2:
                    assert res.lam + res.lam.inverse() == F(p, c)
                else:
                    assert res.lam == F(p, c)
                a, b = res.descriptor.summands
                assert a[0] == r + 1 - i and b[0] == i
                assert b[1] == a[1].inverse()


@pytest.mark.parametrize("p", [5, 7])
def test_intervals(p):
    for k in range(3, p + 2):
        r = k - 2
        for kind, i in marked_line(r):
            if kind != "interval":
                continue
            t = Fraction(i) - Fraction(r, 2) - HALF
            d = reduce(input_for_nu(p, k, t))
            assert d == Irreducible(p, r + 1 + (i - 1) * (p - 1), F(p, 1))


@pytest.mark.parametrize("p", [5, 7])
def test_alternation(p):
    for k in range(3, p + 2):
        r = k - 2
        grid = [Fraction(x, 2) for x in range(-2 * r - 4, 6)] + [INF]
        seq = []
        for t in grid:
            res = reduce_detailed(input_for_nu(p, k, t))
            assert isinstance(res.descriptor, Irreducible) == (res.branch == "interval")
            seq.append((res.branch, res.index))
        dedup = [s for j, s in enumerate(seq) if j == 0 or seq[j - 1] != s]
        assert dedup == marked_line(r)


@given(st.sampled_from([5, 7, 11]), st.data())
def test_det_check_on_random_L(p, data):
    k = data.draw(st.integers(3, p + 1))
    L = data.draw(st.fractions(max_denominator=p**4))
    b = data.draw(st.fractions(max_denominator=p**3))
    inp = ReductionInput(p, k, L, b)
    assert det_check(reduce(inp), k - 2)


def test_scaling_invariance():
    p, k = 7, 6
    base = ReductionInput(p, k, 0).harmonic_shift
    a = reduce(ReductionInput(p, k, base + 3 * 7))
    b = reduce(ReductionInput(p, k, base + 10 * 7 + 49 * 5))
    assert a == b


def test_quadratic_repeated_root():
    lam, mu = solve_quadratic(F(7, 2))
    assert lam == mu == F(7, 1)


def test_det_check_detects_corruption():
    d = Reducible(5, ((2, F(5, 3)), (1, F(5, 3))))
    assert not det_check(d, 2)
    assert not det_check(Irreducible(5, 4, F(5, 1)), 2)


def test_normalize_irreducible():
    assert normalize_irreducible(3, 5) == (2, 0)
    assert normalize_irreducible(7, 5) == (0, 1)
    with pytest.raises(ValueError):
        normalize_irreducible(6, 5)
    with pytest.raises(ValueError):
        Irreducible(5, 6, F(5, 1))


def test_iwahori_llc():
    p = 5
    blocks = iwahori_llc(Irreducible(p, 3, F(p, 1)))
    assert len(blocks) == 1
    assert (blocks[0].r, blocks[0].lam, blocks[0].eta_exp) == (2, F(p, 0), 0)
    # mu_lambda w^{r+1} + mu_{1/lambda} with r = 1
    lam = F(p, 2)
    blocks = iwahori_llc(Reducible(p, ((2, lam), (0, lam.inverse()))))
    assert [(b.r, b.lam, b.eta_exp) for b in blocks] == [(1, lam, 0), (1, lam.inverse(), 2)]
    # the output of reduce(5, 4, 0) is mu_3 w^2 + mu_2 w = (mu_3 w + mu_2) (x) w
    blocks = iwahori_llc(reduce(ReductionInput(p, 4, 0)))
    assert [(b.r, b.lam, b.eta_exp) for b in blocks] == [(0, F(p, 3), 1), (2, F(p, 2), 2)]
