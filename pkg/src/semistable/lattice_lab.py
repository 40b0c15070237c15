"""Congruence laboratory for the standard lattice.

Locally algebraic functions and the ``GL_2(Q_p)`` action on them, the two
families of lattice elements with integrality certificates, the Vandermonde
system behind the poly-log witnesses, Taylor jets ``g_h`` and exact checks
of the coefficient congruences satisfied by the first jet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Optional

from .bt_tree import GL2Mat, _reduce_mu
from .evalue import EValue, congruence_margin
from .mahler_space import LocallyPolynomialApprox, local_poly_approx
from .padic_core import DEFAULT_PRECISION, INF, PadicScalar, as_scalar, binom, check_prime, vp
from .polylog import PolyLogFunction, function_derivative, make_term

HALF = Fraction(1, 2)

# values in Q_p(sqrt p) affine in L


def _split_scalar(x: PadicScalar) -> tuple:
    """``x = a + b sqrt(p)`` with ``a, b`` of integral valuation."""
    if x.is_zero or x.valuation.denominator == 1:
        return x, PadicScalar.zero(x.p)
    return PadicScalar.zero(x.p), replace(x, valuation=x.valuation - HALF)


@dataclass(frozen=True, eq=False)
class RootPValue:
    """``a + b sqrt(p)`` with ``a, b`` EValues of integral valuation."""

    a: EValue
    b: EValue

    @classmethod
    def of(cls, x) -> "RootPValue":
        if isinstance(x, RootPValue):
            return x
        c0, c1 = _split_scalar(x.constant_part)
        e0, e1 = _split_scalar(x.ell_part)
        return cls(EValue(c0, e0), EValue(c1, e1))

    @classmethod
    def zero(cls, p: int) -> "RootPValue":
        return cls(EValue.zero(p), EValue.zero(p))

    def __add__(self, o) -> "RootPValue":
        o = RootPValue.of(o)
        return RootPValue(self.a + o.a, self.b + o.b)

    def __neg__(self) -> "RootPValue":
        return RootPValue(-self.a, -self.b)

    def __sub__(self, o) -> "RootPValue":
        return self + (-RootPValue.of(o))

    @property
    def is_zero(self) -> bool:
        return self.a.is_zero and self.b.is_zero

    def __eq__(self, o) -> bool:
        return (self - o).is_zero

    __hash__ = None  # type: ignore[assignment]


# locally algebraic functions


@dataclass(frozen=True)
class Indicator:
    """``z0 + p^h Z_p`` (ball), its complement in ``Q_p``, or all of ``Q_p``."""

    p: int
    kind: str
    center: Fraction = Fraction(0)
    h: int = 0

    def __post_init__(self):
        if self.kind not in ("ball", "complement", "all"):
            raise ValueError(f"unknown indicator kind {self.kind!r}")
        if self.kind == "all":
            object.__setattr__(self, "center", Fraction(0))
            object.__setattr__(self, "h", 0)
        else:
            object.__setattr__(self, "center", _reduce_mu(Fraction(self.center), self.h, self.p))

    def contains(self, z) -> bool:
        if self.kind == "all":
            return True
        inside = vp(Fraction(z) - self.center, self.p) >= self.h
        return inside if self.kind == "ball" else not inside

    def complement(self) -> "Indicator":
        if self.kind == "all":
            raise ValueError("complement of Q_p is empty")
        return Indicator(self.p, "complement" if self.kind == "ball" else "ball", self.center, self.h)


def ball(center, h: int, p: int) -> Indicator:
    return Indicator(p, "ball", Fraction(center), h)


@dataclass(frozen=True)
class LATerm:
    """``coefficient * (z - center)^exponent * indicator``."""

    coefficient: EValue
    center: Fraction
    exponent: int
    indicator: Indicator


@dataclass(frozen=True)
class LocallyAlgebraicFn:
    p: int
    r: int
    terms: tuple

    def __post_init__(self):
        for t in self.terms:
            if not 0 <= t.exponent <= self.r:
                raise ValueError("exponent outside [0, r]")

    def evaluate(self, z) -> RootPValue:
        z = Fraction(z)
        total = RootPValue.zero(self.p)
        for t in self.terms:
            if t.indicator.contains(z):
                total = total + t.coefficient * (z - t.center) ** t.exponent
        return total

    def __neg__(self) -> "LocallyAlgebraicFn":
        return LocallyAlgebraicFn(self.p, self.r, tuple(replace(t, coefficient=-t.coefficient) for t in self.terms))

    def __add__(self, o: "LocallyAlgebraicFn") -> "LocallyAlgebraicFn":
        return LocallyAlgebraicFn(self.p, self.r, self.terms + o.terms)

    def __sub__(self, o: "LocallyAlgebraicFn") -> "LocallyAlgebraicFn":
        return self + (-o)


def la_term(coefficient, center, exponent: int, indicator: Indicator) -> LATerm:
    p = indicator.p
    if not isinstance(coefficient, EValue):
        coefficient = EValue.const(coefficient, p)
    return LATerm(coefficient, Fraction(center), exponent, indicator)


def monomial_on(indicator: Indicator, j: int, r: int, coefficient=1, center=None) -> LocallyAlgebraicFn:
    """``coefficient * (z - center)^j * indicator`` with the indicator center as default."""
    c = indicator.center if center is None else center
    return LocallyAlgebraicFn(indicator.p, r, (la_term(coefficient, c, j, indicator),))


@dataclass(frozen=True)
class GAction:
    matrix: GL2Mat
    r: int


def _poly_mul(f: list, g: list) -> list:
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] += x * y
    return out


def _shift(poly: list, c: Fraction) -> list:
    """Coefficients of ``poly(z)`` in powers of ``(z - c)``."""
    n = len(poly)
    return [sum(poly[k] * binom(k, m) * c ** (k - m) for k in range(m, n)) for m in range(n)]


def _pullback(ind: Indicator, m: GL2Mat) -> Indicator:
    """``{z : (az + c)/(bz + d) in ind}`` for ``m = (a b; c d)``."""
    p = ind.p
    if ind.kind == "all":
        return ind
    if ind.kind == "complement":
        return _pullback(ind.complement(), m).complement()
    # the inverse Moebius map w -> (al w + be)/(ga w + de)
    al, be, ga, de = m.d, -m.c, -m.b, m.a
    z0, h = ind.center, ind.h
    if ga == 0:
        return ball((al * z0 + be) / de, h + vp(al / de, p), p)
    det = al * de - be * ga
    c0 = z0 + de / ga
    if c0 != 0 and vp(c0, p) < h:
        radius = h - 2 * vp(c0, p) + vp(det, p) - 2 * vp(ga, p)
        return ball((al * z0 + be) / (ga * z0 + de), radius, p)
    radius = 1 - h + vp(det, p) - 2 * vp(ga, p)
    return Indicator(p, "complement", al / ga, radius)


def apply_g_action(g: GAction, f: LocallyAlgebraicFn) -> LocallyAlgebraicFn:
    """``(g f)(z) = |det g|^{r/2} (bz + d)^r f((az + c)/(bz + d))``."""
    p, r = f.p, f.r
    if g.r != r:
        raise ValueError("action weight differs from the function's r")
    m = g.matrix
    a, b, c, d = m.entries()
    scalar = PadicScalar.p_power(-vp(m.det, p) * Fraction(r, 2), p)
    out = []
    for t in f.terms:
        z0, j = t.center, t.exponent
        poly = [Fraction(1)]
        for _ in range(r - j):
            poly = _poly_mul(poly, [d, b])
        for _ in range(j):
            poly = _poly_mul(poly, [c - z0 * d, a - z0 * b])
        ind = _pullback(t.indicator, m)
        for k, coeff in enumerate(_shift(poly, ind.center)):
            if coeff:
                out.append(LATerm(t.coefficient * scalar * coeff, ind.center, k, ind))
    return LocallyAlgebraicFn(p, r, tuple(out))


# comparison modulo polynomials


def _key(ind: Indicator) -> tuple:
    return (ind.h, ind.center)


def _ball_contains(outer: tuple, inner: tuple, p: int) -> bool:
    return inner[0] >= outer[0] and vp(inner[1] - outer[1], p) >= outer[0]


class _PolyAcc:
    """Polynomial in ``z`` with ``Q_p(sqrt p)``-valued coefficients."""

    def __init__(self, p: int):
        self.p = p
        self.coeffs: dict = {}

    def add_term(self, coeff: EValue, center: Fraction, j: int, sign: int = 1) -> None:
        for k in range(j + 1):
            c = binom(j, k) * (-center) ** (j - k) * sign
            if c:
                cur = self.coeffs.get(k, RootPValue.zero(self.p))
                self.coeffs[k] = cur + coeff * c

    def merged(self, other: "_PolyAcc") -> "_PolyAcc":
        out = _PolyAcc(self.p)
        out.coeffs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out.coeffs[k] = out.coeffs.get(k, RootPValue.zero(self.p)) + v
        return out

    @property
    def is_zero(self) -> bool:
        return all(v.is_zero for v in self.coeffs.values())

    def degree(self) -> Optional[int]:
        ks = [k for k, v in self.coeffs.items() if not v.is_zero]
        return max(ks) if ks else None


def normalize(f: LocallyAlgebraicFn) -> tuple:
    """``(polynomial, {ball: polynomial})`` with complements rewritten as ``1 - ball``."""
    p = f.p
    glob = _PolyAcc(p)
    balls: dict = {}
    for t in f.terms:
        ind = t.indicator
        if ind.kind == "all":
            glob.add_term(t.coefficient, t.center, t.exponent)
            continue
        acc = balls.setdefault(_key(ind), _PolyAcc(p))
        if ind.kind == "ball":
            acc.add_term(t.coefficient, t.center, t.exponent)
        else:
            glob.add_term(t.coefficient, t.center, t.exponent)
            acc.add_term(t.coefficient, t.center, t.exponent, -1)
    return glob, balls


def _covered(key: tuple, inner: list, p: int) -> bool:
    """Whether the ball ``key`` is the union of the balls in ``inner``."""
    h, c = key
    for t in range(p):
        child = (h + 1, _reduce_mu(c + t * Fraction(p) ** h, h + 1, p))
        if child in inner:
            continue
        below = [b for b in inner if _ball_contains(child, b, p)]
        if not below or not _covered(child, below, p):
            return False
    return True


def _ball_part_zero(balls: Mapping, p: int) -> bool:
    keys = [k for k, v in balls.items() if not v.is_zero]

    def check(key: Optional[tuple], acc: _PolyAcc, pool: list) -> bool:
        inside = [b for b in pool if b != key and (key is None or _ball_contains(key, b, p))]
        maximal = [b for b in inside if not any(o != b and _ball_contains(o, b, p) for o in inside)]
        if key is not None and not acc.is_zero and not _covered(key, maximal, p):
            return False
        for b in maximal:
            sub = [x for x in inside if _ball_contains(b, x, p)]
            if not check(b, acc.merged(balls[b]), sub):
                return False
        return True

    return check(None, _PolyAcc(p), keys)


def equal_mod_polynomials(f: LocallyAlgebraicFn, g: LocallyAlgebraicFn) -> bool:
    """``f - g`` is a global polynomial of degree at most ``r``."""
    glob, balls = normalize(f - g)
    deg = glob.degree()
    return (deg is None or deg <= f.r) and _ball_part_zero(balls, f.p)


# lattice elements


@dataclass(frozen=True)
class LatticeElement:
    kind: str
    function: LocallyAlgebraicFn
    certificate: Fraction


def lattice_element(kind: str, z0, j: int, h: int, r: int, p: int) -> LatticeElement:
    """Generators ``p^e (z - z0)^j 1_{z0 + p^h Z_p}`` known to lie in the standard lattice.

    ``interior``: ``e = (h-1)(r/2 - j)`` for ``0 <= j <= r``.
    ``boundary``: ``e = h(r/2 - j)`` for ``r/2 <= j <= r``.
    """
    check_prime(p)
    half_r = Fraction(r, 2)
    if kind == "interior":
        if not 0 <= j <= r:
            raise ValueError("interior elements need 0 <= j <= r")
        e = (h - 1) * (half_r - j)
    elif kind == "boundary":
        if not half_r <= j <= r:
            raise ValueError("boundary elements need r/2 <= j <= r")
        e = h * (half_r - j)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    ind = ball(z0, h, p)
    fn = monomial_on(ind, j, r, PadicScalar.p_power(e, p), Fraction(z0))
    return LatticeElement(kind, fn, Fraction(e))


def stronger_bound_image(z0, j: int, h: int, r: int, p: int) -> LocallyAlgebraicFn:
    """``-(0 1; p^h -z0)`` applied to ``z^{r-j} 1_{p Z_p}``."""
    g = GAction(GL2Mat(Fraction(0), Fraction(1), Fraction(p) ** h, -Fraction(z0)), r)
    return -apply_g_action(g, monomial_on(ball(0, 1, p), r - j, r))


# the Vandermonde system


@dataclass(frozen=True)
class LambdaSystem:
    """Weights ``lambda_i`` on the nodes ``0..n`` and ``p`` (where ``lambda_p = -1``)."""

    p: int
    n: int
    lambdas: Mapping

    @property
    def nodes(self) -> tuple:
        return tuple(range(self.n + 1)) + (self.p,)

    def power_sum(self, j: int) -> Fraction:
        return sum(self.lambdas[i] * Fraction(i) ** j for i in self.nodes)

    def vanishing_sums(self) -> list:
        return [self.power_sum(j) for j in range(self.n + 1)]

    def mod_p_pattern(self) -> tuple:
        return tuple(int(Fraction(self.lambdas[i]).numerator * pow(Fraction(self.lambdas[i]).denominator, -1, self.p) % self.p)
                     for i in range(self.n + 1))

    def is_valid(self) -> bool:
        pattern_ok = self.mod_p_pattern() == (1,) + (0,) * self.n
        return all(s == 0 for s in self.vanishing_sums()) and pattern_ok and self.lambdas[self.p] == -1


def solve_lambda_system(n: int, p: int) -> LambdaSystem:
    """Solve ``sum_{i<=n} lambda_i i^j = p^j`` for ``j = 0..n``.

    The Vandermonde system on distinct nodes has the Lagrange solution
    ``lambda_i = prod_{k != i} (p - k)/(i - k)``.
    """
    check_prime(p)
    if not 1 <= n <= p - 1:
        raise ValueError("need 1 <= n <= p-1")
    lam = {}
    for i in range(n + 1):
        v = Fraction(1)
        for k in range(n + 1):
            if k != i:
                v *= Fraction(p - k, i - k)
        lam[i] = v
    lam[p] = Fraction(-1)
    sys = LambdaSystem(p, n, lam)
    if not sys.is_valid():
        raise AssertionError("Vandermonde solution failed validation")
    return sys


def perturbed(sys: LambdaSystem, i: int = 0, delta=1) -> LambdaSystem:
    lam = dict(sys.lambdas)
    lam[i] = lam[i] + Fraction(delta)
    return LambdaSystem(sys.p, sys.n, lam)


def build_witness(sys: LambdaSystem, x, r: Optional[int] = None) -> PolyLogFunction:
    """``p^x sum_i lambda_i (z - i)^n log_L(z - i)`` over the nodes of ``sys``."""
    p, n = sys.p, sys.n
    r = n if r is None else r
    scale = PadicScalar.p_power(Fraction(x), p)
    terms = tuple(make_term(scale * PadicScalar.exact(sys.lambdas[i], p), i, n, p) for i in sys.nodes)
    return PolyLogFunction(p, r, terms, witness=True)


def taylor_jet_expand(f: PolyLogFunction, h: int, t: int, N: int = DEFAULT_PRECISION, L=None) -> LocallyPolynomialApprox:
    """Jets of ``g_h``: ``sum_{j<=t} f^(j)(m)/j! (z - m)^j`` on each ``m + p^h Z_p``."""
    return local_poly_approx(lambda j, m: function_derivative(f, j, m, N, L), h, t, f.p)


def regroup_jets(fine: LocallyPolynomialApprox, coarse: LocallyPolynomialApprox) -> list:
    """Differences between level-``h`` jets and level-``(h-1)`` jets re-expanded at the same centers.

    Records ``(m, k, difference)`` for each residue ``m < p^h`` and degree ``k``.
    The exceptional descent below level 3 is not handled here.
    """
    if fine.h != coarse.h + 1 or fine.p != coarse.p:
        raise ValueError("jets must be at consecutive levels")
    p = fine.p
    out = []
    for m, jet in enumerate(fine.jets):
        m0 = m % p**coarse.h
        shift = m - m0
        base = coarse.jets[m0]
        for k in range(len(jet)):
            moved = EValue.zero(p)
            for i in range(k, len(base)):
                moved = moved + base[i] * (binom(i, k) * Fraction(shift) ** (i - k))
            out.append((m, k, jet[k] - moved))
    return out


# congruences of the first jet


@dataclass(frozen=True)
class CongruenceRecord:
    a: int
    j: int
    passed: bool
    margin_valuation: object

    def to_json(self) -> dict:
        m = self.margin_valuation
        return {"a": self.a, "j": self.j, "pass": self.passed, "margin_valuation": None if m == INF else str(m)}


@dataclass(frozen=True)
class CongruenceReport:
    p: int
    r: int
    n: int
    x: Fraction
    records: tuple

    @property
    def all_pass(self) -> bool:
        return all(rec.passed for rec in self.records)

    def to_json(self) -> dict:
        return {
            "p": self.p, "r": self.r, "n": self.n, "x": str(self.x),
            "all_pass": self.all_pass,
            "records": [rec.to_json() for rec in self.records],
        }


def check_lab_preconditions(p: int, r: int, n: int, x) -> Fraction:
    check_prime(p)
    x = Fraction(x)
    if not 2 * n > r + 2:
        raise ValueError("need n > k/2 = (r+2)/2")
    if not n <= r <= p - 1:
        raise ValueError("need n <= r <= p-1")
    if (2 * x).denominator != 1 or x < -1:
        raise ValueError("x must be a half-integer >= -1")
    return x


def g1_targets(p: int, n: int, x: Fraction, a: int, j: int) -> EValue:
    """Predicted residue of ``g^(j)(a)/j!`` modulo the maximal ideal."""
    c = binom(n, j)
    if a:
        return EValue.const(PadicScalar.p_power(1 + x, p) * (c * Fraction(a) ** (n - j - 1)), p)
    sign = (-1) ** (n - j + 1)
    return EValue.ell(PadicScalar.p_power(x + n - j, p) * (sign * c), p)


def verify_g1_congruence(p: int, r: int, n: int, x, N: int = DEFAULT_PRECISION) -> CongruenceReport:
    """Compare ``g^(j)(a)/j!`` with its predicted residue for ``a < p`` and ``j < n``."""
    x = check_lab_preconditions(p, r, n, x)
    g = build_witness(solve_lambda_system(n, p), x, r)
    records = []
    for a in range(p):
        for j in range(n):
            value = function_derivative(g, j, a, N) * Fraction(1, math.factorial(j))
            m = congruence_margin(value, g1_targets(p, n, x, a, j))
            records.append(CongruenceRecord(a, j, m == INF or m > 0, m))
    return CongruenceReport(p, r, n, x, tuple(records))


@dataclass(frozen=True)
class OuterPartReport:
    coefficients: tuple  # coefficient of z^{r-n+k} log_L(z), k = 0..n

    @property
    def log_term_vanishes(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def to_json(self) -> dict:
        return {"log_z_coefficients": [str(c) for c in self.coefficients], "vanishes": self.log_term_vanishes}


def verify_outer_part_claim(p: int, r: int, n: int, sys: LambdaSystem, x=0) -> OuterPartReport:
    """Coefficients of ``log_L(z)`` in ``sum_i p^x lambda_i z^{r-n} (1 - z z_i)^n log_L(z^{-1} - z_i)``.

    Writing ``log_L(1/z - z_i) = log_L(1 - z z_i) - log_L(z)``, the pure
    ``log_L(z)`` part is ``-p^x z^{r-n} sum_k C(n,k) (-z)^k sum_i lambda_i z_i^k``.
    """
    if n > r:
        raise ValueError("need n <= r")
    scale = Fraction(p) ** Fraction(x) if Fraction(x).denominator == 1 else None
    coeffs = []
    for k in range(n + 1):
        c = -binom(n, k) * (-1) ** k * sys.power_sum(k)
        coeffs.append(c if scale is None else c * scale)
    return OuterPartReport(tuple(coeffs))


def specialize_L(value: EValue, L) -> PadicScalar:
    return value.specialize(as_scalar(L, value.p))
