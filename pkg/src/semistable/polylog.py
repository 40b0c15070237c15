"""The branch ``log_L`` of the p-adic logarithm and poly-log functions.

``log_L(p) = L`` and ``log_L`` kills roots of unity, so for
``z = p^v * zeta * u`` with ``u`` in ``1 + p Z_p`` we get
``log_L(z) = v * L + log(u)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .evalue import EValue
from .mahler_space import branch_length, mahler_coeffs
from .padic_core import (
    DEFAULT_PRECISION,
    INF,
    PadicScalar,
    as_scalar,
    binom,
    check_prime,
    harmonic_sum,
    reduce_mod,
    teichmuller,
    vp,
)


def _ilog(k: int, p: int) -> int:
    e = 0
    while k >= p:
        k //= p
        e += 1
    return e


def log_unit(u: int, p: int, N: int) -> PadicScalar:
    """``log(u)`` for an integer ``u = 1 mod p``, known modulo ``p^N``.

    Sums ``(-1)^{k+1} x^k / k`` with ``x = u - 1`` while the bound
    ``k - v_p(k)`` on the term valuation stays below ``N``.
    """
    x = u - 1
    if x % p:
        raise ValueError("argument is not a principal unit")
    total = Fraction(0)
    k = 1
    while k - _ilog(k, p) < N:
        term = Fraction(x**k, k)
        total += term if k % 2 else -term
        k += 1
    return PadicScalar.from_rational_abs(total, p, N)


def log_branch(z, p: int, N: int = DEFAULT_PRECISION, L=None) -> EValue:
    """``log_L(z)`` for a nonzero rational ``z``.

    With ``L`` None the result keeps ``L`` symbolic; otherwise ``L`` is
    substituted and the result has zero ``ell_part``.
    """
    check_prime(p)
    z = Fraction(z)
    if z == 0:
        raise ValueError("log_L is not defined at 0")
    v = vp(z, p)
    w = z / Fraction(p) ** v
    if w in (1, -1):
        value = EValue(PadicScalar.zero(p), PadicScalar.exact(v, p))
        return value if L is None else EValue.const(value.specialize(L), p)
    wm = reduce_mod(w, p, N)
    zeta = teichmuller(wm, p, N)
    u = wm * pow(zeta, -1, p**N) % p**N
    value = EValue(log_unit(u, p, N), PadicScalar.exact(v, p))
    if L is None:
        return value
    return EValue.const(value.specialize(L), p)


@dataclass(frozen=True)
class PolyLogTerm:
    """``coefficient * (z - center)^exponent * log_L(z - center)``."""

    coefficient: EValue
    center: Fraction
    exponent: int


@dataclass(frozen=True)
class PolyLogFunction:
    """Finite sum of poly-log terms with exponents in ``(r/2, r]``."""

    p: int
    r: int
    terms: tuple
    witness: bool = False

    def __post_init__(self):
        check_prime(self.p)
        for t in self.terms:
            if not (self.r // 2 + 1 <= t.exponent <= self.r):
                raise ValueError(f"exponent {t.exponent} outside [{self.r // 2 + 1}, {self.r}]")
        if self.witness:
            ok, deg = degree_condition_check(self)
            if not ok:
                raise ValueError(f"degree condition fails: degree {deg} >= r/2")


def make_term(coefficient, center, exponent: int, p: int) -> PolyLogTerm:
    if not isinstance(coefficient, EValue):
        coefficient = EValue.const(coefficient, p)
    return PolyLogTerm(coefficient, Fraction(center), exponent)


def polylog_eval(f: PolyLogFunction, z, N: int = DEFAULT_PRECISION, L=None) -> EValue:
    """Termwise evaluation; a term at its own center contributes 0."""
    z = Fraction(z)
    total = EValue.zero(f.p)
    for t in f.terms:
        d = z - t.center
        if d == 0:
            continue
        total = total + t.coefficient * (log_branch(d, f.p, N, L) * d**t.exponent)
    return total


def falling_factorial(n: int, j: int) -> int:
    return math.factorial(n) // math.factorial(n - j)


def derivative_constant(n: int, j: int) -> Fraction:
    """``t_j = n!/(n-j)! * (H_n - H_{n-j})``."""
    return falling_factorial(n, j) * (harmonic_sum(n) - harmonic_sum(n - j))


def polylog_derivative(n: int, j: int, z, z0, p: int, N: int = DEFAULT_PRECISION, L=None) -> EValue:
    """``d^j/dz^j [(z - z0)^n log_L(z - z0)]``.

    Equals ``n!/(n-j)! [(z-z0)^{n-j} log_L(z-z0) + (H_n - H_{n-j})(z-z0)^{n-j}]``.
    At ``z = z0`` the value is 0 when ``n - j >= 1`` and undefined otherwise.
    """
    if not 0 <= j <= n:
        raise ValueError("need 0 <= j <= n")
    d = Fraction(z) - Fraction(z0)
    if d == 0:
        if n - j >= 1:
            return EValue.zero(p)
        raise ValueError("derivative is singular at the center")
    power = d ** (n - j)
    harmonic = harmonic_sum(n) - harmonic_sum(n - j)
    return (log_branch(d, p, N, L) * power + harmonic * power) * falling_factorial(n, j)


def function_derivative(f: PolyLogFunction, j: int, z, N: int = DEFAULT_PRECISION, L=None) -> EValue:
    """``f^(j)(z)`` summed termwise."""
    total = EValue.zero(f.p)
    for t in f.terms:
        total = total + t.coefficient * polylog_derivative(t.exponent, j, z, t.center, f.p, N, L)
    return total


def polynomial_part(f: PolyLogFunction) -> list:
    """Coefficients (lowest degree first) of ``sum coeff * (z - center)^exponent``."""
    deg = max((t.exponent for t in f.terms), default=0)
    coeffs = [EValue.zero(f.p) for _ in range(deg + 1)]
    for t in f.terms:
        for k in range(t.exponent + 1):
            c = binom(t.exponent, k) * (-t.center) ** (t.exponent - k)
            if c:
                coeffs[k] = coeffs[k] + t.coefficient * c
    return coeffs


def degree_condition_check(f: PolyLogFunction) -> tuple[bool, Optional[int]]:
    """``deg(sum coeff (z - center)^n) < r/2``; returns ``(ok, degree)`` with degree None for 0."""
    coeffs = polynomial_part(f)
    deg = None
    for k, c in enumerate(coeffs):
        if not c.is_zero:
            deg = k
    ok = deg is None or 2 * deg < f.r
    return ok, deg


@dataclass(frozen=True)
class DecayReport:
    """``v_p(a_n) - s l(n)`` over a Mahler window."""

    sequence: tuple
    head_min: object
    trailing_min: object
    trailing_start: int

    def to_json(self) -> dict:
        enc = lambda v: None if v == INF else str(v)
        return {
            "sequence": [enc(v) for v in self.sequence],
            "head_min": enc(self.head_min),
            "trailing_min": enc(self.trailing_min),
            "trailing_start": self.trailing_start,
        }


def csmooth_diagnostic(f: PolyLogFunction, s, L, window: int, N: int = DEFAULT_PRECISION,
                       trailing_start: Optional[int] = None) -> DecayReport:
    """Mahler-decay diagnostic for ``f`` with ``L`` specialized to a rational."""
    for t in f.terms:
        if vp(t.center, f.p) < 0:
            raise ValueError("centers must lie in Z_p")
    s = Fraction(s)
    series = mahler_coeffs(lambda x: polylog_eval(f, x, N, L), window, f.p)
    seq = []
    for n, a in enumerate(series.coefficients):
        v = a.valuation_lower_bound()
        seq.append(v if v == INF else v - s * branch_length(n, f.p))
    start = f.p if trailing_start is None else trailing_start
    return DecayReport(tuple(seq), min(seq[:start], default=INF), min(seq[start:], default=INF), start)


def single_term(n: int, r: int, p: int, center=0, coefficient=1) -> PolyLogFunction:
    """``coefficient * (z - center)^n log_L(z - center)``."""
    return PolyLogFunction(p, r, (make_term(coefficient, center, n, p),))


def terms_from(data: Sequence[tuple], r: int, p: int, witness: bool = False) -> PolyLogFunction:
    """Build from ``(coefficient, center, exponent)`` triples."""
    return PolyLogFunction(p, r, tuple(make_term(c, z, n, p) for c, z, n in data), witness)


def specialize(value: EValue, L) -> PadicScalar:
    return value.specialize(as_scalar(L, value.p))
