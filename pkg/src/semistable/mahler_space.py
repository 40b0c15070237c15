"""Finite Mahler and wavelet expansions of functions on ``Z_p``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .evalue import EValue
from .padic_core import INF, PadicScalar, binom, check_prime

FunctionOracle = Callable[[int], Union[int, Fraction, PadicScalar, EValue]]


def branch_length(i: int, p: int) -> int:
    """``l(i)``: the least ``n >= 0`` with ``p^n > i``."""
    if i < 0:
        raise ValueError("i must be non-negative")
    n, q = 0, 1
    while q <= i:
        q *= p
        n += 1
    return n


def _to_scalar(value, p: int, N: Optional[int]) -> PadicScalar:
    if isinstance(value, EValue):
        if not value.ell_part.is_zero:
            raise ValueError("oracle value depends on L; specialize it first")
        value = value.constant_part
    if isinstance(value, PadicScalar):
        return value if N is None else value.truncate(N) if not value.is_zero else value
    return PadicScalar.from_rational(value, p, N)


@dataclass(frozen=True)
class MahlerSeries:
    """``g(x) = sum a_n * binom(x, n)`` truncated to the stored coefficients."""

    p: int
    coefficients: tuple
    r_hint: Optional[Fraction] = None

    def __len__(self) -> int:
        return len(self.coefficients)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MahlerSeries) or other.p != self.p:
            return NotImplemented
        a, b = list(self.coefficients), list(other.coefficients)
        zero = PadicScalar.zero(self.p)
        n = max(len(a), len(b))
        a += [zero] * (n - len(a))
        b += [zero] * (n - len(b))
        return all(x == y for x, y in zip(a, b))

    __hash__ = None  # type: ignore[assignment]

    def to_json(self) -> list:
        return [c.to_json() for c in self.coefficients]


def mahler_series(values: Sequence, p: int, N: Optional[int] = None) -> MahlerSeries:
    """Build a series from explicit coefficients."""
    return MahlerSeries(p, tuple(_to_scalar(v, p, N) for v in values))


def mahler_coeffs(g: FunctionOracle, count: int, p: int, N: Optional[int] = None) -> MahlerSeries:
    """First ``count`` Mahler coefficients of ``g`` via iterated forward differences."""
    check_prime(p)
    row = [_to_scalar(g(x), p, N) for x in range(count)]
    coeffs = []
    while row:
        coeffs.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return MahlerSeries(p, tuple(coeffs))


def evaluate(s: MahlerSeries, x: int) -> PadicScalar:
    """``sum a_n * binom(x, n)``."""
    total = PadicScalar.zero(s.p)
    for n, a in enumerate(s.coefficients):
        c = binom(x, n)
        if c:
            total = total + a * c
    return total


def c0_valuation(s: MahlerSeries):
    """Sup-norm valuation: ``min_n v_p(a_n)``."""
    return min((a.valuation for a in s.coefficients), default=INF)


@dataclass(frozen=True)
class CrValuation:
    """``inf_n (v_p(a_n) - r l(n))`` over the window plus a trailing-window minimum."""

    value: object
    trailing_min: object
    trailing_start: int
    sequence: tuple = field(repr=False, default=())


def cr_valuation(s: MahlerSeries, r, trailing_start: Optional[int] = None) -> CrValuation:
    r = Fraction(r)
    seq = tuple(a.valuation - r * branch_length(n, s.p) if not a.is_zero else INF
                for n, a in enumerate(s.coefficients))
    start = s.p if trailing_start is None else trailing_start
    return CrValuation(
        value=min(seq, default=INF),
        trailing_min=min(seq[start:], default=INF),
        trailing_start=start,
        sequence=seq,
    )


def forward_difference(s: MahlerSeries, k: int) -> MahlerSeries:
    """``k``-th forward difference: shifts the coefficients by ``k``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return MahlerSeries(s.p, s.coefficients[k:], s.r_hint)


@dataclass(frozen=True)
class WaveletSeries:
    """``g = sum b_i * 1_{i + p^{l(i)} Z_p}``."""

    p: int
    coefficients: tuple

    def evaluate(self, x: int) -> PadicScalar:
        total = PadicScalar.zero(self.p)
        for i, b in enumerate(self.coefficients):
            if (x - i) % self.p ** branch_length(i, self.p) == 0:
                total = total + b
        return total


def wavelet_decompose(g: FunctionOracle, M: int, p: int, N: Optional[int] = None) -> WaveletSeries:
    """Solve ``g(i) = sum_{j <= i, j = i mod p^{l(j)}} b_j`` for ``i < M``."""
    check_prime(p)
    b: list[PadicScalar] = []
    for i in range(M):
        acc = _to_scalar(g(i), p, N)
        for j in range(i):
            if (i - j) % p ** branch_length(j, p) == 0:
                acc = acc - b[j]
        b.append(acc)
    return WaveletSeries(p, tuple(b))


def indicator(center: int, h: int, p: int) -> FunctionOracle:
    """Oracle for ``1_{center + p^h Z_p}`` on integers."""
    mod = p**h
    return lambda x: 1 if (x - center) % mod == 0 else 0


@dataclass(frozen=True)
class LocallyPolynomialApprox:
    """Taylor jets of order ``t`` at each residue ``m < p^h``."""

    p: int
    h: int
    t: int
    jets: tuple  # jets[m] = (c_0, ..., c_t), coefficients of (z - m)^j

    def evaluate(self, z) -> EValue:
        z = Fraction(z)
        mod = self.p**self.h
        if z.denominator % self.p == 0:
            raise ValueError("point is not in Z_p")
        m = int(z.numerator * pow(z.denominator, -1, mod) % mod)
        total = EValue.zero(self.p)
        for j, c in enumerate(self.jets[m]):
            total = total + c * (z - m) ** j
        return total


DerivativeOracle = Callable[[int, int], Union[int, Fraction, PadicScalar, EValue]]


def local_poly_approx(deriv: DerivativeOracle, h: int, t: int, p: int) -> LocallyPolynomialApprox:
    """Jets ``sum_j g^(j)(m)/j! (z - m)^j`` on each ball ``m + p^h Z_p``.

    ``deriv(j, m)`` must return ``g^(j)(m)``.
    """
    if h < 0 or t < 0:
        raise ValueError("h and t must be non-negative")
    jets = []
    for m in range(p**h):
        jet = []
        for j in range(t + 1):
            v = deriv(j, m)
            if not isinstance(v, EValue):
                v = EValue.const(v, p)
            jet.append(v * Fraction(1, math.factorial(j)))
        jets.append(tuple(jet))
    return LocallyPolynomialApprox(p, h, t, tuple(jets))
