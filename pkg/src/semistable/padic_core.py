"""Exact rational and truncated p-adic arithmetic.

Valuations, Teichmüller lifts, factorial valuations, harmonic sums and
binomials, plus :class:`PadicScalar`, a value ``p^v * u`` where ``v`` is a
half-integer (so that ``sqrt(p)`` is available) and ``u`` is a p-adic unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

INF = math.inf
DEFAULT_PRECISION = 8

Rational = Union[int, Fraction]
Valuation = Union[Fraction, float]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Prime(int):
    """An odd prime ``p >= 5``; validated at construction."""

    def __new__(cls, p: int) -> "Prime":
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p < 5:
            raise ValueError(f"p must be at least 5, got {p}")
        return super().__new__(cls, p)


def check_prime(p: int) -> int:
    """Return ``p`` as an int after validating it is a prime ``>= 5``."""
    return int(Prime(p))


def _vp_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x: Rational, p: int) -> Valuation:
    """p-adic valuation of a rational; ``INF`` for zero."""
    x = Fraction(x)
    if x == 0:
        return INF
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


@lru_cache(maxsize=None)
def harmonic_sum(n: int) -> Fraction:
    """``H_n = 1 + 1/2 + ... + 1/n`` with ``H_0 = 0``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Fraction(0)
    return harmonic_sum(n - 1) + Fraction(1, n)


def v_plus_minus(r: int) -> tuple[int, int]:
    """Largest ``v_-`` and smallest ``v_+`` with ``v_- < r/2 < v_+``."""
    if r < 1:
        raise ValueError("r must be at least 1")
    if r % 2 == 0:
        return r // 2 - 1, r // 2 + 1
    return (r - 1) // 2, (r + 1) // 2


def teichmuller(a: int, p: int, N: int) -> int:
    """Teichmüller lift of ``a mod p`` to ``Z/p^N``; ``[0] = 0``."""
    mod = p**N
    x = a % p
    if x == 0:
        return 0
    while True:
        y = pow(x, p, mod)
        if y == x:
            return x
        x = y


def digit_sum(j: int, p: int) -> int:
    s = 0
    while j:
        j, d = divmod(j, p)
        s += d
    return s


def vp_factorial(j: int, p: int) -> int:
    """``v_p(j!)`` via the digit formula ``(j - s_p(j)) / (p - 1)``."""
    if j < 0:
        raise ValueError("j must be non-negative")
    return (j - digit_sum(j, p)) // (p - 1)


def legendre_count(j: int, p: int) -> int:
    """``v_p(j!)`` via Legendre's sum of ``floor(j / p^m)``."""
    total, q = 0, p
    while q <= j:
        total += j // q
        q *= p
    return total


def binom(n: int, k: int) -> int:
    """Binomial coefficient, polynomial in ``n`` (so valid for negative ``n``)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if 0 <= n:
        return math.comb(n, k)
    num = 1
    for i in range(k):
        num *= n - i
    return num // math.factorial(k)


def unit_part(x: Rational, p: int) -> Fraction:
    """``x / p^{v_p(x)}`` for nonzero ``x``."""
    x = Fraction(x)
    v = vp(x, p)
    return x / Fraction(p) ** v


def reduce_mod(x: Rational, p: int, e: int) -> int:
    """Image of a p-integral rational in ``Z/p^e``."""
    x = Fraction(x)
    mod = p**e
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, mod) % mod


def _half(v: Rational) -> Fraction:
    v = Fraction(v)
    if (2 * v).denominator != 1:
        raise ValueError(f"valuation {v} is not a half-integer")
    return v


@dataclass(frozen=True, eq=False)
class PadicScalar:
    """``p^valuation * unit`` in ``Q_p(sqrt p)``.

    Two modes share one type:

    * exact (``precision is None``): ``unit`` is a rational of valuation 0;
    * truncated: ``unit`` is an integer in ``[1, p^N)`` prime to ``p``,
      known modulo ``p^N`` where ``N = precision``.

    Zero has ``valuation = INF``; a truncated zero records the absolute
    precision ``zero_abs`` to which it is known to vanish.
    """

    p: int
    valuation: Valuation
    unit: Union[int, Fraction]
    precision: Union[int, None]
    zero_abs: Valuation = INF

    # construction

    @classmethod
    def exact(cls, x: Rational, p: int) -> "PadicScalar":
        x = Fraction(x)
        if x == 0:
            return cls(p, INF, 0, None)
        v = vp(x, p)
        return cls(p, Fraction(v), x / Fraction(p) ** v, None)

    @classmethod
    def from_rational(cls, x: Rational, p: int, N: Union[int, None] = DEFAULT_PRECISION) -> "PadicScalar":
        """Rational ``x`` truncated to relative precision ``N`` (exact if ``N`` is None)."""
        s = cls.exact(x, p)
        return s if N is None else s.truncate(N)

    @classmethod
    def from_rational_abs(cls, x: Rational, p: int, abs_prec: Rational) -> "PadicScalar":
        """Rational ``x`` known modulo ``p^abs_prec``."""
        s = cls.exact(x, p)
        return s.with_abs_precision(Fraction(abs_prec))

    @classmethod
    def zero(cls, p: int, abs_prec: Valuation = INF) -> "PadicScalar":
        if abs_prec == INF:
            return cls(p, INF, 0, None)
        return cls(p, INF, 0, 0, Fraction(abs_prec))

    @classmethod
    def p_power(cls, e: Rational, p: int) -> "PadicScalar":
        """Exact ``p^e`` for a half-integer ``e``."""
        return cls(p, _half(e), Fraction(1), None)

    # basic properties

    @property
    def is_zero(self) -> bool:
        return self.valuation == INF

    @property
    def is_exact(self) -> bool:
        return self.precision is None and self.zero_abs == INF

    @property
    def abs_precision(self) -> Valuation:
        """Exponent ``A`` such that the value is known modulo ``p^A``."""
        if self.is_zero:
            return self.zero_abs
        if self.precision is None:
            return INF
        return self.valuation + self.precision

    def valuation_lower_bound(self) -> Valuation:
        """Valuation, or for a truncated zero the exponent it is known to vanish to."""
        return self.zero_abs if self.is_zero else self.valuation

    def _unit_mod(self, N: int) -> int:
        u = self.unit
        if isinstance(u, Fraction):
            return reduce_mod(u, self.p, N)
        return u % self.p**N

    def truncate(self, N: int) -> "PadicScalar":
        """Reduce to relative precision at most ``N``."""
        if N < 1:
            raise ValueError("precision must be positive")
        if self.is_zero:
            return self
        n = N if self.precision is None else min(N, self.precision)
        return PadicScalar(self.p, self.valuation, self._unit_mod(n), n)

    def with_abs_precision(self, A: Valuation) -> "PadicScalar":
        """Forget everything below ``p^A``."""
        if A == INF:
            return self
        if self.is_zero:
            return PadicScalar.zero(self.p, min(A, self.zero_abs))
        if A <= self.valuation:
            return PadicScalar.zero(self.p, A)
        return self.truncate(max(1, math.floor(A - self.valuation)))

    # arithmetic

    def _coerce(self, other) -> "PadicScalar":
        if isinstance(other, PadicScalar):
            if other.p != self.p:
                raise ValueError("mismatched primes")
            return other
        if isinstance(other, (int, Fraction)):
            return PadicScalar.exact(other, self.p)
        return NotImplemented

    def __neg__(self) -> "PadicScalar":
        if self.is_zero:
            return self
        if self.precision is None:
            return PadicScalar(self.p, self.valuation, -self.unit, None)
        mod = self.p**self.precision
        return PadicScalar(self.p, self.valuation, (-self.unit) % mod, self.precision)

    def __mul__(self, other) -> "PadicScalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.p
        if self.is_zero or o.is_zero:
            if self.is_zero and o.is_zero:
                return PadicScalar.zero(p, self.zero_abs + o.zero_abs)
            z, nz = (self, o) if self.is_zero else (o, self)
            return PadicScalar.zero(p, z.zero_abs + nz.valuation)
        v = self.valuation + o.valuation
        if self.precision is None and o.precision is None:
            return PadicScalar(p, v, self.unit * o.unit, None)
        N = min(n for n in (self.precision, o.precision) if n is not None)
        return PadicScalar(p, v, self._unit_mod(N) * o._unit_mod(N) % p**N, N)

    __rmul__ = __mul__

    def inverse(self) -> "PadicScalar":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        if self.precision is None:
            return PadicScalar(self.p, -self.valuation, 1 / self.unit, None)
        mod = self.p**self.precision
        return PadicScalar(self.p, -self.valuation, pow(self.unit, -1, mod), self.precision)

    def __truediv__(self, other) -> "PadicScalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "PadicScalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> "PadicScalar":
        if e < 0:
            return self.inverse() ** (-e)
        result = PadicScalar.exact(1, self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __add__(self, other) -> "PadicScalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.p
        A = min(self.abs_precision, o.abs_precision)
        if self.is_zero:
            return o.with_abs_precision(A)
        if o.is_zero:
            return self.with_abs_precision(A)
        gap = self.valuation - o.valuation
        if gap.denominator != 1:
            raise ValueError("cannot add scalars whose valuations differ by a half-integer")
        m = min(self.valuation, o.valuation)
        s1 = int(self.valuation - m)
        s2 = int(o.valuation - m)
        if A == INF:
            s = self.unit * Fraction(p) ** s1 + o.unit * Fraction(p) ** s2
            if s == 0:
                return PadicScalar.zero(p)
            t = vp(s, p)
            return PadicScalar(p, m + t, s / Fraction(p) ** t, None)
        D = int(A - m)
        mod = p**D
        s = (self._unit_mod(D) * p**s1 + o._unit_mod(D) * p**s2) % mod
        if s == 0:
            return PadicScalar.zero(p, A)
        t = _vp_int(s, p)
        return PadicScalar(p, m + t, (s // p**t) % p ** (D - t), D - t)

    __radd__ = __add__

    def __sub__(self, other) -> "PadicScalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "PadicScalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_exact and o.is_exact:
            return self.valuation == o.valuation and (self.is_zero or self.unit == o.unit)
        if not self.is_zero and not o.is_zero:
            if (self.valuation - o.valuation).denominator != 1:
                return False
        elif self.is_zero != o.is_zero:
            nz = o if self.is_zero else self
            z = self if self.is_zero else o
            return nz.valuation >= z.zero_abs
        return (self - o).is_zero

    __hash__ = None  # type: ignore[assignment]

    # conversions

    def to_fraction(self) -> Fraction:
        """Rational representative; requires an integral valuation."""
        if self.is_zero:
            return Fraction(0)
        if self.valuation.denominator != 1:
            raise ValueError("value involves an odd power of sqrt(p)")
        return Fraction(self.p) ** int(self.valuation) * Fraction(self.unit)

    def residue(self) -> int:
        """Image in the residue field ``O_E / pi = F_p``."""
        if self.is_zero or self.valuation > 0:
            return 0
        if self.valuation < 0:
            raise ValueError("not integral")
        return self._unit_mod(1)

    def to_json(self) -> dict:
        val = None if self.is_zero else str(self.valuation)
        unit = str(self.unit)
        return {"valuation": val, "unit": unit, "precision": self.precision}

    def __repr__(self) -> str:
        if self.is_zero:
            tail = "" if self.zero_abs == INF else f" + O(p^{self.zero_abs})"
            return f"PadicScalar(0{tail}; p={self.p})"
        prec = "exact" if self.precision is None else f"N={self.precision}"
        return f"PadicScalar(p^{self.valuation} * {self.unit}; p={self.p}, {prec})"


def as_scalar(x, p: int) -> PadicScalar:
    """Coerce an int, Fraction or PadicScalar to a PadicScalar."""
    if isinstance(x, PadicScalar):
        return x
    return PadicScalar.exact(x, p)
