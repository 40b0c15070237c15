"""Mod-p descriptors, the Iwahori mod-p LLC dictionary and the reduction calculator.

The L-invariant is taken in ``Q(sqrt p)``: ``L = a + b sqrt(p)`` with rational
``a, b``. Half-integer values of the shifted valuation ``nu`` are needed for
the marked points when ``r`` is odd, and rational ``L`` alone never reaches
them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .padic_core import INF, check_prime, harmonic_sum, reduce_mod, v_plus_minus, vp

# the quadratic residue field


@lru_cache(maxsize=None)
def nonresidue(p: int) -> int:
    """Smallest quadratic non-residue mod ``p``."""
    for n in range(2, p):
        if pow(n, (p - 1) // 2, p) == p - 1:
            return n
    raise ValueError(f"no non-residue mod {p}")


@dataclass(frozen=True)
class Fp2:
    """``x + y theta`` in ``F_{p^2}`` with ``theta^2 = nonresidue(p)``."""

    p: int
    x: int
    y: int = 0

    def __post_init__(self):
        object.__setattr__(self, "x", self.x % self.p)
        object.__setattr__(self, "y", self.y % self.p)

    def _coerce(self, o) -> "Fp2":
        return o if isinstance(o, Fp2) else Fp2(self.p, int(o))

    def __add__(self, o) -> "Fp2":
        o = self._coerce(o)
        return Fp2(self.p, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self) -> "Fp2":
        return Fp2(self.p, -self.x, -self.y)

    def __sub__(self, o) -> "Fp2":
        return self + (-self._coerce(o))

    def __mul__(self, o) -> "Fp2":
        o = self._coerce(o)
        n = nonresidue(self.p)
        return Fp2(self.p, self.x * o.x + n * self.y * o.y, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def norm(self) -> int:
        return (self.x * self.x - nonresidue(self.p) * self.y * self.y) % self.p

    def inverse(self) -> "Fp2":
        nm = self.norm()
        if nm == 0:
            raise ZeroDivisionError("zero has no inverse")
        k = pow(nm, -1, self.p)
        return Fp2(self.p, self.x * k, -self.y * k)

    def __truediv__(self, o) -> "Fp2":
        return self * self._coerce(o).inverse()

    def __pow__(self, e: int) -> "Fp2":
        if e < 0:
            return self.inverse() ** (-e)
        out, base = Fp2(self.p, 1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    @property
    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    @property
    def in_fp(self) -> bool:
        return self.y == 0

    def to_json(self) -> list:
        return [self.x, self.y]


def sqrt_fp2(a: Fp2) -> Fp2:
    """A square root in ``F_{p^2}`` (every element of ``F_p`` has one)."""
    p = a.p
    if a.in_fp:
        for t in range(p):
            if t * t % p == a.x:
                return Fp2(p, t)
        n = nonresidue(p)
        q = a.x * pow(n, -1, p) % p
        for t in range(p):
            if t * t % p == q:
                return Fp2(p, 0, t)
    for x in range(p):
        for y in range(p):
            c = Fp2(p, x, y)
            if c * c == a:
                return c
    raise ValueError("no square root in F_p^2")


def solve_quadratic(c: Fp2) -> tuple:
    """Roots of ``t^2 - c t + 1``; the pair ``(t, 1/t)``."""
    disc = c * c - 4
    s = sqrt_fp2(disc)
    half = Fp2(c.p, pow(2, -1, c.p))
    return (c + s) * half, (c - s) * half


# descriptors


@dataclass(frozen=True)
class Irreducible:
    """``ind omega_2^c`` twisted by the unramified character ``mu_twist``."""

    p: int
    c: int
    twist: Fp2

    def __post_init__(self):
        if self.c % (self.p + 1) == 0:
            raise ValueError("(p+1) divides c: representation is reducible")

    def to_json(self) -> dict:
        return {"type": "irreducible", "omega2_exp": self.c, "twist": self.twist.to_json()}


@dataclass(frozen=True)
class Reducible:
    """``mu_lambda omega^a  (+)  mu_lambda' omega^b`` as ``((a, lambda), (b, lambda'))``."""

    p: int
    summands: tuple

    def to_json(self) -> dict:
        return {
            "type": "reducible",
            "summands": [{"omega_exp": a, "mu": lam.to_json()} for a, lam in self.summands],
        }


GaloisRepDescriptor = Union[Irreducible, Reducible]


@dataclass(frozen=True)
class SmoothRepDescriptor:
    """``pi(r, lambda, eta)`` with ``eta = omega^s mu_t``."""

    p: int
    r: int
    lam: Fp2
    eta_exp: int
    eta_unramified: Fp2
    semisimplified: bool = False

    def __post_init__(self):
        if not 0 <= self.r <= self.p - 1:
            raise ValueError("r must lie in [0, p-1]")
        object.__setattr__(self, "eta_exp", self.eta_exp % (self.p - 1))

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "lambda": self.lam.to_json(),
            "eta": {"omega_exp": self.eta_exp, "mu": self.eta_unramified.to_json()},
            "semisimplified": self.semisimplified,
        }


def bracket(a: int, p: int) -> int:
    """Representative of ``a mod (p-1)`` in ``{0, ..., p-2}``."""
    return a % (p - 1)


def normalize_irreducible(c: int, p: int) -> tuple:
    """``(r, s)`` with ``ind omega_2^c = ind omega_2^{r+1} (x) omega^s`` and ``r`` in ``[0, p-1]``."""
    if c % (p + 1) == 0:
        raise ValueError("(p+1) divides c")
    r = c % (p + 1) - 1
    s = ((c - r - 1) // (p + 1)) % (p - 1)
    return r, s


def iwahori_llc(g: GaloisRepDescriptor) -> list:
    """Blocks ``pi(r, lambda, eta)`` attached to a mod-p Galois descriptor."""
    p = g.p
    one = Fp2(p, 1)
    if isinstance(g, Irreducible):
        r, s = normalize_irreducible(g.c, p)
        return [SmoothRepDescriptor(p, r, Fp2(p, 0), s, g.twist)]
    (a, lam), (b, lam2) = g.summands
    prod = lam * lam2
    if prod.is_zero:
        raise ValueError("unramified parameters must be units")
    if not prod.in_fp:
        raise ValueError("product of unramified parameters must lie in F_p")
    t = one if prod == one else sqrt_fp2(prod)
    r = bracket(a - b - 1, p)
    lam0 = lam / t
    return [
        SmoothRepDescriptor(p, r, lam0, b, t, True),
        SmoothRepDescriptor(p, bracket(p - 3 - r, p), lam0.inverse(), b + r + 1, t, True),
    ]


def det_check(g: GaloisRepDescriptor, r: int) -> bool:
    """Determinant is ``omega^{r+1}`` on inertia with trivial unramified part."""
    p = g.p
    one = Fp2(p, 1)
    if isinstance(g, Irreducible):
        return (g.c - r - 1) % (p - 1) == 0 and g.twist == one
    (a, lam), (b, lam2) = g.summands
    return (a + b - r - 1) % (p - 1) == 0 and lam * lam2 == one


# the reduction calculator


@dataclass(frozen=True)
class ReductionInput:
    """``p``, weight ``k`` and ``L = L + L_sqrt * sqrt(p)``."""

    p: int
    k: int
    L: Fraction
    L_sqrt: Fraction = Fraction(0)

    def __post_init__(self):
        check_prime(self.p)
        if not 3 <= self.k <= self.p + 1:
            raise ValueError(f"k={self.k} outside [3, p+1]")
        object.__setattr__(self, "L", Fraction(self.L))
        object.__setattr__(self, "L_sqrt", Fraction(self.L_sqrt))

    @property
    def r(self) -> int:
        return self.k - 2

    @property
    def harmonic_shift(self) -> Fraction:
        vm, vp_ = v_plus_minus(self.r)
        return harmonic_sum(vm) + harmonic_sum(vp_)


def nu(inp: ReductionInput):
    """``v_p(L - H_- - H_+)``, a half-integer or ``INF``."""
    a = inp.L - inp.harmonic_shift
    return min(vp(a, inp.p), vp(inp.L_sqrt, inp.p) + Fraction(1, 2))


def locate(nu_value, r: int) -> tuple:
    """``("point", i)`` or ``("interval", i)`` on the marked line for weight ``r + 2``."""
    if r % 2:
        last = (r + 1) // 2
        if nu_value == INF or nu_value >= Fraction(1, 2):
            return "point", last
    else:
        if nu_value == INF or nu_value > 0:
            return "interval", (r + 2) // 2
    t = Fraction(nu_value) + Fraction(r, 2)
    if t.denominator == 1 and t >= 1:
        return "point", int(t)
    return "interval", max(1, math.floor(t) + 1)


def _scaled_unit(inp: ReductionInput, i: int) -> int:
    """``(L - H_- - H_+) / p^{i - r/2}`` modulo ``p``; zero when it has positive valuation."""
    p = inp.p
    e = Fraction(i) - Fraction(inp.r, 2)
    a = inp.L - inp.harmonic_shift
    b = inp.L_sqrt
    total = 0
    # a / p^e contributes only when e is an integer; b sqrt(p) / p^e only when e is half-odd
    if e.denominator == 1:
        if a != 0 and vp(a, p) <= e:
            if vp(a, p) < e:
                raise AssertionError("scaled value is not integral")
            total += reduce_mod(a / Fraction(p) ** int(e), p, 1)
        if b != 0 and vp(b, p) + Fraction(1, 2) <= e:
            raise AssertionError("scaled value is not integral")
    else:
        if b != 0 and vp(b, p) + Fraction(1, 2) <= e:
            if vp(b, p) + Fraction(1, 2) < e:
                raise AssertionError("scaled value is not integral")
            total += reduce_mod(b / Fraction(p) ** int(e - Fraction(1, 2)), p, 1)
        if a != 0 and vp(a, p) <= e:
            raise AssertionError("scaled value is not integral")
    return total % p


def lambda_constant(inp: ReductionInput, i: int) -> int:
    """Reduction of ``(-1)^i i C(r+1-i, i) (L - H_- - H_+) / p^{i - r/2}``."""
    r = inp.r
    return (-1) ** i * i * math.comb(r + 1 - i, i) * _scaled_unit(inp, i) % inp.p


@dataclass(frozen=True)
class ReductionResult:
    nu: object
    branch: str
    index: int
    descriptor: GaloisRepDescriptor
    lam: Optional[Fp2] = None
    quadratic_c: Optional[int] = None
    note: str = ""
    det_ok: bool = field(default=True)

    def to_json(self) -> dict:
        out = {
            "nu": None if self.nu == INF else str(self.nu),
            "nu_infinite": self.nu == INF,
            "branch": self.branch,
            "i": self.index,
            "descriptor": self.descriptor.to_json(),
            "det_check": self.det_ok,
        }
        if self.lam is not None:
            out["lambda"] = self.lam.to_json()
        if self.quadratic_c is not None:
            out["quadratic_c"] = self.quadratic_c
        if self.note:
            out["note"] = self.note
        return out


def reduce_detailed(inp: ReductionInput) -> ReductionResult:
    p, r = inp.p, inp.r
    n = nu(inp)
    branch, i = locate(n, r)
    if branch == "interval":
        desc = Irreducible(p, r + 1 + (i - 1) * (p - 1), Fp2(p, 1))
        return ReductionResult(n, branch, i, desc, det_ok=det_check(desc, r))
    note, c = "", None
    if r % 2 and i == (r + 1) // 2:
        c = lambda_constant(inp, i)
        lam, _ = solve_quadratic(Fp2(p, c))
        if c in (2 % p, (p - 2) % p):
            note = "repeated root: split holds up to semi-simplification"
    else:
        lam = Fp2(p, lambda_constant(inp, i))
        if lam.is_zero:
            raise AssertionError("point case produced a non-unit constant")
    desc = Reducible(p, ((r + 1 - i, lam), (i, lam.inverse())))
    return ReductionResult(n, branch, i, desc, lam, c, note, det_check(desc, r))


def reduce(inp: ReductionInput) -> GaloisRepDescriptor:
    """Semi-simplified mod-p reduction of ``V_{k, L}``."""
    return reduce_detailed(inp).descriptor


def input_for_nu(p: int, k: int, target, unit: int = 1) -> ReductionInput:
    """An input whose shifted valuation is ``target`` (a half-integer or ``INF``)."""
    base = ReductionInput(p, k, 0).harmonic_shift
    if target == INF:
        return ReductionInput(p, k, base)
    t = Fraction(target)
    if t.denominator == 1:
        return ReductionInput(p, k, base + unit * Fraction(p) ** int(t))
    if t.denominator != 2:
        raise ValueError("nu must be a half-integer")
    return ReductionInput(p, k, base, unit * Fraction(p) ** int(t - Fraction(1, 2)))


def marked_line(r: int) -> list:
    """The regions of the line in order: ``[("interval", 1), ("point", 1), ...]``."""
    out = []
    if r % 2:
        for i in range(1, (r + 1) // 2 + 1):
            out += [("interval", i), ("point", i)]
    else:
        for i in range(1, r // 2 + 1):
            out += [("interval", i), ("point", i)]
        out.append(("interval", r // 2 + 1))
    return out
