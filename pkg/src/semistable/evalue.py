"""Values affine in a formal symbol ``L`` (the L-invariant)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .padic_core import INF, PadicScalar, as_scalar


class EllOverflowError(ArithmeticError):
    """A product would have degree two in ``L``."""


@dataclass(frozen=True, eq=False)
class EValue:
    """``constant_part + ell_part * L`` with PadicScalar coefficients."""

    constant_part: PadicScalar
    ell_part: PadicScalar

    @property
    def p(self) -> int:
        return self.constant_part.p

    @classmethod
    def const(cls, x, p: int) -> "EValue":
        return cls(as_scalar(x, p), PadicScalar.zero(p))

    @classmethod
    def ell(cls, x, p: int) -> "EValue":
        return cls(PadicScalar.zero(p), as_scalar(x, p))

    @classmethod
    def zero(cls, p: int) -> "EValue":
        return cls(PadicScalar.zero(p), PadicScalar.zero(p))

    @property
    def overflow_flag(self) -> bool:
        return False

    @property
    def is_zero(self) -> bool:
        return self.constant_part.is_zero and self.ell_part.is_zero

    def _coerce(self, other) -> "EValue":
        if isinstance(other, EValue):
            return other
        if isinstance(other, (int, Fraction, PadicScalar)):
            return EValue.const(other, self.p)
        return NotImplemented

    def __add__(self, other) -> "EValue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return EValue(self.constant_part + o.constant_part, self.ell_part + o.ell_part)

    __radd__ = __add__

    def __neg__(self) -> "EValue":
        return EValue(-self.constant_part, -self.ell_part)

    def __sub__(self, other) -> "EValue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "EValue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "EValue":
        if isinstance(other, (int, Fraction, PadicScalar)):
            s = as_scalar(other, self.p)
            return EValue(self.constant_part * s, self.ell_part * s)
        if not isinstance(other, EValue):
            return NotImplemented
        if not self.ell_part.is_zero and not other.ell_part.is_zero:
            raise EllOverflowError("product of two values carrying L")
        c = self.constant_part * other.constant_part
        e = self.constant_part * other.ell_part + self.ell_part * other.constant_part
        return EValue(c, e)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "EValue":
        if isinstance(other, (int, Fraction, PadicScalar)):
            inv = 1 / as_scalar(other, self.p)
            return self * inv
        return NotImplemented

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.constant_part == o.constant_part and self.ell_part == o.ell_part

    __hash__ = None  # type: ignore[assignment]

    def specialize(self, L) -> PadicScalar:
        """Substitute a value for ``L``."""
        return self.constant_part + self.ell_part * as_scalar(L, self.p)

    def valuation(self):
        """Minimum valuation over the two parts."""
        return min(self.constant_part.valuation, self.ell_part.valuation)

    def to_json(self) -> dict:
        return {"constant": self.constant_part.to_json(), "ell": self.ell_part.to_json()}

    def __repr__(self) -> str:
        return f"EValue({self.constant_part!r} + L*{self.ell_part!r})"


def margin(x: PadicScalar):
    """Valuation of ``x`` used as a congruence margin (lower bound for truncated zeros)."""
    return x.valuation_lower_bound()


def congruence_margin(a: EValue, b: EValue):
    """Smallest valuation among the constant and L parts of ``a - b``."""
    d = a - b
    return min(margin(d.constant_part), margin(d.ell_part))


def is_congruent_mod_pi(a: EValue, b: EValue) -> bool:
    """Both parts of ``a - b`` have positive valuation."""
    m = congruence_margin(a, b)
    return m == INF or m > 0
