"""Exact scalar fields: the rationals and prime fields of odd characteristic.

Elements are stored raw for speed: :class:`fractions.Fraction` over Q and
plain ``int`` residues in ``[0, p)`` over F_p.  :class:`Scalar` wraps a raw
value together with its field for callers that want checked arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

RawScalar = Union[Fraction, int]


class FieldError(ValueError):
    """Raised for invalid field descriptors or mixed-field arithmetic."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


@dataclass(frozen=True)
class Field:
    """Field descriptor.  ``kind`` is ``"Q"`` or ``"Fp"``."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise FieldError("the rational field takes no modulus")
        elif self.kind == "Fp":
            if not isinstance(self.p, int) or isinstance(self.p, bool):
                raise FieldError("prime field needs an integer modulus")
            if self.p == 2:
                raise FieldError("characteristic 2 is not supported (char(F) must differ from 2)")
            if not (2 < self.p < 2**31) or not _is_prime(self.p):
                raise FieldError(f"{self.p} is not an odd prime below 2^31")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    # construction -----------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.kind == "Fp"

    @property
    def zero(self) -> RawScalar:
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self) -> RawScalar:
        return Fraction(1) if self.kind == "Q" else 1

    def __call__(self, x) -> RawScalar:
        """Coerce an int, Fraction, Scalar or string into a raw element."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldError(f"scalar over {x.field} used in {self}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool):
            raise FieldError("booleans are not field elements")
        if self.kind == "Q":
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise FieldError(f"cannot coerce {x!r} to an exact rational")
        p = self.p
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise FieldError(f"{x} has a denominator divisible by {p}")
            return x.numerator * pow(den, -1, p) % p
        raise FieldError(f"cannot coerce {x!r} to F_{p}")

    def parse(self, text: str) -> RawScalar:
        """Parse ``"a"`` or ``"a/b"``; over F_p only integer residues are accepted."""
        m = _RATIONAL_RE.match(text)
        if not m:
            raise FieldError(f"malformed coefficient {text!r}")
        num, den = int(m.group(1)), m.group(2)
        if self.kind == "Q":
            if den is None:
                return Fraction(num)
            den = int(den)
            if den == 0:
                raise FieldError(f"zero denominator in {text!r}")
            return Fraction(num, den)
        if den is not None:
            raise FieldError(f"coefficient {text!r} over F_{self.p} must be an integer residue")
        return num % self.p

    def format(self, x: RawScalar) -> str:
        return str(x)

    # arithmetic helpers on raw values ---------------------------------

    def norm(self, x: RawScalar) -> RawScalar:
        return x if self.kind == "Q" else x % self.p

    def inv(self, x: RawScalar) -> RawScalar:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "Q":
            return 1 / x
        return pow(x, -1, self.p)

    def neg(self, x: RawScalar) -> RawScalar:
        return -x if self.kind == "Q" else (-x) % self.p

    def elements(self) -> Iterator[int]:
        if not self.is_finite:
            raise FieldError("the rationals cannot be enumerated")
        return iter(range(self.p))

    def is_square(self, x: RawScalar) -> bool:
        """Square test; over Q exact on numerator and denominator."""
        if self.kind == "Q":
            if x < 0:
                return False
            from math import isqrt

            n, d = x.numerator, x.denominator
            return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d
        x %= self.p
        return x == 0 or pow(x, (self.p - 1) // 2, self.p) == 1

    def to_json(self) -> dict:
        return {"kind": "Q"} if self.kind == "Q" else {"kind": "Fp", "p": self.p}

    def __str__(self):
        return "Q" if self.kind == "Q" else f"F_{self.p}"


QQ = Field("Q")


def GF(p: int) -> Field:
    return Field("Fp", p)


def field_from_spec(text: str) -> Field:
    """``"Q"``, ``"F5"``, ``"Fp5"`` or ``"F_5"`` into a descriptor."""
    t = text.strip()
    if t.upper() in ("Q", "QQ"):
        return QQ
    m = re.match(r"^F(?:p|_)?(\d+)$", t, re.IGNORECASE)
    if not m:
        raise FieldError(f"unknown field {text!r}; use Q or F<p>")
    return GF(int(m.group(1)))


@dataclass(frozen=True)
class Scalar:
    """A field element that remembers its field; mixing fields is an error."""

    value: RawScalar
    field: Field

    @classmethod
    def of(cls, field: Field, x) -> "Scalar":
        return cls(field(x), field)

    def _other(self, other) -> RawScalar:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldError(f"cannot combine scalars over {self.field} and {other.field}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field(other)
        return NotImplemented

    def _wrap(self, v) -> "Scalar":
        return Scalar(self.field.norm(v), self.field)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.value * self.field.inv(o))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)
