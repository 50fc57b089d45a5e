"""Exact coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

DEFAULT_PRIME = 31991


class FieldError(ArithmeticError):
    pass


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


class Field:
    """A coefficient field. ``characteristic == 0`` means QQ.

    Raw coefficients are ``int`` in ``[0, p)`` for F_p and ``Fraction`` for QQ;
    the polynomial and Groebner code works on raw values for speed and wraps
    them in :class:`FieldElement` only at the public surface.
    """

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if characteristic and not is_prime(characteristic):
            raise FieldError(f"{characteristic} is not prime")
        self.characteristic = characteristic

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip().lower()
        if text in ("qq", "q", "rational", "rationals"):
            return QQ
        if text.startswith("fp:"):
            return cls(int(text[3:]))
        if text.startswith("gf(") and text.endswith(")"):
            return cls(int(text[3:-1]))
        raise FieldError(f"unknown field {text!r}")

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if not self.characteristic else f"GF({self.characteristic})"

    def tag(self) -> str:
        return "qq" if not self.characteristic else f"fp:{self.characteristic}"

    # raw arithmetic ------------------------------------------------------
    def convert(self, x):
        p = self.characteristic
        if p:
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise FieldError("denominator vanishes mod p")
                return x.numerator * pow(x.denominator, -1, p) % p
            return int(x) % p
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def add(self, a, b):
        p = self.characteristic
        return (a + b) % p if p else a + b

    def sub(self, a, b):
        p = self.characteristic
        return (a - b) % p if p else a - b

    def mul(self, a, b):
        p = self.characteristic
        return a * b % p if p else a * b

    def neg(self, a):
        p = self.characteristic
        return -a % p if p else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero in field")
        p = self.characteristic
        return pow(a, -1, p) if p else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_int_repr(self, a) -> str:
        """Symmetric representative for printing."""
        p = self.characteristic
        if p:
            return str(a - p if a > p // 2 else a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def signed(self, a):
        p = self.characteristic
        if p:
            return a - p if a > p // 2 else a
        return a

    def __call__(self, x) -> "FieldElement":
        return FieldElement(self, self.convert(x))


QQ = Field(0)


def GF(p: int = DEFAULT_PRIME) -> Field:
    return Field(p)


@total_ordering
class FieldElement:
    """An element of a :class:`Field` in canonical form."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = field.convert(value)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed fields {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.convert(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(o, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (FieldElement, int, Fraction)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.value == o

    def __lt__(self, other):
        # canonical-representative order, only so elements can be sorted
        return self.value < self._coerce(other)

    def __hash__(self):
        return hash((self.field.characteristic, self.value))

    def __repr__(self):
        return self.field.to_int_repr(self.value)
