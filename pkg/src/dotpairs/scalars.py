"""Exact field arithmetic: rationals (via ``fractions.Fraction``) and prime fields."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class MixedFieldError(TypeError):
    """Raised when operands from two different fields meet."""


class ScalarParseError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


class PrimeFieldElement:
    """Canonical residue modulo a prime ``p``.

    Plain ints are accepted as operands and reduced; elements with a different
    modulus (or rationals) raise :class:`MixedFieldError`.
    """

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise MixedFieldError(f"F_{self.p} and F_{other.p} operands")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        raise MixedFieldError(f"cannot combine F_{self.p} element with {type(other).__name__}")

    def __add__(self, other):
        return PrimeFieldElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeFieldElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return PrimeFieldElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return PrimeFieldElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p)

    def inverse(self) -> "PrimeFieldElement":
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return PrimeFieldElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        b = PrimeFieldElement(self._coerce(other), self.p)
        return self * b.inverse()

    def __rtruediv__(self, other):
        return PrimeFieldElement(self._coerce(other), self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"PrimeFieldElement({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, PrimeFieldElement]

_INT_RE = re.compile(r"^[+-]?\d+$")
_RAT_RE = re.compile(r"^([+-]?\d+)(?:/([+-]?\d+))?$")


@dataclass(frozen=True)
class FieldSpec:
    """Which field a point set lives in: ``kind`` is ``"rational"`` or ``"prime"``."""

    kind: str = "rational"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                raise ValueError("rational field takes no modulus")
        elif self.kind == "prime":
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise ValueError(f"modulus {self.p!r} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    @property
    def characteristic(self) -> int:
        return 0 if self.is_rational else self.p

    @property
    def is_char2(self) -> bool:
        return self.characteristic == 2

    def element(self, value) -> Scalar:
        """Coerce an int (or, for rationals, a Fraction) into this field."""
        if self.is_rational:
            if isinstance(value, PrimeFieldElement):
                raise MixedFieldError("prime-field element given to rational field")
            return Fraction(value)
        if isinstance(value, PrimeFieldElement):
            if value.p != self.p:
                raise MixedFieldError(f"F_{value.p} element given to F_{self.p}")
            return value
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise MixedFieldError("non-integral rational given to prime field")
            value = value.numerator
        return PrimeFieldElement(int(value), self.p)

    def contains(self, x) -> bool:
        if self.is_rational:
            return isinstance(x, Fraction)
        return isinstance(x, PrimeFieldElement) and x.p == self.p

    @property
    def zero(self) -> Scalar:
        return self.element(0)

    @property
    def one(self) -> Scalar:
        return self.element(1)

    def parse(self, text: str) -> Scalar:
        return parse_scalar(text, self)

    def format(self, x: Scalar) -> str:
        return format_scalar(x)

    def to_json(self) -> dict:
        if self.is_rational:
            return {"kind": "rational"}
        return {"kind": "prime", "p": self.p}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        kind = obj.get("kind")
        if kind == "prime":
            return cls.prime(obj.get("p"))
        if kind == "rational":
            return cls.rational()
        raise ValueError(f"unknown field kind {kind!r}")

    def __str__(self):
        return "Q" if self.is_rational else f"F{self.p}"


def field_of(x) -> FieldSpec:
    if isinstance(x, PrimeFieldElement):
        return FieldSpec.prime(x.p)
    if isinstance(x, Fraction):
        return FieldSpec.rational()
    raise TypeError(f"not a scalar: {x!r}")


def parse_scalar(text: str, spec: FieldSpec) -> Scalar:
    """Parse ``"a"`` or ``"a/b"`` (rational) or ``"a"`` (prime) into a canonical scalar."""
    s = str(text).strip().replace("−", "-")
    if spec.is_rational:
        m = _RAT_RE.match(s)
        if not m:
            raise ScalarParseError(f"malformed rational {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ScalarParseError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    if not _INT_RE.match(s):
        raise ScalarParseError(f"malformed F_{spec.p} element {text!r}")
    return PrimeFieldElement(int(s), spec.p)


def format_scalar(x: Scalar) -> str:
    return str(x)


def _same_field(a, b) -> FieldSpec:
    fa, fb = field_of(a), field_of(b)
    if fa != fb:
        raise MixedFieldError(f"operands from {fa} and {fb}")
    return fa


def add(a: Scalar, b: Scalar) -> Scalar:
    _same_field(a, b)
    return a + b


def sub(a: Scalar, b: Scalar) -> Scalar:
    _same_field(a, b)
    return a - b


def mul(a: Scalar, b: Scalar) -> Scalar:
    _same_field(a, b)
    return a * b


def div(a: Scalar, b: Scalar) -> Scalar:
    _same_field(a, b)
    if b == 0:
        raise ZeroDivisionError("division by zero")
    return a / b


def neg(a: Scalar) -> Scalar:
    field_of(a)
    return -a


def eq(a: Scalar, b: Scalar) -> bool:
    _same_field(a, b)
    return a == b


def is_zero(a: Scalar) -> bool:
    field_of(a)
    return a == 0
