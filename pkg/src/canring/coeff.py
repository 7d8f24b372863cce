"""Coefficient fields: the rationals and prime fields F_p with p < 2^31."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PRIME = 32003


class FieldError(ValueError):
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


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field. ``modulus == 0`` means the rationals."""

    modulus: int = 0

    def __post_init__(self):
        if self.modulus:
            if self.modulus >= 2**31:
                raise FieldError(f"modulus {self.modulus} is not below 2^31")
            if not is_prime(self.modulus):
                raise FieldError(f"modulus {self.modulus} is not prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "FieldSpec":
        return cls(p)

    @property
    def is_prime_field(self) -> bool:
        return self.modulus != 0

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def __str__(self):
        return str(self.modulus) if self.modulus else "QQ"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        text = text.strip()
        if text == "QQ":
            return cls.rationals()
        try:
            return cls.prime(int(text))
        except ValueError:
            raise FieldError(f"field must be QQ or a prime, got {text!r}") from None

    # raw-value arithmetic; raw values are ints in [0, p) or Fractions
    def norm(self, v):
        if self.modulus:
            if isinstance(v, Fraction):
                return v.numerator * pow(v.denominator, -1, self.modulus) % self.modulus
            return int(v) % self.modulus
        if isinstance(v, Fraction):
            return v
        return Fraction(v)

    def add(self, a, b):
        return (a + b) % self.modulus if self.modulus else a + b

    def sub(self, a, b):
        return (a - b) % self.modulus if self.modulus else a - b

    def mul(self, a, b):
        return a * b % self.modulus if self.modulus else a * b

    def neg(self, a):
        return -a % self.modulus if self.modulus else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.modulus:
            return pow(a, -1, self.modulus)
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def signed(self, a):
        """Representative in (-p/2, p/2] for printing; identity over QQ."""
        if self.modulus and a > self.modulus // 2:
            return a - self.modulus
        return a

    def random_nonzero(self, rng: random.Random):
        if not self.modulus:
            raise FieldError("random elements need a prime field")
        return rng.randrange(1, self.modulus)

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.norm(value))


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: object

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("elements of different fields")
            return other.value
        return self.field.norm(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.norm(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"{self.value} in {self.field}"


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    ops = {"add": FieldElement.__add__, "sub": FieldElement.__sub__,
           "mul": FieldElement.__mul__, "div": FieldElement.__truediv__}
    ops.update({"+": ops["add"], "-": ops["sub"], "*": ops["mul"], "/": ops["div"]})
    if op not in ops:
        raise FieldError(f"unknown operation {op!r}")
    return ops[op](a, b)


def field_random(spec: FieldSpec, seed: int) -> FieldElement:
    return FieldElement(spec, spec.random_nonzero(random.Random(seed)))
