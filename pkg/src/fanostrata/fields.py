"""Exact coefficient fields: the rationals and prime fields F_p.

Elements are plain Python objects: ``Fraction`` for the rationals and ``int``
in ``range(p)`` for F_p.  A :class:`Field` knows how to bring an arbitrary
integer or fraction into canonical form and how to do the four operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]

RATIONALS = "exact-rationals"
PRIME = "prime-field"


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
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


@dataclass(frozen=True)
class Field:
    kind: str = RATIONALS
    p: int = 0

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.p != 0:
                raise FieldError("the rational field takes no modulus")
        elif self.kind == PRIME:
            if not is_prime(self.p):
                raise FieldError(f"{self.p} is not prime")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(RATIONALS, 0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(PRIME, p)

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_prime_field(self) -> bool:
        return self.kind == PRIME

    def __str__(self) -> str:
        return "QQ" if self.kind == RATIONALS else f"GF({self.p})"

    def __call__(self, x) -> Scalar:
        """Canonical representative of ``x`` (an int, Fraction or 'p/q' string)."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.kind == RATIONALS:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has no image in GF({self.p})")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.p else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.p else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.p if self.p else a * b

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.p else -a

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / Fraction(a)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def elements(self):
        """All elements of a prime field, in increasing order."""
        if not self.p:
            raise FieldError("the rationals cannot be enumerated")
        return range(self.p)

    def to_json(self, a: Scalar):
        """Exact JSON encoding: ints stay ints, non-integral rationals become 'p/q'."""
        if isinstance(a, Fraction):
            return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return int(a)

    def require_apolarity(self, max_degree: int) -> None:
        """Reject characteristics in which formal derivatives lose information."""
        if self.p and self.p <= max_degree:
            raise FieldError(
                f"apolarity over GF({self.p}) needs p > {max_degree} "
                "(formal derivatives of degree-p powers vanish)"
            )


QQ = Field.rationals()


def GF(p: int) -> Field:
    return Field.prime(p)
