# domain/linalg/field.py

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Union

logger = logging.getLogger(__name__)

MAX_PRIME = 2 ** 31


class FieldSpecError(ValueError):
    """
    Exception fonctionnelle : spécification de corps invalide
    (caractéristique non première, trop grande, type inconnu).
    """


class FieldKind(str, Enum):
    RATIONALS = "rationals"
    PRIME_FIELD = "prime-field"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeFieldElement:
    """Élément de GF(p), représenté par un entier réduit dans [0, p)."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int) -> None:
        self.value = value % modulus
        self.modulus = modulus

    def _other(self, other: Any) -> int:
        if isinstance(other, PrimeFieldElement):
            if other.modulus != self.modulus:
                raise FieldSpecError(
                    f"Éléments de corps différents: GF({self.modulus}) et GF({other.modulus})"
                )
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.modulus) % self.modulus
        raise TypeError(f"Opérande non supporté pour GF({self.modulus}): {other!r}")

    def __add__(self, other: Any) -> "PrimeFieldElement":
        return PrimeFieldElement(self.value + self._other(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "PrimeFieldElement":
        return PrimeFieldElement(self.value - self._other(other), self.modulus)

    def __rsub__(self, other: Any) -> "PrimeFieldElement":
        return PrimeFieldElement(self._other(other) - self.value, self.modulus)

    def __mul__(self, other: Any) -> "PrimeFieldElement":
        return PrimeFieldElement(self.value * self._other(other), self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "PrimeFieldElement":
        divisor = self._other(other)
        if divisor == 0:
            raise ZeroDivisionError(f"Division par zéro dans GF({self.modulus})")
        return PrimeFieldElement(self.value * pow(divisor, -1, self.modulus), self.modulus)

    def __rtruediv__(self, other: Any) -> "PrimeFieldElement":
        if self.value == 0:
            raise ZeroDivisionError(f"Division par zéro dans GF({self.modulus})")
        return PrimeFieldElement(self._other(other) * pow(self.value, -1, self.modulus), self.modulus)

    def __neg__(self) -> "PrimeFieldElement":
        return PrimeFieldElement(-self.value, self.modulus)

    def __pow__(self, exponent: int) -> "PrimeFieldElement":
        if exponent < 0:
            return PrimeFieldElement(pow(self.value, -1, self.modulus), self.modulus) ** (-exponent)
        return PrimeFieldElement(pow(self.value, exponent, self.modulus), self.modulus)

    def __eq__(self, other: object) -> bool:
        try:
            return self.value == self._other(other)
        except (TypeError, FieldSpecError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"GF{self.modulus}({self.value})"

    def __str__(self) -> str:
        return str(self.value)


Scalar = Union[Fraction, PrimeFieldElement]


@dataclass(frozen=True)
class FieldSpec:
    """
    Corps de base exact : Q (caractéristique 0) ou GF(p).

    Les éléments de Q sont des `Fraction` (précision arbitraire),
    ceux de GF(p) des `PrimeFieldElement`.
    """

    kind: FieldKind
    characteristic: int = 0

    def __post_init__(self) -> None:
        errors = []
        if self.kind == FieldKind.RATIONALS and self.characteristic != 0:
            errors.append("Q doit avoir une caractéristique nulle")
        if self.kind == FieldKind.PRIME_FIELD:
            if not _is_prime(self.characteristic):
                errors.append(f"caractéristique {self.characteristic} non première")
            elif self.characteristic >= MAX_PRIME:
                errors.append(f"caractéristique {self.characteristic} >= 2^31 non supportée")
        if errors:
            raise FieldSpecError(" / ".join(errors))

    # ------------------------------------------------------------------ #
    # Constructeurs
    # ------------------------------------------------------------------ #

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONALS, 0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(FieldKind.PRIME_FIELD, p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Interprète `Q` ou `GF(p)`."""
        cleaned = text.strip().replace(" ", "")
        if cleaned in ("Q", "QQ"):
            return cls.rationals()
        if cleaned.upper().startswith("GF(") and cleaned.endswith(")"):
            digits = cleaned[3:-1]
            if not digits.isdigit():
                raise FieldSpecError(f"caractéristique illisible: {text!r}")
            return cls.prime(int(digits))
        raise FieldSpecError(f"corps inconnu: {text!r} (attendu Q ou GF(p))")

    # ------------------------------------------------------------------ #
    # Éléments
    # ------------------------------------------------------------------ #

    @property
    def is_prime_field(self) -> bool:
        return self.kind == FieldKind.PRIME_FIELD

    @property
    def zero(self) -> Scalar:
        return self.element(0)

    @property
    def one(self) -> Scalar:
        return self.element(1)

    def element(self, value: Any) -> Scalar:
        if isinstance(value, PrimeFieldElement):
            if not self.is_prime_field or value.modulus != self.characteristic:
                raise FieldSpecError(f"{value!r} n'appartient pas à {self}")
            return value
        if self.is_prime_field:
            if isinstance(value, Fraction):
                den = value.denominator % self.characteristic
                if den == 0:
                    raise ZeroDivisionError(f"dénominateur nul dans {self}: {value}")
                return PrimeFieldElement(value.numerator * pow(den, -1, self.characteristic), self.characteristic)
            return PrimeFieldElement(int(value), self.characteristic)
        if isinstance(value, Fraction):
            return value
        return Fraction(value)

    def parse_scalar(self, text: str) -> Scalar:
        """Lit un coefficient `n` ou `n/d`."""
        cleaned = text.strip()
        try:
            return self.element(Fraction(cleaned))
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldSpecError(f"coefficient illisible dans {self}: {text!r}") from exc

    def format_scalar(self, value: Scalar) -> str:
        return str(value)

    def lift(self, value: Scalar) -> int:
        """Relevé entier canonique d'un élément de GF(p)."""
        if not self.is_prime_field:
            raise FieldSpecError("relevé entier défini seulement sur GF(p)")
        return int(value)

    def random_element(self, rng: random.Random, spread: int = 7) -> Scalar:
        if self.is_prime_field:
            return self.element(rng.randrange(self.characteristic))
        return self.element(rng.randint(-spread, spread))

    def small_values(self, count: int) -> list:
        """Premiers éléments non nuls 1, -1, 2, -2, ... sans doublon."""
        values: list = []
        k = 1
        while len(values) < count and k <= count + 1:
            for candidate in (self.element(k), self.element(-k)):
                if candidate and candidate not in values:
                    values.append(candidate)
            k += 1
            if self.is_prime_field and k > self.characteristic:
                break
        return values[:count]

    def __str__(self) -> str:
        return "Q" if self.kind == FieldKind.RATIONALS else f"GF({self.characteristic})"
