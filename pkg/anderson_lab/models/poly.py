"""Dense univariate polynomials over a finite ring, and the multiplicative sets."""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Tuple, Union

from anderson_lab.core.exceptions import RingMismatchError
from anderson_lab.models.ring import RingElem, RingSpec


class MultSetKind(str, Enum):
    """Multiplicative subsets of R[X] we localize at."""

    A = "A"                          # f(0) = 1
    A_SATURATED = "A_saturated"      # f(0) a unit
    N = "N"                          # c(f) = R
    U = "U"                          # monic
    U_TILDE = "U_tilde"              # lowest-degree coefficient 1

    @classmethod
    def parse(cls, text: str) -> "MultSetKind":
        for kind in cls:
            if kind.value.lower() == text.strip().lower():
                return kind
        raise ValueError(f"unknown multiplicative set {text!r}")


@dataclass(frozen=True)
class Poly:
    """
    Polynomial with coefficients ``coeffs[i]`` of X^i.

    Trailing zero coefficients are stripped on construction, so the zero
    polynomial has an empty coefficient tuple.
    """

    ring: RingSpec
    coeffs: Tuple[RingElem, ...] = ()

    def __post_init__(self):
        coeffs = list(self.coeffs)
        for c in coeffs:
            if c.ring != self.ring:
                raise RingMismatchError()
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    # constructors

    @classmethod
    def from_ints(cls, ring: RingSpec, values: Sequence[Union[int, Sequence[int]]]) -> "Poly":
        """Build from constant-term-first integers or coordinate tuples."""
        return cls(ring, tuple(ring.element(v) for v in values))

    @classmethod
    def constant(cls, c: RingElem) -> "Poly":
        return cls(c.ring, (c,))

    @classmethod
    def zero(cls, ring: RingSpec) -> "Poly":
        return cls(ring, ())

    @classmethod
    def one(cls, ring: RingSpec) -> "Poly":
        return cls(ring, (ring.one,))

    @classmethod
    def x(cls, ring: RingSpec) -> "Poly":
        return cls(ring, (ring.zero, ring.one))

    # inspection

    @property
    def degree(self) -> float:
        """Degree, with -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> RingElem:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero

    @property
    def constant_term(self) -> RingElem:
        return self.coeff(0)

    @property
    def leading_coefficient(self) -> RingElem:
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    @property
    def lowest_degree(self) -> int:
        """Index of the first nonzero coefficient (0 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero:
                return i
        return 0

    @property
    def lowest_coefficient(self) -> RingElem:
        return self.coeff(self.lowest_degree)

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.leading_coefficient.is_one

    @property
    def has_unit_content(self) -> bool:
        """c(f) = R, decided coordinatewise: the coefficients generate Z_n iff their gcd with n is 1."""
        if not self.coeffs:
            return False
        for i, n in enumerate(self.ring.moduli):
            g = n
            for c in self.coeffs:
                g = math.gcd(g, c.coords[i])
            if g != 1:
                return False
        return True

    def in_set(self, kind: MultSetKind) -> bool:
        """Exact membership in a multiplicative set; the zero polynomial is in none."""
        if self.is_zero:
            return False
        if kind is MultSetKind.A:
            return self.constant_term.is_one
        if kind is MultSetKind.A_SATURATED:
            return self.constant_term.is_unit()
        if kind is MultSetKind.N:
            return self.has_unit_content
        if kind is MultSetKind.U:
            return self.is_monic
        if kind is MultSetKind.U_TILDE:
            return self.lowest_coefficient.is_one
        raise ValueError(f"unknown kind {kind}")

    # arithmetic

    def _check(self, other: "Poly") -> None:
        if other.ring != self.ring:
            raise RingMismatchError()

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ring, tuple(self.coeff(i) + other.coeff(i) for i in range(size)))

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ring, tuple(self.coeff(i) - other.coeff(i) for i in range(size)))

    def __neg__(self) -> "Poly":
        return Poly(self.ring, tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if self.is_zero or other.is_zero:
            return Poly.zero(self.ring)
        result = [self.ring.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                result[i + j] = result[i + j] + a * b
        return Poly(self.ring, tuple(result))

    def scale(self, c: RingElem) -> "Poly":
        return Poly(self.ring, tuple(c * a for a in self.coeffs))

    def __pow__(self, exponent: int) -> "Poly":
        result = Poly.one(self.ring)
        for _ in range(exponent):
            result = result * self
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by X^k."""
        if self.is_zero:
            return self
        return Poly(self.ring, (self.ring.zero,) * k + self.coeffs)

    def drop_constant(self) -> "Poly":
        """(f - f(0)) / X."""
        return Poly(self.ring, self.coeffs[1:])

    def truncate(self, k: int) -> "Poly":
        """Image in R[X]/(X^k)."""
        return Poly(self.ring, self.coeffs[:k])

    def evaluate(self, x: RingElem) -> RingElem:
        """Horner evaluation at a ring element."""
        if x.ring != self.ring:
            raise RingMismatchError()
        result = self.ring.zero
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def __call__(self, x: RingElem) -> RingElem:
        return self.evaluate(x)

    def __str__(self) -> str:
        from anderson_lab.utils.parse_utils import format_poly
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self}@{self.ring})"
