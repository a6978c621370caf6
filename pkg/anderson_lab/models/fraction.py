"""Fractions f/g in a localization R[X]_S."""
from dataclasses import dataclass

from anderson_lab.core.exceptions import (
    InvalidDenominatorError, InvariantViolationError, KindMismatchError,
    RingMismatchError,
)
from anderson_lab.models.poly import MultSetKind, Poly
from anderson_lab.models.ring import RingElem, RingSpec


@dataclass(frozen=True, eq=False)
class LocElem:
    """
    A fraction num/den with den in the multiplicative set ``kind``.

    Equality is cross-multiplication: a/b == c/d iff a·d = c·b in R[X].
    Every supported set consists of regular elements, so no extra
    multiplier is needed. Fractions are not hashable.
    """

    ring: RingSpec
    kind: MultSetKind
    num: Poly
    den: Poly

    def __post_init__(self):
        if self.num.ring != self.ring or self.den.ring != self.ring:
            raise RingMismatchError()
        # R[X]_A = R[X]_Ā: a unit constant term is scaled to 1
        lead = self.den.constant_term
        if self.kind is MultSetKind.A and not self.den.is_zero and lead.is_unit() and not lead.is_one:
            scale = lead.inverse()
            object.__setattr__(self, "num", self.num.scale(scale))
            object.__setattr__(self, "den", self.den.scale(scale))
        if not self.den.in_set(self.kind):
            raise InvalidDenominatorError(
                f"denominator {self.den} is not in the multiplicative set {self.kind.value}"
            )

    @classmethod
    def of(cls, num: Poly, den: Poly = None, kind: MultSetKind = MultSetKind.A) -> "LocElem":
        ring = num.ring
        return cls(ring, kind, num, den if den is not None else Poly.one(ring))

    @classmethod
    def constant(cls, c: RingElem, kind: MultSetKind = MultSetKind.A) -> "LocElem":
        return cls.of(Poly.constant(c), kind=kind)

    @classmethod
    def one(cls, ring: RingSpec, kind: MultSetKind = MultSetKind.A) -> "LocElem":
        return cls.of(Poly.one(ring), kind=kind)

    @classmethod
    def zero(cls, ring: RingSpec, kind: MultSetKind = MultSetKind.A) -> "LocElem":
        return cls.of(Poly.zero(ring), kind=kind)

    def _check(self, other: "LocElem") -> None:
        if other.ring != self.ring:
            raise RingMismatchError()
        if other.kind is not self.kind:
            raise KindMismatchError(f"kind mismatch: {self.kind.value} vs {other.kind.value}")

    def _build(self, num: Poly, den: Poly) -> "LocElem":
        if not den.in_set(self.kind):
            raise InvariantViolationError(
                f"multiplicative set {self.kind.value} not closed: {den}"
            )
        return LocElem(self.ring, self.kind, num, den)

    def __add__(self, other: "LocElem") -> "LocElem":
        self._check(other)
        return self._build(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "LocElem") -> "LocElem":
        self._check(other)
        return self._build(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: "LocElem") -> "LocElem":
        self._check(other)
        return self._build(self.num * other.num, self.den * other.den)

    def __neg__(self) -> "LocElem":
        return LocElem(self.ring, self.kind, -self.num, self.den)

    def equals(self, other: "LocElem") -> bool:
        self._check(other)
        return self.num * other.den == other.num * self.den

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocElem):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def reinterpret(self, kind: MultSetKind) -> "LocElem":
        """Same fraction read in another localization (den must lie in that set)."""
        return LocElem(self.ring, kind, self.num, self.den)

    def __str__(self) -> str:
        from anderson_lab.utils.parse_utils import format_fraction
        return format_fraction(self.num, self.den)

    @property
    def literal(self) -> str:
        return f"{self}@{self.ring.literal}:{self.kind.value}"

    def __repr__(self) -> str:
        return f"LocElem({self.literal})"
