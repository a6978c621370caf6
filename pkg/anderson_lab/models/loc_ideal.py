"""Ideals of R[X]_A, tagged by the shape that selects the membership regime."""
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from anderson_lab.models.poly import MultSetKind, Poly
from anderson_lab.models.ring import IdealOfR, RingSpec


class LocIdealShape(str, Enum):
    EXTENSION = "ExtensionOfR"   # I·R[X]_A, exact rule c(f) ⊆ I
    I_PLUS_X = "IPlusX"          # (I + X·R[X])_A, exact rule f(0) ∈ I
    GENERAL = "General"          # finite polynomial list, bounded search


@dataclass(frozen=True)
class LocIdeal:
    ring: RingSpec
    shape: LocIdealShape
    base: Optional[IdealOfR] = None
    polys: Tuple[Poly, ...] = ()
    kind: MultSetKind = MultSetKind.A

    @classmethod
    def extension(cls, ideal: IdealOfR) -> "LocIdeal":
        return cls(ideal.ring, LocIdealShape.EXTENSION, base=ideal)

    @classmethod
    def i_plus_x(cls, ideal: IdealOfR) -> "LocIdeal":
        return cls(ideal.ring, LocIdealShape.I_PLUS_X, base=ideal)

    @classmethod
    def general(cls, ring: RingSpec, polys) -> "LocIdeal":
        return cls(ring, LocIdealShape.GENERAL, polys=tuple(polys))

    @property
    def is_exact(self) -> bool:
        return self.shape is not LocIdealShape.GENERAL

    @property
    def generators(self) -> Tuple[Poly, ...]:
        """Polynomial generators of the ideal (as fractions over 1)."""
        if self.shape is LocIdealShape.GENERAL:
            return self.polys
        gens = tuple(Poly.constant(g) for g in self.base.generators)
        if self.shape is LocIdealShape.I_PLUS_X:
            gens = gens + (Poly.x(self.ring),)
        return gens

    def __str__(self) -> str:
        if self.shape is LocIdealShape.GENERAL:
            return "[" + "; ".join(str(p) for p in self.polys) + "]"
        text = "(" + ",".join(str(g) for g in self.base.generators) + ")"
        return text + "+X" if self.shape is LocIdealShape.I_PLUS_X else text

    def to_dict(self) -> Dict[str, Any]:
        return {
            "shape": self.shape.value,
            "spec": str(self),
            "generators": [str(g) for g in self.generators],
        }
