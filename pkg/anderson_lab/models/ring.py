"""Finite commutative rings Z_{n_1} x ... x Z_{n_k}, their elements and ideals."""
import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import FrozenSet, Iterator, Optional, Sequence, Tuple, Union

from sympy import isprime, mod_inverse

from anderson_lab.core.exceptions import NotAUnitError, RingMismatchError


@dataclass(frozen=True, order=True)
class RingSpec:
    """Direct product of the rings Z_{n_i}."""

    moduli: Tuple[int, ...]

    def __post_init__(self):
        moduli = tuple(int(n) for n in self.moduli)
        if not moduli:
            raise ValueError("a ring needs at least one modulus")
        if any(n < 2 for n in moduli):
            raise ValueError(f"every modulus must be >= 2, got {moduli}")
        object.__setattr__(self, "moduli", moduli)

    @property
    def cardinality(self) -> int:
        result = 1
        for n in self.moduli:
            result *= n
        return result

    @property
    def width(self) -> int:
        return len(self.moduli)

    @property
    def literal(self) -> str:
        """CLI literal such as ``Z4xZ9``."""
        return "x".join(f"Z{n}" for n in self.moduli)

    @property
    def is_prime_field(self) -> bool:
        return self.width == 1 and isprime(self.moduli[0])

    @property
    def zero(self) -> "RingElem":
        return RingElem(self, (0,) * self.width)

    @property
    def one(self) -> "RingElem":
        return RingElem(self, (1,) * self.width)

    def element(self, value: Union[int, Sequence[int]]) -> "RingElem":
        """
        Build an element from an integer (reduced into every coordinate)
        or from a coordinate sequence.
        """
        if isinstance(value, int):
            coords = tuple(value % n for n in self.moduli)
        else:
            coords = tuple(value)
            if len(coords) != self.width:
                raise RingMismatchError(
                    f"ring mismatch: {len(coords)} coordinates for {self.literal}"
                )
            coords = tuple(int(c) % n for c, n in zip(coords, self.moduli))
        return RingElem(self, coords)

    def elements(self) -> Iterator["RingElem"]:
        """All elements, in lexicographic coordinate order."""
        for coords in itertools.product(*(range(n) for n in self.moduli)):
            yield RingElem(self, coords)

    def basis(self) -> Tuple["RingElem", ...]:
        """Coordinate idempotents e_i; they generate the ring additively."""
        result = []
        for i in range(self.width):
            coords = [0] * self.width
            coords[i] = 1
            result.append(RingElem(self, tuple(coords)))
        return tuple(result)

    def __str__(self) -> str:
        return self.literal


@dataclass(frozen=True, order=True)
class RingElem:
    """Element of a RingSpec as a vector of reduced residues."""

    ring: RingSpec = field(compare=False)
    coords: Tuple[int, ...]

    def _check(self, other: "RingElem") -> None:
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatchError()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.coords == other.coords and self.ring == other.ring

    def __hash__(self) -> int:
        return hash(self.coords)

    def __add__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        return RingElem(self.ring, tuple(
            (a + b) % n for a, b, n in zip(self.coords, other.coords, self.ring.moduli)
        ))

    def __sub__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        return RingElem(self.ring, tuple(
            (a - b) % n for a, b, n in zip(self.coords, other.coords, self.ring.moduli)
        ))

    def __mul__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        return RingElem(self.ring, tuple(
            (a * b) % n for a, b, n in zip(self.coords, other.coords, self.ring.moduli)
        ))

    def __neg__(self) -> "RingElem":
        return RingElem(self.ring, tuple((-a) % n for a, n in zip(self.coords, self.ring.moduli)))

    def __pow__(self, exponent: int) -> "RingElem":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return RingElem(self.ring, tuple(
            pow(a, exponent, n) for a, n in zip(self.coords, self.ring.moduli)
        ))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def is_one(self) -> bool:
        return all(c == 1 for c in self.coords)

    def is_unit(self) -> bool:
        """True iff every coordinate is coprime to its modulus."""
        return all(gcd(a, n) == 1 for a, n in zip(self.coords, self.ring.moduli))

    def inverse(self) -> "RingElem":
        """
        Multiplicative inverse.

        Raises:
            NotAUnitError: If the element is a zero divisor
        """
        if not self.is_unit():
            raise NotAUnitError(f"not a unit: {self} in {self.ring}")
        return RingElem(self.ring, tuple(
            int(mod_inverse(a, n)) % n for a, n in zip(self.coords, self.ring.moduli)
        ))

    def __str__(self) -> str:
        if self.ring.width == 1:
            return str(self.coords[0])
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def __repr__(self) -> str:
        return f"RingElem({self}@{self.ring})"


class IdealOfR:
    """
    Ideal of a finite ring, stored as generators plus its full element set.

    Equality and hashing use the element set only.
    """

    __slots__ = ("ring", "generators", "elements", "min_generators", "_members")

    def __init__(self, ring: RingSpec, generators: Sequence[RingElem],
                 elements: Sequence[RingElem], min_generators: Optional[int] = None):
        self.ring = ring
        self.generators = tuple(generators)
        self.elements = tuple(sorted(set(elements)))
        self.min_generators = min_generators
        self._members: FrozenSet[Tuple[int, ...]] = frozenset(e.coords for e in self.elements)

    def __contains__(self, x: RingElem) -> bool:
        if x.ring != self.ring:
            raise RingMismatchError()
        return x.coords in self._members

    def __le__(self, other: "IdealOfR") -> bool:
        return self._members <= other._members

    def __lt__(self, other: "IdealOfR") -> bool:
        return self._members < other._members

    def __eq__(self, other) -> bool:
        if not isinstance(other, IdealOfR):
            return NotImplemented
        return self.ring == other.ring and self._members == other._members

    def __hash__(self) -> int:
        return hash(self._members)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def is_zero(self) -> bool:
        return len(self.elements) == 1

    @property
    def is_unit_ideal(self) -> bool:
        return len(self.elements) == self.ring.cardinality

    @property
    def is_proper(self) -> bool:
        return not self.is_unit_ideal

    def with_min_generators(self, count: int) -> "IdealOfR":
        return IdealOfR(self.ring, self.generators, self.elements, count)

    def __str__(self) -> str:
        return "(" + ",".join(str(g) for g in self.generators) + ")"

    def __repr__(self) -> str:
        return f"IdealOfR({self}@{self.ring}, size={len(self)})"
