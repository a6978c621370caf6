"""Arithmetic, ideal theory, predicates and linear algebra over finite rings."""
import itertools
import threading
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import divisors, factorint

from anderson_lab.core.config import settings
from anderson_lab.core.exceptions import (
    CapExceededError, DimensionMismatchError, InvariantViolationError,
    RingMismatchError,
)
from anderson_lab.core.logger import get_logger
from anderson_lab.models.ring import IdealOfR, RingElem, RingSpec
from anderson_lab.utils.smith_utils import kernel_is_trivial_mod, solve_mod

logger = get_logger(__name__)


@lru_cache(maxsize=None)
def prime_powers(n: int) -> Tuple[Tuple[int, int], ...]:
    """(p, e) pairs of n, ascending in p."""
    return tuple(sorted((int(p), int(e)) for p, e in factorint(n).items()))


@dataclass(frozen=True)
class RingPredicates:
    """Structural predicates of a finite ring."""

    is_reduced: bool
    is_vnr: bool
    is_pir: bool
    is_local: bool
    is_field: bool
    all_primes_maximal: bool

    def to_dict(self) -> dict:
        return {
            "is_reduced": self.is_reduced,
            "is_vnr": self.is_vnr,
            "is_pir": self.is_pir,
            "is_local": self.is_local,
            "is_field": self.is_field,
            "all_primes_maximal": self.all_primes_maximal,
        }


@dataclass(frozen=True)
class LocalFactor:
    """
    A local factor Z_{p^e} of the ring, sitting in coordinate ``coordinate``.

    The factor is the localization of the ring at the maximal ideal
    {x : x_coordinate ≡ 0 (mod p)}.
    """

    spec: RingSpec
    coordinate: int
    prime: int
    exponent: int

    def project(self, x: RingElem) -> RingElem:
        """Surjective ring map onto the factor."""
        return RingElem(self.spec, (x.coords[self.coordinate] % self.spec.moduli[0],))

    def to_dict(self) -> dict:
        return {
            "ring": self.spec.literal,
            "coordinate": self.coordinate,
            "prime": self.prime,
            "exponent": self.exponent,
        }


class RingService:
    """Exact computations on rings Z_{n_1} x ... x Z_{n_k}."""

    def __init__(self, cap: Optional[int] = None):
        """
        Initialize with the ring-cardinality cap.

        Args:
            cap: Maximum cardinality for enumerative operations
                 (defaults to the configured ANDERSON_CAP)
        """
        self.cap = settings.ring_cap if cap is None else cap
        self._lattices: Dict[RingSpec, List[IdealOfR]] = {}
        self._lock = threading.Lock()

    # ring_ops

    def check_cap(self, ring: RingSpec) -> None:
        if ring.cardinality > self.cap:
            raise CapExceededError(ring.cardinality, self.cap)

    @staticmethod
    def _same_ring(ring: RingSpec, *elements: RingElem) -> None:
        for x in elements:
            if x.ring != ring:
                raise RingMismatchError()

    def add(self, ring: RingSpec, x: RingElem, y: RingElem) -> RingElem:
        self._same_ring(ring, x, y)
        return x + y

    def sub(self, ring: RingSpec, x: RingElem, y: RingElem) -> RingElem:
        self._same_ring(ring, x, y)
        return x - y

    def mul(self, ring: RingSpec, x: RingElem, y: RingElem) -> RingElem:
        self._same_ring(ring, x, y)
        return x * y

    def neg(self, ring: RingSpec, x: RingElem) -> RingElem:
        self._same_ring(ring, x)
        return -x

    @staticmethod
    def is_unit(x: RingElem) -> bool:
        return x.is_unit()

    @staticmethod
    def inverse(x: RingElem) -> RingElem:
        return x.inverse()

    # ideals

    def ideal_from_generators(self, ring: RingSpec, gens: Sequence[RingElem]) -> IdealOfR:
        """
        Smallest ideal containing ``gens``.

        The ideal is the additive subgroup spanned by g·e_i for the coordinate
        idempotents e_i, since those generate the ring additively. A worklist
        walks that subgroup from zero.

        Args:
            ring: Ambient ring
            gens: Generators (may be empty)

        Returns:
            IdealOfR: Ideal with its full element set
        """
        self._same_ring(ring, *gens)
        steps = {g * e for g in gens for e in ring.basis()}
        steps.discard(ring.zero)

        seen = {ring.zero}
        worklist = [ring.zero]
        while worklist:
            current = worklist.pop()
            for step in steps:
                nxt = current + step
                if nxt not in seen:
                    seen.add(nxt)
                    worklist.append(nxt)
        return IdealOfR(ring, gens, seen)

    def principal_ideal(self, x: RingElem) -> IdealOfR:
        return self.ideal_from_generators(x.ring, [x])

    def unit_ideal(self, ring: RingSpec) -> IdealOfR:
        return self.ideal_from_generators(ring, [ring.one])

    def zero_ideal(self, ring: RingSpec) -> IdealOfR:
        return self.ideal_from_generators(ring, [])

    def ideal_sum(self, first: IdealOfR, second: IdealOfR) -> IdealOfR:
        return self.ideal_from_generators(first.ring, first.generators + second.generators)

    def ideal_product(self, first: IdealOfR, second: IdealOfR) -> IdealOfR:
        gens = [a * b for a in first.generators for b in second.generators]
        return self.ideal_from_generators(first.ring, gens)

    def annihilator(self, ideal: IdealOfR) -> IdealOfR:
        """ann(I) = {r : r·I = 0}, by exhaustion."""
        ring = ideal.ring
        self.check_cap(ring)
        members = [r for r in ring.elements() if all((r * g).is_zero for g in ideal.generators)]
        return IdealOfR(ring, members, members)

    def generates(self, x: RingElem, ideal: IdealOfR) -> bool:
        """True iff x ∈ I and x·R = I."""
        if x not in ideal:
            return False
        return all(self.solve_linear(x.ring, [[x]], [g]) is not None for g in ideal.generators)

    def express_in_generators(self, x: RingElem, gens: Sequence[RingElem]) -> Optional[List[RingElem]]:
        """Coefficients r_i with x = Σ r_i·gens_i, or None when x ∉ (gens)."""
        if not gens:
            return [] if x.is_zero else None
        return self.solve_linear(x.ring, [list(gens)], [x])

    def min_generator_count(self, ideal: IdealOfR) -> int:
        """
        Least k such that some k elements of I generate I.

        Subsets are tried by size, each size starting from the ideal's own
        generators.

        Raises:
            CapExceededError: If a subset size has more than cap·16 candidates
        """
        if ideal.is_zero:
            return 0
        ring = ideal.ring
        pool = list(ideal.generators) + [e for e in ideal.elements
                                         if not e.is_zero and e not in ideal.generators]
        for k in range(1, len(pool) + 1):
            if k > 1 and comb(len(pool), k) > self.cap * 16:
                raise CapExceededError(comb(len(pool), k), self.cap * 16)
            for combo in itertools.combinations(pool, k):
                if self.ideal_from_generators(ring, combo) == ideal:
                    return k
        raise InvariantViolationError(f"no subset of {ideal} generates it")

    def ideal_lattice(self, ring: RingSpec) -> List[IdealOfR]:
        """
        All ideals of the ring, each with its minimal generator count.

        Ideals of a product of rings with identity are products of ideals of
        the factors, and the ideals of Z_n are dZ_n for d | n. Each product is
        realized by the single generator (d_1, ..., d_k) and closed by
        ideal_from_generators.

        Raises:
            CapExceededError: Above the configured cap
        """
        self.check_cap(ring)
        with self._lock:
            cached = self._lattices.get(ring)
        if cached is not None:
            return cached

        found: Dict[IdealOfR, IdealOfR] = {}
        for ds in itertools.product(*(divisors(n) for n in ring.moduli)):
            generator = ring.element([d % n for d, n in zip(ds, ring.moduli)])
            gens = [] if generator.is_zero else [generator]
            ideal = self.ideal_from_generators(ring, gens)
            if ideal not in found:
                found[ideal] = ideal.with_min_generators(self.min_generator_count(ideal))

        lattice = sorted(found.values(), key=lambda i: (len(i), i.elements))
        logger.debug("ideal lattice of %s has %d ideals", ring, len(lattice))
        with self._lock:
            self._lattices[ring] = lattice
        return lattice

    def find_ideal(self, ideal: IdealOfR) -> IdealOfR:
        """The lattice entry equal to ``ideal`` (carries min_generators)."""
        for candidate in self.ideal_lattice(ideal.ring):
            if candidate == ideal:
                return candidate
        raise InvariantViolationError(f"ideal {ideal} missing from the lattice of {ideal.ring}")

    def max_ideals(self, ring: RingSpec) -> List[IdealOfR]:
        proper = [i for i in self.ideal_lattice(ring) if i.is_proper]
        return [i for i in proper if not any(i < j for j in proper)]

    def _coset_index(self, ideal: IdealOfR) -> Dict[RingElem, int]:
        index: Dict[RingElem, int] = {}
        label = -1
        for x in ideal.ring.elements():
            if x in index:
                continue
            label += 1
            for p in ideal.elements:
                index[x + p] = label
        return index

    def is_prime(self, ideal: IdealOfR) -> bool:
        """P is prime iff R/P is an integral domain (checked on coset representatives)."""
        if not ideal.is_proper:
            return False
        index = self._coset_index(ideal)
        representatives: Dict[int, RingElem] = {}
        for x, label in index.items():
            representatives.setdefault(label, x)
        zero_label = index[ideal.ring.zero]
        nonzero = [x for label, x in sorted(representatives.items()) if label != zero_label]
        for a in nonzero:
            for b in nonzero:
                if index[a * b] == zero_label:
                    return False
        return True

    def primes(self, ring: RingSpec) -> List[IdealOfR]:
        return [i for i in self.ideal_lattice(ring) if self.is_prime(i)]

    def min_primes(self, ring: RingSpec) -> List[IdealOfR]:
        """
        Minimal primes. For finite rings every prime is maximal, which is
        asserted here.
        """
        primes = self.primes(ring)
        maximal = self.max_ideals(ring)
        if set(primes) != set(maximal):
            raise InvariantViolationError(f"a prime of {ring} is not maximal")
        return [p for p in primes if not any(q < p for q in primes)]

    # predicates

    def is_reduced(self, ring: RingSpec) -> bool:
        self.check_cap(ring)
        n = ring.cardinality
        return not any(not x.is_zero and (x ** n).is_zero for x in ring.elements())

    def is_vnr(self, ring: RingSpec) -> bool:
        """∀a ∃b: a²b = a, each b decided by solve_linear."""
        self.check_cap(ring)
        return all(self.solve_linear(ring, [[a * a]], [a]) is not None for a in ring.elements())

    def predicates(self, ring: RingSpec) -> RingPredicates:
        """
        Compute the structural predicates and cross-check
        is_vnr ⇔ (is_reduced ∧ every prime maximal) and is_field against
        primality of the single modulus.
        """
        lattice = self.ideal_lattice(ring)
        maximal = self.max_ideals(ring)
        primes = self.primes(ring)
        all_primes_maximal = set(primes) <= set(maximal)
        reduced = self.is_reduced(ring)
        vnr = self.is_vnr(ring)
        if vnr != (reduced and all_primes_maximal):
            raise InvariantViolationError(f"vnr characterization fails for {ring}")
        local = len(maximal) == 1
        field = local and maximal[0].is_zero
        if field != ring.is_prime_field:
            raise InvariantViolationError(f"field predicate disagrees with the modulus of {ring}")
        return RingPredicates(
            is_reduced=reduced,
            is_vnr=vnr,
            is_pir=all((i.min_generators or 0) <= 1 for i in lattice),
            is_local=local,
            is_field=field,
            all_primes_maximal=all_primes_maximal,
        )

    # local structure

    def local_factors(self, ring: RingSpec) -> List[LocalFactor]:
        """CRT decomposition of the ring into local rings Z_{p^e}."""
        self.check_cap(ring)
        factors = []
        for coordinate, n in enumerate(ring.moduli):
            for prime, exponent in prime_powers(n):
                factors.append(LocalFactor(
                    spec=RingSpec((prime ** exponent,)),
                    coordinate=coordinate,
                    prime=prime,
                    exponent=exponent,
                ))
        return factors

    @staticmethod
    def maximal_ideal_generator(ring: RingSpec, factor: LocalFactor) -> RingElem:
        """Generator of the maximal ideal whose localization is ``factor``."""
        coords = [1] * ring.width
        coords[factor.coordinate] = factor.prime
        return ring.element(coords)

    def local_factor_for(self, ideal: IdealOfR) -> LocalFactor:
        """
        The local factor at a maximal ideal M: the one whose projection of M
        is proper.

        Raises:
            InvariantViolationError: If M projects properly onto no factor
        """
        for factor in self.local_factors(ideal.ring):
            if ideal <= self.principal_ideal(self.maximal_ideal_generator(ideal.ring, factor)):
                return factor
        raise InvariantViolationError(f"{ideal} is not contained in a maximal ideal of {ideal.ring}")

    def nonzero_divisors_are_units(self, ring: RingSpec) -> bool:
        """Every regular element of a finite ring is a unit."""
        self.check_cap(ring)
        return all(x.is_unit() for x in ring.elements() if self.is_regular(x))

    def is_regular(self, x: RingElem) -> bool:
        return not self.has_nonzero_kernel(x.ring, [[x]])

    # linear algebra

    def _per_coordinate(self, ring: RingSpec, matrix: Sequence[Sequence[RingElem]],
                        coordinate: int) -> List[List[int]]:
        return [[a.coords[coordinate] for a in row] for row in matrix]

    def solve_linear(self, ring: RingSpec, matrix: Sequence[Sequence[RingElem]],
                     rhs: Sequence[RingElem]) -> Optional[List[RingElem]]:
        """
        Solve matrix·x = rhs over the ring.

        Each coordinate ring Z_{n_i} is solved exactly by Smith normal form;
        the coordinate solutions are recombined.

        Args:
            ring: Coefficient ring
            matrix: m rows of k ring elements
            rhs: m ring elements

        Returns:
            list: k ring elements x with matrix·x = rhs, or None if none exists

        Raises:
            DimensionMismatchError: Ragged matrix or wrong rhs length
        """
        if len(matrix) != len(rhs):
            raise DimensionMismatchError(
                f"dimension mismatch: {len(matrix)} rows, {len(rhs)} right-hand sides"
            )
        width = len(matrix[0]) if matrix else 0
        if any(len(row) != width for row in matrix):
            raise DimensionMismatchError("dimension mismatch: ragged matrix")
        for row in matrix:
            self._same_ring(ring, *row)
        self._same_ring(ring, *rhs)

        per_coordinate = []
        for coordinate, modulus in enumerate(ring.moduli):
            solution = solve_mod(
                self._per_coordinate(ring, matrix, coordinate),
                [b.coords[coordinate] for b in rhs],
                modulus,
            )
            if solution is None:
                return None
            per_coordinate.append(solution)

        if not matrix:
            return []
        return [
            RingElem(ring, tuple(per_coordinate[c][j] for c in range(ring.width)))
            for j in range(width)
        ]

    def has_nonzero_kernel(self, ring: RingSpec, matrix: Sequence[Sequence[RingElem]]) -> bool:
        """True iff some nonzero x satisfies matrix·x = 0."""
        return not all(
            kernel_is_trivial_mod(self._per_coordinate(ring, matrix, coordinate), modulus)
            for coordinate, modulus in enumerate(ring.moduli)
        )

    @staticmethod
    def matrix_apply(matrix: Sequence[Sequence[RingElem]], vector: Sequence[RingElem],
                     zero: RingElem) -> List[RingElem]:
        result = []
        for row in matrix:
            total = zero
            for a, x in zip(row, vector):
                total = total + a * x
            result.append(total)
        return result

    def brute_force_solve(self, ring: RingSpec, matrix: Sequence[Sequence[RingElem]],
                          rhs: Sequence[RingElem]) -> Optional[List[RingElem]]:
        """Exhaustive oracle for solve_linear (tiny systems only)."""
        width = len(matrix[0]) if matrix else 0
        space = ring.cardinality ** width
        if space > self.cap * 64:
            raise CapExceededError(space, self.cap * 64)
        for candidate in itertools.product(list(ring.elements()), repeat=width):
            if self.matrix_apply(matrix, candidate, ring.zero) == list(rhs):
                return list(candidate)
        return None

