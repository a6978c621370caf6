"""Polynomial content, multiplicative sets and bounded ideal membership in R[X]."""
import itertools
import random
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from anderson_lab.core.exceptions import CapExceededError, InvariantViolationError, RingMismatchError
from anderson_lab.core.logger import get_logger
from anderson_lab.models.poly import MultSetKind, Poly
from anderson_lab.models.ring import IdealOfR, RingElem, RingSpec
from anderson_lab.models.verdict import NotFoundUpTo, Witness
from anderson_lab.services.ring_service import RingService

logger = get_logger(__name__)


@dataclass(frozen=True)
class RegularityReport:
    """Outcome of the exhaustive s·h = 0 ⇒ h = 0 check."""

    ring: RingSpec
    kind: MultSetKind
    degree: int
    checked: int
    counterexample: Optional[Tuple[Poly, Poly]] = None

    @property
    def holds(self) -> bool:
        return self.counterexample is None

    def to_dict(self) -> dict:
        result = {
            "ring": self.ring.literal,
            "kind": self.kind.value,
            "degree": self.degree,
            "checked": self.checked,
            "holds": self.holds,
        }
        if self.counterexample is not None:
            s, h = self.counterexample
            result["counterexample"] = {"s": str(s), "h": str(h)}
        return result


class PolyService:
    """Linear-algebra backed decisions about polynomials over a finite ring."""

    def __init__(self, ring_service: RingService):
        self.ring_service = ring_service

    # enumeration helpers

    def all_polys(self, ring: RingSpec, max_degree: int) -> Iterator[Poly]:
        """Every polynomial of degree ≤ max_degree (zero included)."""
        elements = list(ring.elements())
        for coeffs in itertools.product(elements, repeat=max_degree + 1):
            yield Poly(ring, coeffs)

    def polys_in_set(self, ring: RingSpec, max_degree: int, kind: MultSetKind) -> Iterator[Poly]:
        return (p for p in self.all_polys(ring, max_degree) if self.in_multiplicative_set(p, kind))

    @staticmethod
    def random_poly(rng: random.Random, ring: RingSpec, max_degree: int) -> Poly:
        degree = rng.randint(0, max_degree)
        return Poly.from_ints(ring, [
            [rng.randrange(n) for n in ring.moduli] for _ in range(degree + 1)
        ])

    def random_in_a(self, rng: random.Random, ring: RingSpec, max_degree: int) -> Poly:
        """Random element of A: constant term 1."""
        if max_degree == 0:
            return Poly.one(ring)
        tail = self.random_poly(rng, ring, max_degree - 1)
        return Poly.one(ring) + tail.shift(1)

    # content and sets

    def content(self, p: Poly) -> IdealOfR:
        """c(p): the ideal generated by the coefficients."""
        return self.ring_service.ideal_from_generators(
            p.ring, [c for c in p.coeffs if not c.is_zero]
        )

    @staticmethod
    def in_multiplicative_set(p: Poly, kind: MultSetKind) -> bool:
        return p.in_set(kind)

    # linear systems

    def solve_span(self, target: Poly, columns: Sequence[Poly]) -> Optional[List[RingElem]]:
        """
        Scalars c_j with Σ c_j·columns_j = target, or None.

        Exact: the coefficient-matching system is solved by solve_linear.
        """
        ring = target.ring
        for col in columns:
            if col.ring != ring:
                raise RingMismatchError()
        if not columns:
            return [] if target.is_zero else None
        rows = max([len(target.coeffs)] + [len(col.coeffs) for col in columns])
        if rows == 0:
            return [ring.zero] * len(columns)
        matrix = [[col.coeff(t) for col in columns] for t in range(rows)]
        rhs = [target.coeff(t) for t in range(rows)]
        return self.ring_service.solve_linear(ring, matrix, rhs)

    @staticmethod
    def _split_cofactors(ring: RingSpec, solution: Sequence[RingElem], count: int,
                         width: int) -> Tuple[Poly, ...]:
        return tuple(
            Poly(ring, tuple(solution[i * width:(i + 1) * width])) for i in range(count)
        )

    def membership_bounded(self, target: Poly, gens: Sequence[Poly],
                           degree: int) -> Union[Witness, NotFoundUpTo]:
        """
        Decide whether target = Σ gens_i·g_i with every deg g_i ≤ degree.

        Args:
            target: Polynomial to express
            gens: Generators of the ideal of R[X]
            degree: Shared cofactor degree bound

        Returns:
            Witness on success, NotFoundUpTo(degree) otherwise (not a proof
            of non-membership)
        """
        gens = tuple(gens)
        columns = [g.shift(j) for g in gens for j in range(degree + 1)]
        solution = self.solve_span(target, columns)
        if solution is None:
            logger.debug("no cofactors of degree <= %d for %s in %s", degree, target,
                         [str(g) for g in gens])
            return NotFoundUpTo(degree)
        witness = Witness(target, gens, self._split_cofactors(target.ring, solution, len(gens), degree + 1))
        if not witness.check():
            raise InvariantViolationError(f"membership witness fails to recombine: {witness.identity()}")
        return witness

    def membership_with_denominator(self, target: Poly, gens: Sequence[Poly], den_degree: int,
                                    cofactor_degree: int) -> Union[Witness, NotFoundUpTo]:
        """
        Decide whether target·h = Σ gens_i·q_i for some h ∈ A with
        deg h ≤ den_degree and deg q_i ≤ cofactor_degree. This is membership
        of target/1 in the ideal of R[X]_A generated by gens, up to the bounds.
        """
        ring = target.ring
        gens = tuple(gens)
        width = cofactor_degree + 1
        columns = [g.shift(j) for g in gens for j in range(width)]
        columns += [-target.shift(j) for j in range(1, den_degree + 1)]
        solution = self.solve_span(target, columns)
        if solution is None:
            return NotFoundUpTo(max(den_degree, cofactor_degree))
        split = len(gens) * width
        cofactors = self._split_cofactors(ring, solution[:split], len(gens), width)
        denominator = Poly(ring, (ring.one,) + tuple(solution[split:]))
        witness = Witness(target, gens, cofactors, denominator)
        if not witness.check():
            raise InvariantViolationError(f"denominator witness fails to recombine: {witness.identity()}")
        return witness

    def truncated_membership(self, target: Poly, gens: Sequence[Poly],
                             k: int) -> Optional[Tuple[Poly, ...]]:
        """
        Exact membership of target in the image of (gens) in R[X]/(X^k).

        Elements of A are units modulo X^k, so a None here proves that
        target/1 is not in the ideal of R[X]_A generated by gens.

        Returns:
            Cofactors of degree < k, or None
        """
        gens = tuple(gens)
        columns = [g.shift(j).truncate(k) for g in gens for j in range(k)]
        solution = self.solve_span(target.truncate(k), columns)
        if solution is None:
            return None
        return self._split_cofactors(target.ring, solution, len(gens), k)

    # regularity

    def multiplication_matrix(self, s: Poly, degree: int) -> List[List[RingElem]]:
        """Matrix of h ↦ s·h on polynomials of degree ≤ degree."""
        ring = s.ring
        rows = max(len(s.coeffs), 1) + degree
        return [[s.coeff(t - j) if t >= j else ring.zero for j in range(degree + 1)]
                for t in range(rows)]

    def check_regularity(self, ring: RingSpec, degree: int,
                         kind: MultSetKind = MultSetKind.A_SATURATED) -> RegularityReport:
        """
        Exhaustively confirm that no s in the set (deg s ≤ degree) kills a
        nonzero h (deg h ≤ degree).

        Each s is decided exactly by the Smith-form kernel test on its
        multiplication matrix; a kernel vector, if any, is then located by
        enumeration.

        Raises:
            CapExceededError: When |R|^(degree+1) exceeds the cap
        """
        space = ring.cardinality ** (degree + 1)
        limit = self.ring_service.cap * 16
        if space > limit:
            raise CapExceededError(space, limit)

        checked = 0
        for s in self.polys_in_set(ring, degree, kind):
            checked += 1
            matrix = self.multiplication_matrix(s, degree)
            if not self.ring_service.has_nonzero_kernel(ring, matrix):
                continue
            for h in self.all_polys(ring, degree):
                if not h.is_zero and (s * h).is_zero:
                    logger.info("regularity fails for %s: %s * %s = 0", kind.value, s, h)
                    return RegularityReport(ring, kind, degree, checked, (s, h))
            raise InvariantViolationError(f"kernel test and enumeration disagree for {s}")
        logger.debug("regularity of %s over %s holds for %d elements", kind.value, ring, checked)
        return RegularityReport(ring, kind, degree, checked)
