"""Fraction calculus of R[X]_A, R[X]_N, R[X]_U and R[X]_Ũ."""
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List

from anderson_lab.core.config import settings
from anderson_lab.core.exceptions import (
    InvariantViolationError, NotAUnitError, UnsupportedKindError,
)
from anderson_lab.core.logger import get_logger
from anderson_lab.models.fraction import LocElem
from anderson_lab.models.poly import MultSetKind, Poly
from anderson_lab.models.ring import RingSpec
from anderson_lab.models.verdict import Witness
from anderson_lab.services.poly_service import PolyService

logger = get_logger(__name__)


@dataclass
class CheckReport:
    """Counts and failures of a sampled or exhaustive cross-check."""

    name: str
    ring: RingSpec
    checked: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    facts: Dict[str, Any] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return not self.failures

    def fail(self, **detail) -> None:
        self.failures.append(detail)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.name,
            "ring": self.ring.literal,
            "checked": self.checked,
            "holds": self.holds,
            "failures": self.failures[:10],
            "facts": self.facts,
        }


class LocalizationService:
    """Arithmetic, equality and units in localizations of R[X]."""

    def __init__(self, poly_service: PolyService, config=None):
        self.poly_service = poly_service
        self.settings = config or settings

    # loc_ops

    @staticmethod
    def add(x: LocElem, y: LocElem) -> LocElem:
        return x + y

    @staticmethod
    def sub(x: LocElem, y: LocElem) -> LocElem:
        return x - y

    @staticmethod
    def mul(x: LocElem, y: LocElem) -> LocElem:
        return x * y

    @staticmethod
    def neg(x: LocElem) -> LocElem:
        return -x

    @staticmethod
    def loc_eq(x: LocElem, y: LocElem) -> bool:
        return x.equals(y)

    # units

    @staticmethod
    def is_unit_loc(x: LocElem) -> bool:
        """
        f/g is a unit of R[X]_A iff f(0) is a unit of R (A saturates to the
        polynomials with unit constant term).

        Raises:
            UnsupportedKindError: For kinds other than A
        """
        if x.kind is not MultSetKind.A:
            raise UnsupportedKindError()
        return x.num.constant_term.is_unit()

    def inverse_loc(self, x: LocElem) -> LocElem:
        """
        Inverse of a unit f/g: g·u⁻¹ / f·u⁻¹ with u = f(0), so the new
        denominator has constant term 1.

        Raises:
            NotAUnitError: If x is not a unit
        """
        if not self.is_unit_loc(x):
            raise NotAUnitError(f"not a unit: {x}")
        u_inv = x.num.constant_term.inverse()
        inverse = LocElem(x.ring, x.kind, x.den.scale(u_inv), x.num.scale(u_inv))
        if not (x * inverse).equals(LocElem.one(x.ring)):
            raise InvariantViolationError(f"inverse of {x} does not multiply to 1")
        return inverse

    def unit_by_search(self, x: LocElem, max_degree: int = 4) -> bool:
        """
        Unit test by search: ∃h ∈ A, q with f·q = h, degrees ≤ max_degree.

        Independent of is_unit_loc; used to cross-check it.
        """
        one = Poly.one(x.ring)
        for degree in range(max_degree + 1):
            found = self.poly_service.membership_with_denominator(one, [x.num], degree, degree)
            if isinstance(found, Witness):
                return True
        return False

    def check_unit_characterization(self, ring: RingSpec, degree: int = 2) -> CheckReport:
        """
        Exhaustively compare is_unit_loc with the search-based unit test on all
        numerators of degree ≤ degree (denominators do not affect units).
        """
        report = CheckReport("unit-characterization", ring, facts={"degree": degree})
        for f in self.poly_service.all_polys(ring, degree):
            x = LocElem.of(f)
            report.checked += 1
            exact = self.is_unit_loc(x)
            searched = self.unit_by_search(x, max(4, 2 * degree))
            if exact != searched:
                report.fail(fraction=str(x), exact=exact, search=searched)
        return report

    # congruence

    def _random_fraction(self, rng: random.Random, ring: RingSpec, degree: int) -> LocElem:
        return LocElem.of(
            self.poly_service.random_poly(rng, ring, degree),
            self.poly_service.random_in_a(rng, ring, degree),
        )

    def check_congruence(self, ring: RingSpec, degree: int = 3, samples: int = 100,
                         seed: int = None) -> CheckReport:
        """
        Sampled check that cross-multiplication equality respects + and ·.

        Equal pairs are produced by expanding a fraction by an element of A,
        so every sample exercises a nontrivial equality.
        """
        rng = random.Random(self.settings.seed if seed is None else seed)
        report = CheckReport("congruence", ring, facts={"degree": degree, "samples": samples})
        for _ in range(samples):
            a = self._random_fraction(rng, ring, degree)
            c = self._random_fraction(rng, ring, degree)
            s = self.poly_service.random_in_a(rng, ring, degree)
            t = self.poly_service.random_in_a(rng, ring, degree)
            b = LocElem.of(a.num * s, a.den * s)
            d = LocElem.of(c.num * t, c.den * t)
            report.checked += 1
            if not (a.equals(b) and c.equals(d)):
                report.fail(reason="expansion changed the fraction", a=str(a), b=str(b))
                continue
            if not (a + c).equals(b + d):
                report.fail(op="+", a=str(a), b=str(b), c=str(c), d=str(d))
            if not (a * c).equals(b * d):
                report.fail(op="*", a=str(a), b=str(b), c=str(c), d=str(d))
        return report

    # embeddings

    def canonical_embeddings(self, ring: RingSpec, degree: int = 1, samples: int = 50,
                             seed: int = None) -> CheckReport:
        """
        Verify the containments between the localizations on samples.

        - R[X]_A → R[X]_N (same fraction, N-kind) preserves + and · and is
          injective: N-equality is the same cross-multiplication.
        - Every f/g of kind Ũ with g = X^k·g', g' ∈ A, equals (f/g')·X^{-k}:
          that is, (R[X]_A)[1/X] = R[X]_Ũ on the sample.
        - Conversely f/(X^k·a) with a ∈ A always has its denominator in Ũ.
        """
        rng = random.Random(self.settings.seed if seed is None else seed)
        report = CheckReport("canonical-embeddings", ring, facts={"degree": degree, "samples": samples})
        x = Poly.x(ring)

        for _ in range(samples):
            a = self._random_fraction(rng, ring, degree)
            b = self._random_fraction(rng, ring, degree)
            report.checked += 1
            a_n, b_n = a.reinterpret(MultSetKind.N), b.reinterpret(MultSetKind.N)
            if not (a + b).reinterpret(MultSetKind.N).equals(a_n + b_n):
                report.fail(map="A->N", op="+", a=str(a), b=str(b))
            if not (a * b).reinterpret(MultSetKind.N).equals(a_n * b_n):
                report.fail(map="A->N", op="*", a=str(a), b=str(b))
            if a_n.equals(b_n) != a.equals(b):
                report.fail(map="A->N", op="injective", a=str(a), b=str(b))

            k = rng.randint(0, 2)
            g_prime = self.poly_service.random_in_a(rng, ring, degree)
            den = g_prime.shift(k)
            if not self.poly_service.in_multiplicative_set(den, MultSetKind.U_TILDE):
                report.fail(map="A[1/X]->U_tilde", denominator=str(den))
                continue
            u_elem = LocElem(ring, MultSetKind.U_TILDE, a.num, den)
            split = self.split_u_tilde(u_elem)
            if split is None:
                report.fail(map="U_tilde->A[1/X]", fraction=str(u_elem))
                continue
            a_part, power = split
            # (f/g')·X^{-k} compared inside Ũ, where X is invertible
            rebuilt = LocElem(ring, MultSetKind.U_TILDE, a_part.num, a_part.den * x ** power)
            if not rebuilt.equals(u_elem):
                report.fail(map="U_tilde->A[1/X]", fraction=str(u_elem))
        report.facts["a_subring_of_n"] = report.holds
        return report

    @staticmethod
    def split_u_tilde(x: LocElem):
        """
        Write f/g ∈ R[X]_Ũ as (f/g')·X^{-k} with f/g' ∈ R[X]_A.

        Returns:
            tuple: (A-kind fraction, k), or None if g is not of the form X^k·g'
        """
        k = x.den.lowest_degree
        g_prime = Poly(x.ring, x.den.coeffs[k:])
        if not g_prime.in_set(MultSetKind.A):
            return None
        return LocElem(x.ring, MultSetKind.A, x.num, g_prime), k
