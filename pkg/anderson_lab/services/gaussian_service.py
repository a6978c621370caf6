"""Sampling search for violations of c(FG) = c(F)c(G) over R[X]_A."""
import random
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from anderson_lab.core.config import settings
from anderson_lab.core.exceptions import InvariantViolationError
from anderson_lab.core.logger import get_logger
from anderson_lab.models.fraction import LocElem
from anderson_lab.models.poly import Poly
from anderson_lab.models.ring import RingSpec
from anderson_lab.models.verdict import Claim, Status, TheoremVerdict, Witness
from anderson_lab.services.poly_service import PolyService
from anderson_lab.services.ring_service import RingService

logger = get_logger(__name__)

# a polynomial in Y over R[X]_A, constant coefficient first
OuterPoly = Tuple[LocElem, ...]

MAX_TRUNCATION = 4
MAX_RETRY_DEGREE = 4


@dataclass(frozen=True)
class GaussianViolation:
    """p ∈ c(F)c(G) with p ∉ c(FG), shown modulo X^k."""

    f: OuterPoly
    g: OuterPoly
    element: Poly
    content_generators: Tuple[Poly, ...]
    truncation: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "F": render_outer(self.f),
            "G": render_outer(self.g),
            "element_of_product_content": str(self.element),
            "content_of_product": [str(p) for p in self.content_generators],
            "refuted_modulo": f"X^{self.truncation}",
        }


def render_outer(poly: OuterPoly) -> str:
    terms = []
    for i, c in enumerate(poly):
        if c.is_zero:
            continue
        monomial = "" if i == 0 else ("Y" if i == 1 else f"Y^{i}")
        terms.append(f"[{c}]{monomial}")
    return " + ".join(terms) if terms else "0"


class GaussianService:
    """Content ideals of polynomials over R[X]_A and the Gaussian property."""

    def __init__(self, ring_service: RingService, poly_service: PolyService, config=None):
        self.ring_service = ring_service
        self.poly_service = poly_service
        self.settings = config or settings

    @staticmethod
    def outer_product(f: OuterPoly, g: OuterPoly) -> OuterPoly:
        ring = f[0].ring
        result = [LocElem.zero(ring) for _ in range(len(f) + len(g) - 1)]
        for i, a in enumerate(f):
            for j, b in enumerate(g):
                result[i + j] = result[i + j] + a * b
        return tuple(result)

    @staticmethod
    def content_generators(f: OuterPoly) -> Tuple[Poly, ...]:
        """Numerators generate c(F): denominators are units of R[X]_A."""
        return tuple(c.num for c in f if not c.is_zero)

    def product_content_witnesses(self, f: OuterPoly, g: OuterPoly,
                                  product: OuterPoly) -> List[Witness]:
        """
        c(FG) ⊆ c(F)c(G), certified by construction: the k-th coefficient of
        FG is Σ f_i g_j / (a_i b_j), so its numerator over D = Π a_i b_j is
        Σ f_i g_j · D/(a_i b_j).
        """
        ring = f[0].ring
        pairs = [(i, j) for i in range(len(f)) for j in range(len(g))]
        gens = tuple(f[i].num * g[j].num for i, j in pairs)
        witnesses = []
        for k in range(len(product)):
            terms = [(i, j) for i, j in pairs if i + j == k]
            dens = [f[i].den * g[j].den for i, j in terms]
            total = Poly.one(ring)
            for d in dens:
                total = total * d
            target = Poly.zero(ring)
            cofactors = [Poly.zero(ring)] * len(pairs)
            for index, (i, j) in enumerate(terms):
                others = Poly.one(ring)
                for other_index, d in enumerate(dens):
                    if other_index != index:
                        others = others * d
                cofactors[pairs.index((i, j))] = others
                target = target + f[i].num * g[j].num * others
            # target/total is the k-th coefficient of FG
            if not LocElem.of(target, total).equals(product[k]):
                raise InvariantViolationError("product coefficient does not match its expansion")
            witness = Witness(target, gens, tuple(cofactors))
            if not witness.check():
                raise InvariantViolationError(f"content witness fails: {witness.identity()}")
            witnesses.append(witness)
        return witnesses

    def _refute_modulo(self, p: Poly, gens: Tuple[Poly, ...]) -> Optional[int]:
        """Smallest k ≤ MAX_TRUNCATION with p ∉ (gens) in R[X]/(X^k)."""
        for k in range(1, MAX_TRUNCATION + 1):
            if self.poly_service.truncated_membership(p, gens, k) is None:
                return k
        return None

    def compare_contents(self, f: OuterPoly, g: OuterPoly,
                         degree: int) -> Tuple[str, Optional[GaussianViolation]]:
        """
        Test c(F)c(G) ⊆ c(FG).

        Returns:
            tuple: ("holds" | "refuted" | "inconclusive", violation or None)
        """
        product = self.outer_product(f, g)
        self.product_content_witnesses(f, g, product)
        fg_gens = self.content_generators(product)
        outcome = "holds"
        for a in self.content_generators(f):
            for b in self.content_generators(g):
                p = a * b
                found = self.poly_service.membership_with_denominator(p, fg_gens, degree, degree)
                if isinstance(found, Witness):
                    continue
                k = self._refute_modulo(p, fg_gens)
                if k is not None:
                    return "refuted", GaussianViolation(f, g, p, fg_gens, k)
                outcome = "inconclusive"
        return outcome, None

    def _random_outer(self, rng: random.Random, ring: RingSpec, outer: int, inner: int) -> OuterPoly:
        size = rng.randint(1, outer + 1)
        coeffs = [
            LocElem.of(self.poly_service.random_poly(rng, ring, inner),
                       self.poly_service.random_in_a(rng, ring, inner))
            for _ in range(size)
        ]
        return tuple(coeffs)

    def nilpotent_probes(self, ring: RingSpec) -> List[Tuple[OuterPoly, OuterPoly]]:
        """F = m + XY, G = m - XY for each nonzero m with m² = 0."""
        x = LocElem.of(Poly.x(ring))
        probes = []
        for m in ring.elements():
            if m.is_zero or not (m * m).is_zero:
                continue
            c = LocElem.constant(m)
            probes.append(((c, x), (c, -x)))
        return probes

    def check_gaussian_slice(self, ring: RingSpec, trials: int = 200, seed: int = None,
                             outer_degree: int = None, inner_degree: int = None,
                             degree: int = None) -> TheoremVerdict:
        """
        R[X]_A is Gaussian when R is von Neumann regular. Samples pairs F, G
        and looks for p ∈ c(F)c(G) outside c(FG); refutations are exact.
        """
        outer = self.settings.gauss_outer_degree if outer_degree is None else outer_degree
        inner = self.settings.gauss_inner_degree if inner_degree is None else inner_degree
        bound = self.settings.member_degree if degree is None else degree
        rng = random.Random(self.settings.seed if seed is None else seed)
        is_vnr = self.ring_service.is_vnr(ring)

        pairs = self.nilpotent_probes(ring)
        probes = len(pairs)
        pairs += [(self._random_outer(rng, ring, outer, inner), self._random_outer(rng, ring, outer, inner))
                  for _ in range(trials)]

        counts = {"holds": 0, "inconclusive": 0, "refuted": 0}
        retried = 0
        reached = bound
        violation = None
        for f, g in pairs:
            outcome, found = self.compare_contents(f, g, bound)
            if outcome == "inconclusive" and is_vnr:
                # retry with a larger membership bound
                retried += 1
                for higher in range(bound + 1, MAX_RETRY_DEGREE + 1):
                    reached = max(reached, higher)
                    outcome, found = self.compare_contents(f, g, higher)
                    if outcome != "inconclusive":
                        break
            counts[outcome] += 1
            if found is not None:
                violation = found
                break

        verdict = TheoremVerdict("gaussian", ring.literal, refutation_expected=not is_vnr)
        verdict.add(Claim("c(FG) is contained in c(F)c(G)", Status.VERIFIED,
                          detail={"pairs": sum(counts.values())}))
        detail = {
            "is_vnr": is_vnr,
            "trials": trials,
            "probes": probes,
            "outcomes": counts,
            "outer_degree": outer,
            "inner_degree": inner,
            "violations": 1 if violation else 0,
            "retried": retried,
        }
        name = "c(F)c(G) is contained in c(FG)"
        if violation is not None:
            verdict.add(Claim(name, Status.REFUTED, witnesses=[violation], detail=detail))
        elif counts["inconclusive"] or not is_vnr:
            verdict.add(Claim(name, Status.BOUNDED, bound=reached if counts["inconclusive"] else bound, detail=detail))
        else:
            verdict.add(Claim(name, Status.VERIFIED, detail=detail))
        logger.info("gaussian slice over %s: %s %s", ring, verdict.label, counts)
        return verdict
