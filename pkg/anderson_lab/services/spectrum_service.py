"""Membership in ideals of R[X]_A and the spectrum of R[X]_A over a finite ring."""
import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union

from anderson_lab.core.config import settings
from anderson_lab.core.exceptions import (
    InvariantViolationError, KindMismatchError, NotMaximalError, RingMismatchError,
)
from anderson_lab.core.logger import get_logger
from anderson_lab.models.fraction import LocElem
from anderson_lab.models.loc_ideal import LocIdeal, LocIdealShape
from anderson_lab.models.poly import MultSetKind, Poly
from anderson_lab.models.ring import IdealOfR, RingElem, RingSpec
from anderson_lab.models.verdict import Member, NotFoundUpTo, NotMember, Witness
from anderson_lab.services.localization_service import CheckReport, LocalizationService
from anderson_lab.services.poly_service import PolyService
from anderson_lab.services.ring_service import RingService

logger = get_logger(__name__)

MembershipResult = Union[Member, NotMember, NotFoundUpTo]


@dataclass(frozen=True)
class MaximalityWitness:
    """1 = multiplier·x + remainder with remainder in the top ideal."""

    element: LocElem
    multiplier: LocElem
    remainder: LocElem

    def check(self) -> bool:
        one = LocElem.one(self.element.ring)
        return (self.multiplier * self.element + self.remainder).equals(one)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "x": str(self.element),
            "multiplier": str(self.multiplier),
            "remainder": str(self.remainder),
            "identity": f"1 = ({self.multiplier})*({self.element}) + ({self.remainder})",
            "holds": self.check(),
        }


@dataclass
class SpectrumReport:
    """Two-layer spectrum of R[X]_A for a zero-dimensional R."""

    ring: RingSpec
    extensions: List[LocIdeal]
    tops: List[LocIdeal]
    verified_chains: List[Dict[str, Any]] = field(default_factory=list)
    maximality: List[Dict[str, Any]] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)
    krull_dimension: int = 1

    @property
    def holds(self) -> bool:
        return all(self.checks.values()) and all(c["strict"] for c in self.verified_chains)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ring": self.ring.literal,
            "maximal_ideals": [t.to_dict() for t in self.tops],
            "minimal_primes": [e.to_dict() for e in self.extensions],
            "chains": self.verified_chains,
            "maximality": self.maximality,
            "checks": self.checks,
            "krull_dimension": self.krull_dimension,
            "holds": self.holds,
        }


class QuotientMap:
    """R[X]_A → R/M ≅ Z_p, f/g ↦ f(0)·g(0)⁻¹ read in coordinate ``coordinate`` mod p."""

    def __init__(self, top: LocIdeal, field_spec: RingSpec, coordinate: int, prime: int):
        self.top = top
        self.field = field_spec
        self.coordinate = coordinate
        self.prime = prime

    def residue(self, r: RingElem) -> RingElem:
        return self.field.element(r.coords[self.coordinate])

    def __call__(self, x: LocElem) -> RingElem:
        return self.residue(x.num.constant_term) * self.residue(x.den.constant_term).inverse()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ideal": str(self.top),
            "field": self.field.literal,
            "coordinate": self.coordinate,
            "prime": self.prime,
        }


class SpectrumService:
    """Exact membership rules, the maximal spectrum and residue fields of R[X]_A."""

    def __init__(self, ring_service: RingService, poly_service: PolyService,
                 localization_service: LocalizationService, config=None):
        self.ring_service = ring_service
        self.poly_service = poly_service
        self.localization_service = localization_service
        self.settings = config or settings

    # membership

    def _express_constant(self, c: RingElem, ideal: IdealOfR) -> Optional[List[RingElem]]:
        return self.ring_service.express_in_generators(c, ideal.generators)

    def loc_membership(self, x: LocElem, ideal: LocIdeal, degree: int = None) -> MembershipResult:
        """
        Decide x ∈ J.

        ExtensionOfR and IPlusX shapes are decided exactly; General runs the
        bounded denominator search and may answer NotFoundUpTo.

        Returns:
            Member with a recombination witness target·h = Σ gens_i·q_i
            (x = Σ gens_i·q_i/(g·h)), NotMember, or NotFoundUpTo(degree)
        """
        if x.ring != ideal.ring:
            raise RingMismatchError()
        if x.kind is not MultSetKind.A:
            raise KindMismatchError(f"kind mismatch: membership needs kind A, got {x.kind.value}")
        f = x.num
        gens = ideal.generators
        ring = x.ring

        if ideal.shape is LocIdealShape.EXTENSION:
            # f/g ∈ I·R[X]_A iff c(f) ⊆ I
            cofactor_coeffs = [[ring.zero] * len(f.coeffs) for _ in gens]
            for j, c in enumerate(f.coeffs):
                combination = self._express_constant(c, ideal.base)
                if combination is None:
                    return NotMember(f"c(f) is not contained in {ideal.base}: coefficient {c} of X^{j}")
                for i, r in enumerate(combination):
                    cofactor_coeffs[i][j] = r
            cofactors = tuple(Poly(ring, tuple(cs)) for cs in cofactor_coeffs)
            return Member(self._checked(Witness(f, gens, cofactors)), rule="content")

        if ideal.shape is LocIdealShape.I_PLUS_X:
            # f/g ∈ (I + X·R[X])_A iff f(0) ∈ I
            combination = self._express_constant(f.constant_term, ideal.base)
            if combination is None:
                return NotMember(f"f(0) = {f.constant_term} is not in {ideal.base}")
            cofactors = tuple(Poly.constant(r) for r in combination) + (f.drop_constant(),)
            return Member(self._checked(Witness(f, gens, cofactors)), rule="constant-term")

        bound = self.settings.member_degree if degree is None else degree
        found = self.poly_service.membership_with_denominator(f, gens, bound, bound)
        if isinstance(found, Witness):
            return Member(found, rule="bounded")
        return found

    @staticmethod
    def _checked(witness: Witness) -> Witness:
        if not witness.check():
            raise InvariantViolationError(f"membership witness fails: {witness.identity()}")
        return witness

    def contains(self, ideal: LocIdeal, x: LocElem) -> bool:
        """Exact membership; only for ExtensionOfR and IPlusX shapes."""
        if not ideal.is_exact:
            raise InvariantViolationError("exact membership requested for a General ideal")
        return isinstance(self.loc_membership(x, ideal), Member)

    # oracle

    def exact_rule_oracle_check(self, ring: RingSpec, trials: int = 500, seed: int = None,
                                degree: int = None) -> CheckReport:
        """
        Compare both exact rules with the bounded denominator search.

        For random f, g ∈ A and a random ideal I, the exact answer for
        IR[X]_A and (I+XR[X])_A must match the search for h ∈ A and cofactors
        of degree ≤ degree. Numerators have degree ≤ 2, so exact members
        always have witnesses inside the bound; a search hit on an exact
        non-member would contradict soundness.
        """
        bound = self.settings.oracle_degree if degree is None else degree
        rng = random.Random(self.settings.seed if seed is None else seed)
        lattice = self.ring_service.ideal_lattice(ring)
        report = CheckReport("exact-rule-oracle", ring, facts={"trials": trials, "degree": bound})
        shapes = {"extension": LocIdeal.extension, "i_plus_x": LocIdeal.i_plus_x}
        agreements = {name: 0 for name in shapes}

        for _ in range(trials):
            f = self.poly_service.random_poly(rng, ring, min(2, bound))
            g = self.poly_service.random_in_a(rng, ring, min(2, bound))
            base = rng.choice(lattice)
            x = LocElem.of(f, g)
            for name, build in shapes.items():
                ideal = build(base)
                exact = self.contains(ideal, x)
                searched = self.poly_service.membership_with_denominator(
                    f, ideal.generators, bound, bound
                )
                report.checked += 1
                if exact == isinstance(searched, Witness):
                    agreements[name] += 1
                else:
                    report.fail(shape=name, fraction=str(x), ideal=str(ideal), exact=exact)
        report.facts["agreements"] = agreements
        report.facts["disagreements"] = len(report.failures)
        logger.info("oracle over %s: %d checks, %d disagreements", ring, report.checked, len(report.failures))
        return report

    # spectrum

    def _samples_outside(self, top: LocIdeal) -> List[LocElem]:
        """Deterministic fractions x ∉ top: constants r ∉ M and r + X, over 1 + X."""
        ring = top.ring
        x = Poly.x(ring)
        den = Poly.one(ring) + x
        samples = []
        for r in ring.elements():
            if r in top.base:
                continue
            c = Poly.constant(r)
            samples.append(LocElem.of(c, den))
            samples.append(LocElem.of(c + x, den))
        return samples

    def maximality_witness(self, top: LocIdeal, x: LocElem) -> MaximalityWitness:
        """
        Construct 1 = (r·g)·(f/g) + t with t ∈ top, for x = f/g ∉ top.

        r and s_i solve r·f(0) + Σ m_i·s_i = 1 (possible because M is maximal
        and f(0) ∉ M), then t = Σ m_i·s_i - r·(f - f(0)).
        """
        ring = top.ring
        f, g = x.num, x.den
        gens = top.base.generators
        solution = self.ring_service.solve_linear(ring, [[f.constant_term, *gens]], [ring.one])
        if solution is None:
            raise NotMaximalError(f"{top.base} is not maximal: {f.constant_term} does not generate 1 with it")
        r, ss = solution[0], solution[1:]
        m = ring.zero
        for gen, s in zip(gens, ss):
            m = m + gen * s
        remainder_poly = Poly.constant(m) - (f - Poly.constant(f.constant_term)).scale(r)
        witness = MaximalityWitness(
            element=x,
            multiplier=LocElem.of(g.scale(r)),
            remainder=LocElem.of(remainder_poly),
        )
        if not witness.check() or not self.contains(top, witness.remainder):
            raise InvariantViolationError(f"maximality witness for {x} in {top} fails")
        return witness

    def max_spectrum_A(self, ring: RingSpec) -> SpectrumReport:
        """
        Build and certify Max and Min of R[X]_A from those of R.

        Tops (M + X·R[X])_A are certified proper (1 ∉) and maximal by explicit
        unit combinations; bottoms P·R[X]_A sit strictly under the tops with X
        as the separating element.
        """
        maximal = self.ring_service.max_ideals(ring)
        minimal = self.ring_service.min_primes(ring)
        tops = [LocIdeal.i_plus_x(m) for m in maximal]
        extensions = [LocIdeal.extension(p) for p in minimal]
        report = SpectrumReport(ring, extensions, tops)
        one = LocElem.one(ring)
        x = LocElem.of(Poly.x(ring))

        proper = True
        for top in tops:
            if self.contains(top, one):
                proper = False
            samples = self._samples_outside(top)
            witnesses = [self.maximality_witness(top, s) for s in samples]
            report.maximality.append({
                "ideal": str(top),
                "samples": len(samples),
                "witnesses": [w.to_dict() for w in witnesses[:3]],
                "all_hold": all(w.check() for w in witnesses),
            })
        report.checks["tops_proper"] = proper
        report.checks["tops_maximal"] = all(entry["all_hold"] for entry in report.maximality)

        for bottom in extensions:
            for top in tops:
                if not bottom.base <= top.base:
                    continue
                contained = all(self.contains(top, LocElem.of(g)) for g in bottom.generators)
                separated = self.contains(top, x) and not self.contains(bottom, x)
                report.verified_chains.append({
                    "bottom": str(bottom),
                    "top": str(top),
                    "contained": contained,
                    "separator": "X",
                    "strict": contained and separated,
                })

        report.checks["count_matches_base"] = len(tops) == len(maximal) == len(extensions)
        report.checks["x_in_every_top"] = all(self.contains(t, x) for t in tops)
        report.checks["x_in_no_bottom"] = not any(self.contains(e, x) for e in extensions)
        report.checks["x_nonzero_nonunit"] = (
            not x.is_zero and not self.localization_service.is_unit_loc(x)
        )
        report.checks["quasi_local_transfer"] = (len(maximal) == 1) == (len(tops) == 1)
        report.checks["tops_incomparable"] = self._pairwise_incomparable(tops)
        report.checks["bottoms_incomparable"] = self._pairwise_incomparable(extensions)
        report.checks["saturation"] = self._saturation_holds(ring, tops)
        report.checks["hilbert_kernel"] = all(
            not self.contains(LocIdeal.extension(i), x)
            for i in self.ring_service.ideal_lattice(ring) if i.is_proper
        )
        logger.info("spectrum of %s: %d maximal ideals", ring, len(tops))
        return report

    def _pairwise_incomparable(self, ideals: List[LocIdeal]) -> bool:
        for first, second in itertools.permutations(ideals, 2):
            if all(self.contains(second, LocElem.of(g)) for g in first.generators):
                return False
        return True

    def _saturation_holds(self, ring: RingSpec, tops: List[LocIdeal]) -> bool:
        """f(0) is a unit iff f/1 lies in no maximal ideal, on constants and constants + X."""
        x = Poly.x(ring)
        for r in ring.elements():
            for f in (Poly.constant(r), Poly.constant(r) + x):
                element = LocElem.of(f)
                outside_all = not any(self.contains(t, element) for t in tops)
                if outside_all != f.constant_term.is_unit():
                    return False
        return True

    # residue fields

    def quotient_by_top(self, top: LocIdeal, degree: int = 1, samples: int = 200,
                        seed: int = None) -> QuotientMap:
        """
        Residue field of a top (M + X·R[X])_A and its evaluation map.

        Verifies ring-map laws on sampled pairs, kernel = top exactly on every
        fraction with num, den of degree ≤ degree, and surjectivity.

        Raises:
            NotMaximalError: If the ideal is not of shape IPlusX over a maximal ideal
        """
        if top.shape is not LocIdealShape.I_PLUS_X:
            raise NotMaximalError(f"{top} is not of the form (M + X)R[X]_A")
        ring = top.ring
        if top.base not in self.ring_service.max_ideals(ring):
            raise NotMaximalError(f"{top.base} is not a maximal ideal of {ring}")

        factor = self.ring_service.local_factor_for(top.base)
        qmap = QuotientMap(top, RingSpec((factor.prime,)), factor.coordinate, factor.prime)

        fractions = [
            LocElem.of(num, den)
            for num in self.poly_service.all_polys(ring, degree)
            for den in self.poly_service.polys_in_set(ring, degree, MultSetKind.A)
        ]
        for element in fractions:
            in_kernel = qmap(element).is_zero
            if in_kernel != self.contains(top, element):
                raise InvariantViolationError(f"kernel of the quotient map differs from {top} at {element}")

        rng = random.Random(self.settings.seed if seed is None else seed)
        for _ in range(samples):
            a, b = rng.choice(fractions), rng.choice(fractions)
            if qmap(a + b) != qmap(a) + qmap(b) or qmap(a * b) != qmap(a) * qmap(b):
                raise InvariantViolationError(f"quotient map is not a ring map at {a}, {b}")
        if not qmap(LocElem.one(ring)).is_one:
            raise InvariantViolationError("quotient map does not preserve 1")

        hit = {qmap(LocElem.constant(r)) for r in ring.elements()}
        if len(hit) != factor.prime:
            raise InvariantViolationError(f"quotient map onto {qmap.field} is not surjective")
        return qmap
