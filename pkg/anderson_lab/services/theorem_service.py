"""Checkers confronting principality, PIR and Prüfer statements about R[X]_A with computation."""
import itertools
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from anderson_lab.core.config import settings
from anderson_lab.core.exceptions import InvariantViolationError
from anderson_lab.core.logger import get_logger
from anderson_lab.models.fraction import LocElem
from anderson_lab.models.loc_ideal import LocIdeal, LocIdealShape
from anderson_lab.models.poly import Poly
from anderson_lab.models.ring import IdealOfR, RingElem, RingSpec
from anderson_lab.models.verdict import (
    Certificate, Claim, Member, NotFoundUpTo, Status, TheoremVerdict, Witness,
)
from anderson_lab.services.poly_service import PolyService
from anderson_lab.services.ring_service import RingService
from anderson_lab.services.spectrum_service import SpectrumService

logger = get_logger(__name__)

SearchResult = Union[Certificate, NotFoundUpTo]


class TheoremService:
    """Principality searches and the theorem checkers built on them."""

    def __init__(self, ring_service: RingService, poly_service: PolyService,
                 spectrum_service: SpectrumService, config=None):
        self.ring_service = ring_service
        self.poly_service = poly_service
        self.spectrum_service = spectrum_service
        self.settings = config or settings

    # generator search

    def linear_term_feasible(self, a0: RingElem, a1: RingElem) -> bool:
        """
        Whether some b0, b1 satisfy a0·b0 = 0 and a0·b1 + a1·b0 = 1.

        These are the X^0 and X^1 coefficients of X·h = f·q with h ∈ A, so a
        candidate f = a0 + a1·X + ... failing this cannot generate an ideal
        containing X. Decided per local factor Z_{p^e}: the system is
        solvable iff a0 is a unit there, or a0 is zero there and a1 a unit.
        """
        for factor in self.ring_service.local_factors(a0.ring):
            c0 = factor.project(a0)
            c1 = factor.project(a1)
            if c0.is_unit():
                continue
            if c0.is_zero and c1.is_unit():
                continue
            return False
        return True

    def _closed_form_x_witness(self, f: Poly) -> Optional[Witness]:
        """
        For f = X + c: pick ĉ ∈ ann(c) and a, b with a·c + b·ĉ = 1, then
        (X + c)(aX + bĉ) = X(aX + 1).
        """
        ring = f.ring
        if f.degree != 1 or not f.leading_coefficient.is_one:
            return None
        c = f.constant_term
        annihilator = self.ring_service.annihilator(self.ring_service.principal_ideal(c))
        for c_hat in annihilator.elements:
            solution = self.ring_service.solve_linear(ring, [[c, c_hat]], [ring.one])
            if solution is None:
                continue
            a, b = solution
            h = Poly(ring, (ring.one, a))
            q = Poly(ring, (b * c_hat, a))
            witness = Witness(Poly.x(ring), (f,), (q,), h)
            if witness.check():
                return witness
        return None

    def _x_witness(self, f: Poly, degree: int) -> Optional[Witness]:
        witness = self._closed_form_x_witness(f)
        if witness is not None:
            return witness
        bound = degree + 2
        found = self.poly_service.membership_with_denominator(Poly.x(f.ring), [f], bound, bound)
        return found if isinstance(found, Witness) else None

    def _constant_witnesses(self, f: Poly, x_witness: Witness,
                            ideal: IdealOfR) -> Optional[Tuple[Witness, ...]]:
        """
        From X·h = f·q derive g·h = f·(h - f1·q)·r for each generator g = c·r
        of I, where c = f(0) and f = c + X·f1.
        """
        ring = f.ring
        c = f.constant_term
        h = x_witness.denominator
        f1 = f.drop_constant()
        base = h - f1 * x_witness.cofactors[0]
        witnesses = []
        for g in ideal.generators:
            solution = self.ring_service.solve_linear(ring, [[c]], [g])
            if solution is None:
                return None
            w = Witness(Poly.constant(g), (f,), (base.scale(solution[0]),), h)
            if not w.check():
                raise InvariantViolationError(f"derived generator witness fails: {w.identity()}")
            witnesses.append(w)
        return tuple(witnesses)

    def _ordered_candidates(self, ring: RingSpec, degree: int,
                            pairs: Sequence[Tuple[RingElem, RingElem]]) -> Iterator[Poly]:
        """
        Candidates of exactly ``degree`` whose (a0, a1) is feasible, ordered
        monic first, then lexicographically from the leading coefficient down.
        """
        elements = list(ring.elements())
        nonzero = [e for e in elements if not e.is_zero]
        if degree == 0:
            for a0, _ in pairs:
                if not a0.is_zero:
                    yield Poly(ring, (a0,))
            return
        leading_order = sorted(nonzero, key=lambda e: (not e.is_one, e.coords))
        if degree == 1:
            for lead in leading_order:
                for a0, a1 in pairs:
                    if a1 == lead:
                        yield Poly(ring, (a0, a1))
            return
        ordered_pairs = sorted(pairs, key=lambda p: (p[1].coords, p[0].coords))
        for lead in leading_order:
            for middle in itertools.product(elements, repeat=degree - 2):
                for a0, a1 in ordered_pairs:
                    # coefficients a_{degree-1} .. a2 come from ``middle``, high first
                    yield Poly(ring, (a0, a1) + tuple(reversed(middle)) + (lead,))

    def generator_search(self, ideal: LocIdeal, degree: int = None) -> SearchResult:
        """
        Search for a single generator of (I + X·R[X])_A among polynomials of
        degree ≤ degree.

        Candidates are pruned by two exact necessary conditions: f(0) must
        generate I, and (f(0), f1) must pass linear_term_feasible. Survivors
        are certified by explicit witnesses for X and for every generator of I.

        Args:
            ideal: LocIdeal of shape IPlusX
            degree: Candidate degree bound (defaults to the configured degree)

        Returns:
            Certificate, or NotFoundUpTo(degree) carrying search statistics
        """
        if ideal.shape is not LocIdealShape.I_PLUS_X:
            raise InvariantViolationError("generator_search needs an (I + X)R[X]_A ideal")
        d = self.settings.degree if degree is None else degree
        ring = ideal.ring
        base = ideal.base
        self.ring_service.check_cap(ring)
        size = ring.cardinality
        elements = list(ring.elements())

        valid_a0 = [a0 for a0 in elements if self.ring_service.generates(a0, base)]
        valid_set = set(valid_a0)
        stats = {"candidates": 0, "pruned_constant_term": 0, "pruned_linear_term": 0, "solver_checked": 0}

        for current in range(d + 1):
            # counts per fixed (a0) or (a0, a1) prefix
            if current == 0:
                total, per_a0, per_pair = size - 1, 1, 1
            elif current == 1:
                total, per_a0, per_pair = (size - 1) * size, size - 1, 1
            else:
                rest = (size - 1) * size ** (current - 2)
                total, per_a0, per_pair = (size - 1) * size ** current, size * rest, rest
            stats["candidates"] += total
            invalid_a0 = [a0 for a0 in elements if a0 not in valid_set]
            if current == 0:
                stats["pruned_constant_term"] += sum(1 for a0 in invalid_a0 if not a0.is_zero)
            else:
                stats["pruned_constant_term"] += per_a0 * len(invalid_a0)

            if current == 0:
                a1_choices = [ring.zero]
            elif current == 1:
                a1_choices = [e for e in elements if not e.is_zero]
            else:
                a1_choices = elements
            pairs = []
            for a0 in valid_a0:
                if current == 0 and a0.is_zero:
                    continue
                for a1 in a1_choices:
                    if self.linear_term_feasible(a0, a1):
                        pairs.append((a0, a1))
                    else:
                        stats["pruned_linear_term"] += per_pair

            for f in self._ordered_candidates(ring, current, pairs):
                stats["solver_checked"] += 1
                x_witness = self._x_witness(f, d)
                if x_witness is None:
                    continue
                constant_witnesses = self._constant_witnesses(f, x_witness, base)
                if constant_witnesses is None:
                    continue
                certificate = Certificate(
                    generator=f,
                    ideal=str(ideal),
                    membership_rule=f"f(0) = {f.constant_term} in {base}",
                    witnesses=constant_witnesses + (x_witness,),
                    stats=tuple(stats.items()),
                )
                logger.debug("generator %s found for %s over %s", f, ideal, ring)
                return certificate

        logger.debug("no generator of degree <= %d for %s over %s: %s", d, ideal, ring, stats)
        return NotFoundUpTo(d, searched=stats["candidates"], stats=tuple(stats.items()))

    # pir2

    def check_pir2(self, ring: RingSpec, degree: int = None) -> TheoremVerdict:
        """
        R[X]_A is a PIR iff R is a vnr PIR, confronted with generator searches
        for every maximal ideal (M + X·R[X])_A.
        """
        d = self.settings.degree if degree is None else degree
        predicates = self.ring_service.predicates(ring)
        lhs = predicates.is_vnr and predicates.is_pir
        verdict = TheoremVerdict("pir2", ring.literal)
        verdict.add(Claim("R is a von Neumann regular PIR", Status.VERIFIED,
                          detail={"is_vnr": predicates.is_vnr, "is_pir": predicates.is_pir, "lhs": lhs}))

        certificates = []
        all_found = True
        for maximal in self.ring_service.max_ideals(ring):
            top = LocIdeal.i_plus_x(maximal)
            result = self.generator_search(top, d)
            name = f"{top} is principal"
            if isinstance(result, Certificate):
                certificates.append(result)
                verdict.add(Claim(name, Status.VERIFIED, witnesses=[result]))
            else:
                all_found = False
                verdict.add(Claim(f"{top} has no generator of degree <= {d}", Status.BOUNDED,
                                  bound=d, witnesses=[result],
                                  detail={"generator_expected": lhs}))

        if all_found and not lhs:
            verdict.add(Claim("a non-vnr ring has every maximal ideal of R[X]_A principal",
                              Status.REFUTED, witnesses=certificates))
        premise = all_found
        verdict.add(Claim(
            "principal maximal ideals force R to be a zero-dimensional PIR",
            Status.VERIFIED if (not premise or predicates.is_pir) else Status.REFUTED,
            detail={"premise": premise, "is_pir": predicates.is_pir, "dimension": 0},
        ))
        if not lhs:
            verdict.notes.append("negative principality results are bounded by the search degree")
        logger.info("pir2 over %s: %s", ring, verdict.label)
        return verdict

    # generator count

    def check_generator_count(self, ideal: IdealOfR, degree: int = None) -> TheoremVerdict:
        """
        I needs k generators iff I·R[X]_A does: the k lattice generators of I
        generate the extension, certified by exact membership both ways.

        Every ideal of Z_n1 x ... x Z_nk is a product of ideals d·Z_n, so k <= 1
        and the lower bound is the exact check that the extension is nonzero.
        ``degree`` is unused: every step here is exact.
        """
        ring = ideal.ring
        entry = self.ring_service.find_ideal(ideal)
        k = entry.min_generators
        verdict = TheoremVerdict("generator-count", ring.literal)
        extension = LocIdeal.extension(ideal)
        image = LocIdeal.extension(entry)

        forward = [self.spectrum_service.loc_membership(LocElem.of(g), extension) for g in image.generators]
        backward = [self.spectrum_service.loc_membership(LocElem.of(g), image) for g in extension.generators]
        both = all(isinstance(r, Member) for r in forward + backward)
        verdict.add(Claim(
            f"{extension} is generated by the {k} element(s) {image}",
            Status.VERIFIED if both else Status.REFUTED,
            witnesses=[r.witness for r in forward + backward if isinstance(r, Member)],
            detail={"ideal": str(ideal), "min_generators": k},
        ))
        if k >= 2:
            raise InvariantViolationError(f"{ideal} needs {k} generators, but every ideal of {ring} is principal")
        if k == 1:
            nonzero = [str(g) for g in extension.generators if not g.is_zero]
            verdict.add(Claim(
                f"{extension} is nonzero, so no 0 elements generate it",
                Status.VERIFIED if nonzero else Status.REFUTED,
                detail={"nonzero_generators": nonzero},
            ))
        return verdict

    # contraction

    def check_contraction(self, ideal: IdealOfR) -> TheoremVerdict:
        """I·R[X]_A ∩ R = I, checked element by element."""
        ring = ideal.ring
        self.ring_service.check_cap(ring)
        extension = LocIdeal.extension(ideal)
        contraction = [r for r in ring.elements()
                       if self.spectrum_service.contains(extension, LocElem.constant(r))]
        mismatches = [str(r) for r in ring.elements() if (r in contraction) != (r in ideal)]
        verdict = TheoremVerdict("contraction", ring.literal)
        verdict.add(Claim(
            f"{extension} contracts to {ideal}",
            Status.VERIFIED if not mismatches else Status.REFUTED,
            witnesses=mismatches,
            detail={"contraction": [str(r) for r in contraction] if len(contraction) <= 64 else len(contraction)},
        ))
        return verdict

    # local principality

    def _locally_principal(self, ideal: IdealOfR) -> Dict[str, bool]:
        """Per local factor: is the projected ideal principal? (exact, by search)"""
        result = {}
        for factor in self.ring_service.local_factors(ideal.ring):
            projected = self.ring_service.ideal_from_generators(
                factor.spec, [factor.project(g) for g in ideal.generators]
            )
            result[factor.spec.literal + f"@{factor.coordinate}"] = any(
                self.ring_service.generates(x, projected) for x in projected.elements
            )
        return result

    def _extension_locally_principal(self, ideal: IdealOfR) -> Dict[str, bool]:
        """
        Per local factor: the extension of the projected ideal to
        Z_{p^e}[X]_A is generated by one constant, by exact membership both ways.
        """
        result = {}
        for factor in self.ring_service.local_factors(ideal.ring):
            projections = [factor.project(g) for g in ideal.generators]
            projected = self.ring_service.ideal_from_generators(factor.spec, projections)
            extension = LocIdeal.extension(projected)
            principal = False
            for x in projected.elements:
                single = LocIdeal.extension(self.ring_service.principal_ideal(x))
                if all(self.spectrum_service.contains(single, LocElem.constant(p)) for p in projections) \
                        and self.spectrum_service.contains(extension, LocElem.constant(x)):
                    principal = True
                    break
            result[factor.spec.literal + f"@{factor.coordinate}"] = principal
        return result

    def check_locally_principal(self, ideal: IdealOfR) -> TheoremVerdict:
        """
        I is locally principal iff I·R[X]_A is; I·R[X]_A is invertible iff I
        is locally principal with ann(I) = 0.
        """
        ring = ideal.ring
        lhs = self._locally_principal(ideal)
        rhs = self._extension_locally_principal(ideal)
        annihilator = self.ring_service.annihilator(ideal)
        locally_principal = all(lhs.values())
        invertible = locally_principal and annihilator.is_zero

        verdict = TheoremVerdict("locally-principal", ring.literal)
        verdict.add(Claim(
            f"{ideal} locally principal iff its extension is",
            Status.VERIFIED if locally_principal == all(rhs.values()) else Status.REFUTED,
            detail={"ideal": lhs, "extension": rhs},
        ))
        # in a finite ring regular elements are units, so invertible means I = R
        verdict.add(Claim(
            f"{ideal}R[X]_A invertible iff locally principal with zero annihilator",
            Status.VERIFIED if invertible == ideal.is_unit_ideal else Status.REFUTED,
            detail={
                "locally_principal": locally_principal,
                "annihilator": [str(a) for a in annihilator.elements] if len(annihilator) <= 64 else len(annihilator),
                "invertible": invertible,
            },
        ))
        return verdict

    # vnr / Prüfer

    def check_vnr_prufer_slice(self, ring: RingSpec) -> TheoremVerdict:
        """
        For every maximal M and m ∈ M: does m vanish in R_M? All vanish
        exactly when R is von Neumann regular.
        """
        obstructions = []
        for maximal in self.ring_service.max_ideals(ring):
            factor = self.ring_service.local_factor_for(maximal)
            for m in maximal.elements:
                image = factor.project(m)
                if not image.is_zero:
                    obstructions.append({"maximal": str(maximal), "m": str(m),
                                         "factor": factor.spec.literal, "image": str(image)})
        is_vnr = self.ring_service.is_vnr(ring)
        all_vanish = not obstructions
        verdict = TheoremVerdict("vnr-prufer", ring.literal)
        verdict.add(Claim(
            "M·R_M = 0 for every maximal M iff R is von Neumann regular",
            Status.VERIFIED if all_vanish == is_vnr else Status.REFUTED,
            witnesses=obstructions[:5],
            detail={"all_vanish": all_vanish, "is_vnr": is_vnr, "obstructions": len(obstructions)},
        ))
        return verdict

    def check_prufer_transfer(self, ring: RingSpec, degree: int = None) -> TheoremVerdict:
        """
        Every finite ring is Prüfer; R[X]_A is Prüfer only when R is vnr.

        X is regular in R[X]_A and lies in every top, so if R[X]_A were
        Prüfer every top would be invertible, hence principal (R[X]_A is
        semi-quasi-local). A top without a generator up to the bound is the
        obstruction reported for non-vnr R.
        """
        d = self.settings.degree if degree is None else degree
        verdict = TheoremVerdict("prufer-transfer", ring.literal)
        verdict.add(Claim(
            "R is Prüfer: every regular element is a unit",
            Status.VERIFIED if self.ring_service.nonzero_divisors_are_units(ring) else Status.REFUTED,
        ))
        x = Poly.x(ring)
        x_regular = not self.ring_service.has_nonzero_kernel(ring, self.poly_service.multiplication_matrix(x, d))
        verdict.add(Claim("X is a regular element", Status.VERIFIED if x_regular else Status.REFUTED,
                          detail={"degree": d}))

        is_vnr = self.ring_service.is_vnr(ring)
        for maximal in self.ring_service.max_ideals(ring):
            top = LocIdeal.i_plus_x(maximal)
            result = self.generator_search(top, d)
            if isinstance(result, Certificate):
                verdict.add(Claim(f"{top} is invertible (principal)", Status.VERIFIED, witnesses=[result]))
            else:
                verdict.add(Claim(f"{top} is not principal up to degree {d}",
                                  Status.BOUNDED, bound=d, witnesses=[result],
                                  detail={"obstruction_expected": not is_vnr}))
        verdict.notes.append(f"R is {'' if is_vnr else 'not '}von Neumann regular")
        return verdict

    def check_prufer_descent(self, ring: RingSpec, degree: int = None) -> TheoremVerdict:
        """
        If R[X]_A is Prüfer, so is R.

        The premise is bounded: every top (M + X·R[X])_A has a generator up to
        the search degree. The conclusion is exact: every regular ideal of R
        (ann(I) = 0) is invertible, which in a finite ring means it is R.
        The implication fails only if the premise is witnessed and the
        conclusion does not hold.
        """
        d = self.settings.degree if degree is None else degree
        verdict = TheoremVerdict("prufer-descent", ring.literal)

        searches = [self.generator_search(LocIdeal.i_plus_x(m), d) for m in self.ring_service.max_ideals(ring)]
        premise = all(isinstance(r, Certificate) for r in searches)

        regular = [i for i in self.ring_service.ideal_lattice(ring)
                   if self.ring_service.annihilator(i).is_zero]
        not_invertible = [str(i) for i in regular if not i.is_unit_ideal]
        conclusion = not not_invertible and self.ring_service.nonzero_divisors_are_units(ring)

        if conclusion or not premise:
            status = Status.VERIFIED if conclusion else Status.BOUNDED
        else:
            status = Status.REFUTED
        verdict.add(Claim(
            "R[X]_A Prüfer implies R Prüfer",
            status,
            bound=d if status is Status.BOUNDED else None,
            witnesses=[r for r in searches if isinstance(r, Certificate)],
            detail={
                "premise": premise,
                "conclusion": conclusion,
                "regular_ideals": [str(i) for i in regular],
                "not_invertible": not_invertible,
            },
        ))
        if not premise:
            verdict.notes.append(f"some top has no generator up to degree {d}, so the premise is not witnessed")
        logger.info("prufer descent over %s: premise=%s conclusion=%s", ring, premise, conclusion)
        return verdict

    # ring-wide runs

    def for_every_ideal(self, theorem_id: str, ring: RingSpec, check) -> TheoremVerdict:
        """Merge a per-ideal checker over the whole ideal lattice."""
        verdict = TheoremVerdict(theorem_id, ring.literal)
        for ideal in self.ring_service.ideal_lattice(ring):
            for claim in check(ideal).claims:
                verdict.add(claim)
        return verdict

