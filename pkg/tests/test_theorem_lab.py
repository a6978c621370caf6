import pytest
from sympy import factorint, isprime, primefactors

from anderson_lab.models.loc_ideal import LocIdeal
from anderson_lab.models.ring import RingSpec
from anderson_lab.models.verdict import Certificate, NotFoundUpTo, Status
from anderson_lab.services.gaussian_service import GaussianService
from anderson_lab.utils.parse_utils import parse_ideal_spec, parse_ring


def top(ring_service, ring, spec):
    _, gens = parse_ideal_spec(ring, spec)
    return LocIdeal.i_plus_x(ring_service.ideal_from_generators(ring, gens))


def assert_certificate(result, generator):
    assert isinstance(result, Certificate)
    assert str(result.generator) == generator
    assert result.check()
    assert all(w.check() for w in result.witnesses)


class TestLinearTermFeasibility:
    @pytest.mark.parametrize("literal", ["Z4", "Z6", "Z12", "Z2xZ3", "Z8"])
    def test_agrees_with_solve_linear(self, ring_service, theorem_service, literal):
        """a0·b0 = 0 and a0·b1 + a1·b0 = 1, as the 2x2 system [[a0, 0], [a1, a0]]·(b0, b1) = (0, 1)."""
        ring = parse_ring(literal)
        for a0 in ring.elements():
            for a1 in ring.elements():
                matrix = [[a0, ring.zero], [a1, a0]]
                solvable = ring_service.solve_linear(ring, matrix, [ring.zero, ring.one]) is not None
                assert theorem_service.linear_term_feasible(a0, a1) is solvable


class TestGeneratorSearch:
    def test_square_free_generators(self, ring_service, theorem_service, z6):
        assert_certificate(theorem_service.generator_search(top(ring_service, z6, "(2)"), 1), "X+2")
        assert_certificate(theorem_service.generator_search(top(ring_service, z6, "(3)"), 1), "X+3")

    def test_field(self, ring_service, theorem_service, z5):
        assert_certificate(theorem_service.generator_search(top(ring_service, z5, "()"), 1), "X")

    def test_idempotent(self, ring_service, theorem_service, z2xz3):
        result = theorem_service.generator_search(top(ring_service, z2xz3, "((1,0))"), 1)
        assert_certificate(result, "X+(1,0)")

    def test_z4_has_no_generator(self, ring_service, theorem_service, z4):
        result = theorem_service.generator_search(top(ring_service, z4, "(2)"), 3)
        assert isinstance(result, NotFoundUpTo)
        assert result.bound == 3
        assert dict(result.stats) == {
            "candidates": 255,
            "pruned_constant_term": 191,
            "pruned_linear_term": 64,
            "solver_checked": 0,
        }

    def test_witness_for_x_matches_closed_form(self, ring_service, theorem_service, z6):
        result = theorem_service.generator_search(top(ring_service, z6, "(2)"), 1)
        x_witness = result.witnesses[-1]
        assert str(x_witness.target) == "X"
        assert x_witness.denominator.constant_term.is_one


class TestPir2:
    def test_z6(self, theorem_service, z6):
        verdict = theorem_service.check_pir2(z6, 1)
        assert verdict.status is Status.VERIFIED
        generators = sorted(
            str(w.generator) for claim in verdict.claims for w in claim.witnesses
            if isinstance(w, Certificate)
        )
        assert generators == ["X+2", "X+3"]

    def test_z4(self, theorem_service, z4):
        verdict = theorem_service.check_pir2(z4, 3)
        assert verdict.label == "bounded-consistent(3)"
        assert verdict.consistent

    def test_z30_and_product(self, theorem_service):
        assert theorem_service.check_pir2(parse_ring("Z30"), 1).status is Status.VERIFIED
        assert theorem_service.check_pir2(parse_ring("Z2xZ3xZ5"), 1).status is Status.VERIFIED

    @pytest.mark.parametrize("literal", ["Z8", "Z9", "Z12", "Z2xZ4"])
    def test_special_pirs_are_bounded(self, theorem_service, literal):
        verdict = theorem_service.check_pir2(parse_ring(literal), 2)
        assert verdict.label == "bounded-consistent(2)"

    @pytest.mark.slow
    def test_square_free_sweep(self, theorem_service):
        for n in range(2, 211):
            if any(e > 1 for e in factorint(n).values()):
                continue
            verdict = theorem_service.check_pir2(RingSpec((n,)), 1)
            assert verdict.status is Status.VERIFIED, n
            generators = sorted(
                str(w.generator) for claim in verdict.claims for w in claim.witnesses
                if isinstance(w, Certificate)
            )
            expected = ["X"] if isprime(n) else sorted(f"X+{p}" for p in primefactors(n))
            assert generators == expected, n

    @pytest.mark.slow
    def test_non_square_free_sweep(self, theorem_service):
        for n in range(4, 101):
            if all(e == 1 for e in factorint(n).values()):
                continue
            verdict = theorem_service.check_pir2(RingSpec((n,)), 2)
            assert verdict.status is Status.BOUNDED, n


class TestIdealTheorems:
    @pytest.mark.parametrize("literal", ["Z4", "Z6", "Z12", "Z2xZ2"])
    def test_contraction(self, theorem_service, literal):
        verdict = theorem_service.for_every_ideal(
            "contraction", parse_ring(literal), theorem_service.check_contraction
        )
        assert verdict.status is Status.VERIFIED

    def test_contraction_of_two_in_z4(self, ring_service, theorem_service, z4):
        verdict = theorem_service.check_contraction(ring_service.principal_ideal(z4.element(2)))
        assert verdict.claims[0].detail["contraction"] == ["0", "2"]

    @pytest.mark.slow
    def test_contraction_sweep(self, theorem_service):
        for n in range(2, 65):
            ring = RingSpec((n,))
            verdict = theorem_service.for_every_ideal("contraction", ring, theorem_service.check_contraction)
            assert verdict.status is Status.VERIFIED, n

    def test_generator_count(self, ring_service, theorem_service, z6):
        verdict = theorem_service.check_generator_count(ring_service.principal_ideal(z6.element(2)), 1)
        assert verdict.status is Status.VERIFIED
        assert verdict.claims[0].detail["min_generators"] == 1

    def test_generator_count_crt(self, ring_service, theorem_service):
        ring = parse_ring("Z4xZ9")
        ideal = ring_service.ideal_from_generators(ring, [ring.element((2, 0)), ring.element((0, 3))])
        verdict = theorem_service.check_generator_count(ideal, 1)
        assert verdict.status is Status.VERIFIED
        assert verdict.claims[0].detail["min_generators"] == 1
        assert verdict.claims[1].detail["nonzero_generators"] == ["(2,0)", "(0,3)"]

    def test_generator_count_zero_ideal(self, ring_service, theorem_service, z6):
        verdict = theorem_service.check_generator_count(ring_service.zero_ideal(z6))
        assert verdict.status is Status.VERIFIED
        assert verdict.claims[0].detail["min_generators"] == 0
        assert len(verdict.claims) == 1

    def test_generator_count_unit_ideal(self, ring_service, theorem_service, z4):
        verdict = theorem_service.check_generator_count(ring_service.unit_ideal(z4), 1)
        assert verdict.status is Status.VERIFIED

    @pytest.mark.parametrize("literal, value, invertible", [
        ("Z6", 2, False),
        ("Z4", 2, False),
        ("Z6", 1, True),
        ("Z4", 1, True),
    ])
    def test_locally_principal(self, ring_service, theorem_service, literal, value, invertible):
        ring = parse_ring(literal)
        verdict = theorem_service.check_locally_principal(ring_service.principal_ideal(ring.element(value)))
        assert verdict.status is Status.VERIFIED
        assert verdict.claims[1].detail["invertible"] is invertible
        assert verdict.claims[1].detail["locally_principal"] is True


class TestPrufer:
    @pytest.mark.parametrize("literal", ["Z30", "Z4", "Z2xZ9", "Z12", "Z5"])
    def test_vnr_slice_matches_predicate(self, ring_service, theorem_service, literal):
        ring = parse_ring(literal)
        verdict = theorem_service.check_vnr_prufer_slice(ring)
        assert verdict.status is Status.VERIFIED
        assert verdict.claims[0].detail["all_vanish"] is ring_service.is_vnr(ring)

    def test_z2xz9_obstruction_in_z9(self, theorem_service):
        verdict = theorem_service.check_vnr_prufer_slice(parse_ring("Z2xZ9"))
        assert {w["factor"] for w in verdict.claims[0].witnesses} == {"Z9"}

    def test_transfer(self, theorem_service, z4, z6):
        assert theorem_service.check_prufer_transfer(z6, 1).status is Status.VERIFIED
        verdict = theorem_service.check_prufer_transfer(z4, 1)
        assert verdict.label == "bounded-consistent(1)"
        assert verdict.consistent

    @pytest.mark.parametrize("literal, premise", [("Z6", True), ("Z30", True), ("Z5", True), ("Z4", False)])
    def test_descent(self, theorem_service, literal, premise):
        verdict = theorem_service.check_prufer_descent(parse_ring(literal), 1)
        assert verdict.status is Status.VERIFIED
        detail = verdict.claims[0].detail
        assert detail["premise"] is premise
        assert detail["conclusion"] is True
        assert detail["regular_ideals"] == ["(1)"]
        assert all(w.check() for w in verdict.claims[0].witnesses)


class TestGaussian:
    def test_z4_violation_is_exact(self, poly_service, gaussian_service, z4):
        verdict = gaussian_service.check_gaussian_slice(z4, trials=10, seed=1)
        assert verdict.status is Status.REFUTED
        assert verdict.consistent
        violation = verdict.claims[-1].witnesses[0]
        k = violation.truncation
        assert poly_service.truncated_membership(violation.element, violation.content_generators, k) is None

    @pytest.mark.parametrize("literal", ["Z6", "Z5"])
    def test_vnr_rings_show_no_violation(self, gaussian_service, literal):
        verdict = gaussian_service.check_gaussian_slice(parse_ring(literal), trials=15, seed=2)
        assert verdict.status is not Status.REFUTED
        assert verdict.claims[-1].detail["violations"] == 0

    @pytest.mark.slow
    @pytest.mark.parametrize("literal", ["Z6", "Z5"])
    def test_vnr_rings_at_two_hundred_trials(self, gaussian_service, literal):
        verdict = gaussian_service.check_gaussian_slice(parse_ring(literal), trials=200, seed=0)
        detail = verdict.claims[-1].detail
        assert detail["violations"] == 0
        assert detail["outcomes"]["inconclusive"] == 0
        assert verdict.status is Status.VERIFIED

    def test_vnr_inconclusive_pair_is_retried_at_larger_bounds(
            self, ring_service, poly_service, config, monkeypatch, z6):
        service = GaussianService(ring_service, poly_service, config)
        bounds = []

        def compare(f, g, degree):
            bounds.append(degree)
            return ("holds" if degree == 4 else "inconclusive"), None

        monkeypatch.setattr(service, "compare_contents", compare)
        verdict = service.check_gaussian_slice(z6, trials=1, seed=0)
        assert bounds == [2, 3, 4]
        assert verdict.status is Status.VERIFIED
        assert verdict.claims[-1].detail["retried"] == 1

    def test_retry_exhausted_reports_highest_bound(self, ring_service, poly_service, config, monkeypatch, z6):
        service = GaussianService(ring_service, poly_service, config)
        monkeypatch.setattr(service, "compare_contents", lambda f, g, degree: ("inconclusive", None))
        assert service.check_gaussian_slice(z6, trials=2, seed=0).label == "bounded-consistent(4)"

    def test_non_vnr_pairs_are_not_retried(self, ring_service, poly_service, config, monkeypatch, z4):
        service = GaussianService(ring_service, poly_service, config)
        bounds = []

        def compare(f, g, degree):
            bounds.append(degree)
            return "inconclusive", None

        monkeypatch.setattr(service, "compare_contents", compare)
        verdict = service.check_gaussian_slice(z4, trials=1, seed=0)
        assert bounds == [2, 2]
        assert verdict.label == "bounded-consistent(2)"

    def test_nilpotent_probes_only_in_non_reduced_rings(self, gaussian_service, z4, z6):
        assert len(gaussian_service.nilpotent_probes(z4)) == 1
        assert gaussian_service.nilpotent_probes(z6) == []

    def test_product_content_witnesses(self, gaussian_service):
        probes = gaussian_service.nilpotent_probes(parse_ring("Z9"))
        f, g = probes[0]
        product = gaussian_service.outer_product(f, g)
        witnesses = gaussian_service.product_content_witnesses(f, g, product)
        assert len(witnesses) == len(product)
        assert all(w.check() for w in witnesses)


SUITE = ["Z4", "Z5", "Z6", "Z8", "Z9", "Z12", "Z30", "Z2xZ3", "Z2xZ9", "Z4xZ3"]


@pytest.mark.parametrize("literal", SUITE)
def test_suite_generator_count_vnr_slice_and_descent(ring_service, theorem_service, literal):
    ring = parse_ring(literal)
    count = theorem_service.for_every_ideal(
        "generator-count", ring, lambda ideal: theorem_service.check_generator_count(ideal, 1)
    )
    assert count.status is Status.VERIFIED
    vnr = theorem_service.check_vnr_prufer_slice(ring)
    assert vnr.status is Status.VERIFIED
    assert vnr.claims[0].detail["all_vanish"] is ring_service.is_vnr(ring)
    descent = theorem_service.check_prufer_descent(ring, 1)
    assert descent.status is Status.VERIFIED
    assert descent.claims[0].detail["not_invertible"] == []
