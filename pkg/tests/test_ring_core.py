import itertools

import pytest
from hypothesis import given, settings, strategies as st

from anderson_lab.core.exceptions import (
    CapExceededError, DimensionMismatchError, NotAUnitError, RingMismatchError,
)
from anderson_lab.models.ring import RingSpec
from anderson_lab.services.ring_service import RingService
from anderson_lab.utils.parse_utils import parse_ring


def members(ideal):
    return sorted(x.coords[0] for x in ideal.elements)


class TestArithmetic:
    def test_examples(self, z4, z6, z2xz3):
        assert z6.element(4) + z6.element(5) == z6.element(3)
        assert z2xz3.element((1, 2)) * z2xz3.element((1, 2)) == z2xz3.element((1, 1))
        assert (z4.element(2) * z4.element(2)).is_zero

    def test_units(self, z4, z6, z2xz3):
        assert z6.element(5).is_unit()
        assert z6.element(5).inverse() == z6.element(5)
        assert not z4.element(2).is_unit()
        assert z2xz3.element((1, 2)).is_unit()

    def test_inverse_of_non_unit_raises(self, z4):
        with pytest.raises(NotAUnitError, match="not a unit"):
            z4.element(2).inverse()

    def test_ring_mismatch(self, ring_service, z4, z6):
        with pytest.raises(RingMismatchError, match="ring mismatch"):
            ring_service.add(z6, z6.element(1), z4.element(1))


class TestIdeals:
    def test_ideal_from_generators(self, ring_service, z4, z6):
        assert members(ring_service.ideal_from_generators(z6, [z6.element(2)])) == [0, 2, 4]
        assert members(ring_service.ideal_from_generators(z4, [])) == [0]
        assert ring_service.ideal_from_generators(z6, [z6.element(2), z6.element(3)]).is_unit_ideal

    def test_lattice_sizes(self, ring_service, z4, z6, z12):
        assert [members(i) for i in ring_service.ideal_lattice(z4)] == [[0], [0, 2], [0, 1, 2, 3]]
        assert len(ring_service.ideal_lattice(z6)) == 4
        assert len(ring_service.ideal_lattice(z12)) == 6
        assert len(ring_service.ideal_lattice(parse_ring("Z2xZ2"))) == 4

    @pytest.mark.parametrize("literal", ["Z4", "Z6", "Z8", "Z12", "Z2xZ2", "Z2xZ4", "Z3xZ3"])
    def test_lattice_contains_every_ideal(self, ring_service, literal):
        """Every ideal is generated by at most two elements, so closing all pairs finds them all."""
        ring = parse_ring(literal)
        lattice = set(ring_service.ideal_lattice(ring))
        elements = list(ring.elements())
        for a, b in itertools.combinations_with_replacement(elements, 2):
            assert ring_service.ideal_from_generators(ring, [a, b]) in lattice

    def test_every_ideal_is_principal(self, ring_service):
        ring = parse_ring("Z4xZ9")
        for ideal in ring_service.ideal_lattice(ring):
            assert ideal.min_generators == (0 if ideal.is_zero else 1)

    def test_min_generator_count_searches_past_given_generators(self, ring_service):
        ring = parse_ring("Z4xZ9")
        ideal = ring_service.ideal_from_generators(ring, [ring.element((2, 0)), ring.element((0, 3))])
        assert ring_service.min_generator_count(ideal) == 1
        assert ring_service.min_generator_count(ring_service.zero_ideal(ring)) == 0

    def test_max_ideals_and_min_primes(self, ring_service, z4, z6, z2xz3):
        assert sorted(members(m) for m in ring_service.max_ideals(z6)) == [[0, 2, 4], [0, 3]]
        assert [members(m) for m in ring_service.max_ideals(z4)] == [[0, 2]]
        assert [members(p) for p in ring_service.min_primes(z4)] == [[0, 2]]
        assert len(ring_service.max_ideals(z2xz3)) == 2

    def test_annihilator(self, ring_service, z6):
        two = ring_service.principal_ideal(z6.element(2))
        assert members(ring_service.annihilator(two)) == [0, 3]

    def test_cap_exceeded(self):
        service = RingService(cap=10)
        with pytest.raises(CapExceededError, match="ring too large"):
            service.ideal_lattice(parse_ring("Z12"))


class TestPredicates:
    @pytest.mark.parametrize("literal, vnr, reduced, local, field", [
        ("Z30", True, True, False, False),
        ("Z4", False, False, True, False),
        ("Z12", False, False, False, False),
        ("Z5", True, True, True, True),
        ("Z6", True, True, False, False),
        ("Z2xZ2", True, True, False, False),
        ("Z9", False, False, True, False),
    ])
    def test_table(self, ring_service, literal, vnr, reduced, local, field):
        predicates = ring_service.predicates(parse_ring(literal))
        assert predicates.is_vnr is vnr
        assert predicates.is_reduced is reduced
        assert predicates.is_local is local
        assert predicates.is_field is field
        assert parse_ring(literal).is_prime_field is field
        assert predicates.is_pir
        assert predicates.all_primes_maximal

    @pytest.mark.slow
    def test_vnr_iff_square_free(self, ring_service):
        from sympy import factorint, isprime
        for n in range(2, 1001):
            ring = RingSpec((n,))
            square_free = all(e == 1 for e in factorint(n).values())
            assert ring_service.is_vnr(ring) is square_free, n
            assert ring_service.is_reduced(ring) is square_free, n
            if n <= 200:
                assert ring_service.predicates(ring).is_field is isprime(n), n


class TestLocalFactors:
    def test_decompositions(self, ring_service):
        def literals(text):
            return [f.spec.literal for f in ring_service.local_factors(parse_ring(text))]

        assert literals("Z12") == ["Z4", "Z3"]
        assert literals("Z7") == ["Z7"]
        assert literals("Z2xZ9") == ["Z2", "Z9"]

    def test_local_factor_for_maximal(self, ring_service, z12):
        for maximal in ring_service.max_ideals(z12):
            factor = ring_service.local_factor_for(maximal)
            assert all(factor.project(m).coords[0] % factor.prime == 0 for m in maximal.elements)

    def test_maximal_ideal_generator(self, ring_service):
        ring = parse_ring("Z2xZ9")
        generators = [ring_service.maximal_ideal_generator(ring, f) for f in ring_service.local_factors(ring)]
        assert [str(g) for g in generators] == ["(0,1)", "(1,3)"]
        assert {ring_service.principal_ideal(g) for g in generators} == set(ring_service.max_ideals(ring))
        for g, factor in zip(generators, ring_service.local_factors(ring)):
            assert ring_service.local_factor_for(ring_service.principal_ideal(g)) == factor


class TestSolveLinear:
    def test_examples(self, ring_service, z4, z6):
        solution = ring_service.solve_linear(z6, [[z6.element(2)]], [z6.element(4)])
        assert z6.element(2) * solution[0] == z6.element(4)
        assert ring_service.solve_linear(z4, [[z4.element(2)]], [z4.element(1)]) is None

        e = z6.element
        solution = ring_service.solve_linear(z6, [[e(1), e(1)], [e(2), e(0)]], [e(1), e(0)])
        assert [x.coords[0] for x in solution] in ([0, 1], [3, 4])

    def test_dimension_mismatch(self, ring_service, z6):
        with pytest.raises(DimensionMismatchError):
            ring_service.solve_linear(z6, [[z6.one]], [z6.one, z6.one])
        with pytest.raises(DimensionMismatchError):
            ring_service.solve_linear(z6, [[z6.one], [z6.one, z6.one]], [z6.one, z6.one])

    @settings(max_examples=40, derandomize=True, deadline=None)
    @given(
        literal=st.sampled_from(["Z4", "Z6", "Z2xZ3", "Z2xZ4", "Z9"]),
        rows=st.integers(min_value=1, max_value=2),
        cols=st.integers(min_value=1, max_value=2),
        data=st.data(),
    )
    def test_agrees_with_brute_force(self, ring_service, literal, rows, cols, data):
        ring = parse_ring(literal)
        elements = list(ring.elements())
        pick = st.sampled_from(elements)
        matrix = [[data.draw(pick) for _ in range(cols)] for _ in range(rows)]
        rhs = [data.draw(pick) for _ in range(rows)]

        solution = ring_service.solve_linear(ring, matrix, rhs)
        oracle = ring_service.brute_force_solve(ring, matrix, rhs)
        assert (solution is None) == (oracle is None)
        if solution is not None:
            assert ring_service.matrix_apply(matrix, solution, ring.zero) == rhs

    def test_kernel(self, ring_service, z4, z6):
        assert ring_service.has_nonzero_kernel(z4, [[z4.element(2)]])
        assert not ring_service.has_nonzero_kernel(z6, [[z6.element(5)]])
        assert ring_service.nonzero_divisors_are_units(z6)
