import math

import pytest
from hypothesis import given, settings, strategies as st

from anderson_lab.core.exceptions import CapExceededError, ParseError
from anderson_lab.models.poly import MultSetKind, Poly
from anderson_lab.models.verdict import NotFoundUpTo, Witness
from anderson_lab.services.poly_service import PolyService
from anderson_lab.services.ring_service import RingService
from anderson_lab.utils.parse_utils import parse_poly, parse_ring


def poly(ring, text):
    return parse_poly(ring, text)


class TestArithmetic:
    def test_square_free_identity(self, z6):
        assert poly(z6, "X+2") * poly(z6, "2X+3") == poly(z6, "2X^2+X")

    def test_nilpotent_square(self, z4):
        assert (poly(z4, "2X+2") ** 2).is_zero

    def test_evaluate(self, z6):
        assert poly(z6, "2X^2+X")(z6.zero).is_zero
        assert poly(z6, "X^2+1").evaluate(z6.element(2)) == z6.element(5)

    def test_degree_of_zero_is_minus_infinity(self, z6):
        assert Poly.zero(z6).degree == -math.inf
        assert poly(z6, "6X^3+2").degree == 0

    def test_shift_truncate_drop_constant(self, z6):
        p = poly(z6, "3X^2+2X+1")
        assert p.shift(2) == poly(z6, "3X^4+2X^3+X^2")
        assert p.truncate(2) == poly(z6, "2X+1")
        assert p.drop_constant() == poly(z6, "3X+2")

    def test_product_ring_coefficients(self, z2xz3):
        p = poly(z2xz3, "(1,0)X+1")
        assert p.leading_coefficient == z2xz3.element((1, 0))
        assert p.constant_term == z2xz3.one
        assert str(p) == "(1,0)X+(1,1)"


class TestParsing:
    @pytest.mark.parametrize("text", ["2X^2+X+3", "X^3+5", "4X", "0", "X"])
    def test_format_round_trip(self, z6, text):
        assert str(poly(z6, text)) == text

    def test_implicit_multiplication_and_negatives(self, z6):
        assert poly(z6, "2(X+1)") == poly(z6, "2X+2")
        assert poly(z6, "-X") == poly(z6, "5X")

    @pytest.mark.parametrize("text", ["", "X^", "Y+1", "X/2", "1.5X", "(1,2)X"])
    def test_malformed(self, z6, text):
        with pytest.raises(ParseError, match="malformed polynomial"):
            parse_poly(z6, text)

    @pytest.mark.parametrize("text", ["Q7", "Z", "Z1", "Z4xx"])
    def test_unknown_ring(self, text):
        with pytest.raises(ParseError, match="unknown ring literal"):
            parse_ring(text)


class TestContentAndSets:
    def test_content(self, poly_service, z6):
        assert sorted(x.coords[0] for x in poly_service.content(poly(z6, "2X+4")).elements) == [0, 2, 4]
        assert poly_service.content(poly(z6, "3X+2")).is_unit_ideal
        assert poly_service.content(Poly.zero(z6)).is_zero

    def test_multiplicative_sets(self, z6):
        assert poly(z6, "3X+1").in_set(MultSetKind.A)
        assert poly(z6, "2X+5").in_set(MultSetKind.A_SATURATED)
        assert not poly(z6, "2X+5").in_set(MultSetKind.A)
        assert not poly(z6, "X^2+2X").in_set(MultSetKind.U_TILDE)
        assert poly(z6, "X^2+2X").in_set(MultSetKind.U)
        assert poly(z6, "3X+2").in_set(MultSetKind.N)
        assert not Poly.zero(z6).in_set(MultSetKind.N)

    def test_polys_in_set_filters_by_kind(self, poly_service, z4):
        members = list(poly_service.polys_in_set(z4, 1, MultSetKind.A))
        assert len(members) == 4
        assert all(poly_service.in_multiplicative_set(p, MultSetKind.A) for p in members)
        assert len(list(poly_service.polys_in_set(z4, 1, MultSetKind.A_SATURATED))) == 8


class TestMembership:
    def test_x_squared_in_x(self, poly_service, z6):
        witness = poly_service.membership_bounded(poly(z6, "X^2"), [poly(z6, "X")], 1)
        assert isinstance(witness, Witness) and witness.check()
        assert witness.cofactors[0] == poly(z6, "X")

    def test_one_not_in_nilpotent_constant_ideal(self, poly_service, z4):
        for d in range(3):
            result = poly_service.membership_bounded(Poly.one(z4), [poly(z4, "2X+2")], d)
            assert result == NotFoundUpTo(d)

    def test_square_free_cofactor(self, poly_service, z6):
        witness = poly_service.membership_bounded(poly(z6, "2X^2+X"), [poly(z6, "X+2")], 1)
        assert isinstance(witness, Witness)
        assert witness.cofactors[0] == poly(z6, "2X+3")

    def test_membership_with_denominator(self, poly_service, z6):
        # X·(2X+1) = (X+2)(2X+3)
        witness = poly_service.membership_with_denominator(poly(z6, "X"), [poly(z6, "X+2")], 1, 1)
        assert isinstance(witness, Witness) and witness.check()
        assert witness.denominator.constant_term.is_one

    def test_truncated_membership_refutes(self, poly_service, z4):
        gens = [poly(z4, "3X^2")]
        assert poly_service.truncated_membership(poly(z4, "2X"), gens, 1) is not None
        assert poly_service.truncated_membership(poly(z4, "2X"), gens, 2) is None


class TestRegularity:
    @pytest.mark.parametrize("literal", ["Z4", "Z6", "Z2xZ2"])
    @pytest.mark.parametrize("kind", list(MultSetKind))
    def test_sets_are_regular(self, poly_service, literal, kind):
        report = poly_service.check_regularity(parse_ring(literal), 2, kind)
        assert report.holds
        assert report.checked > 0

    def test_zero_divisor_found_outside_the_sets(self, ring_service, poly_service, z4):
        matrix = poly_service.multiplication_matrix(poly(z4, "2X+2"), 1)
        assert ring_service.has_nonzero_kernel(z4, matrix)

    def test_cap(self, z6):
        service = PolyService(RingService(cap=8))
        with pytest.raises(CapExceededError):
            service.check_regularity(z6, 2)


@settings(max_examples=50, derandomize=True, deadline=None)
@given(
    literal=st.sampled_from(["Z4", "Z6", "Z2xZ3"]),
    a=st.lists(st.integers(min_value=0, max_value=5), max_size=3),
    b=st.lists(st.integers(min_value=0, max_value=5), max_size=3),
    c=st.lists(st.integers(min_value=0, max_value=5), max_size=3),
)
def test_ring_axioms(literal, a, b, c):
    ring = parse_ring(literal)
    f, g, h = (Poly.from_ints(ring, v) for v in (a, b, c))
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f - f == Poly.zero(ring)
    assert (f * g).evaluate(ring.element(2)) == f(ring.element(2)) * g(ring.element(2))


@pytest.mark.slow
@pytest.mark.parametrize("literal", ["Z4", "Z6", "Z9"])
def test_unit_constant_term_denominators_are_regular_to_degree_three(poly_service, literal):
    report = poly_service.check_regularity(parse_ring(literal), 3, MultSetKind.A_SATURATED)
    assert report.holds
