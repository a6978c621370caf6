import pytest
from hypothesis import given, settings, strategies as st

from anderson_lab.core.exceptions import (
    InvalidDenominatorError, KindMismatchError, NotAUnitError, UnsupportedKindError,
)
from anderson_lab.models.fraction import LocElem
from anderson_lab.models.poly import MultSetKind, Poly
from anderson_lab.utils.parse_utils import parse_fraction, parse_poly


def frac(text):
    ring, kind, num, den = parse_fraction(text)
    return LocElem(ring, kind, num, den)


class TestArithmetic:
    def test_sum_with_common_denominator(self):
        total = frac("X/(X+1)@Z6") + frac("1/(X+1)@Z6")
        assert total == LocElem.one(total.ring)

    def test_product_of_zero_divisors(self):
        assert (frac("2@Z6") * frac("3@Z6")).is_zero

    def test_square_free_generator_identity(self):
        product = frac("(X+2)/(2X+1)@Z6") * frac("2X+3@Z6")
        assert product == frac("X@Z6")

    def test_equality_by_cross_multiplication(self):
        assert frac("X/(X+1)@Z6") == frac("(X^2+X)/(X^2+2X+1)@Z6")
        assert frac("2@Z4") != frac("0@Z4")
        assert frac("2X/(2X+1)@Z4") == frac("2X@Z4")

    def test_fractions_are_not_hashable(self):
        with pytest.raises(TypeError):
            hash(frac("X@Z6"))

    def test_denominator_outside_set(self):
        with pytest.raises(InvalidDenominatorError):
            frac("1/(X+2)@Z6:A")
        assert frac("1/(X+5)@Z6:A_saturated").kind is MultSetKind.A_SATURATED

    def test_unit_constant_term_is_scaled_to_one(self):
        x = frac("(3X+1)/(X+5)@Z6:A")
        assert x.den.constant_term.is_one
        assert x.literal == "(3X+5)/(5X+1)@Z6:A"
        assert x == frac("(3X+5)/(5X+1)@Z6")
        assert frac("2/(X+3)@Z4").literal == "(2)/(3X+1)@Z4:A"

    def test_kind_mismatch(self):
        with pytest.raises(KindMismatchError):
            frac("1@Z6:A") + frac("1@Z6:N")

    def test_literal(self):
        assert frac("X/(X+1)@Z6").literal == "(X)/(X+1)@Z6:A"
        assert frac("3X+1@Z6").literal == "3X+1@Z6:A"


class TestUnits:
    @pytest.mark.parametrize("text, unit", [
        ("(3X+1)/(X+1)@Z6", True),
        ("X/(X+1)@Z6", False),
        ("2X+5@Z6", True),
        ("2X+2@Z4", False),
    ])
    def test_is_unit(self, localization_service, text, unit):
        assert localization_service.is_unit_loc(frac(text)) is unit

    def test_inverse(self, localization_service):
        x = frac("2X+5@Z6")
        inverse = localization_service.inverse_loc(x)
        assert x * inverse == LocElem.one(x.ring)
        assert inverse.den.constant_term.is_one

    def test_inverse_of_non_unit(self, localization_service):
        with pytest.raises(NotAUnitError):
            localization_service.inverse_loc(frac("X/(X+1)@Z6"))

    def test_other_kinds_unsupported(self, localization_service):
        with pytest.raises(UnsupportedKindError, match="kind A only"):
            localization_service.is_unit_loc(frac("1@Z6:N"))

    def test_search_agrees(self, localization_service):
        assert localization_service.unit_by_search(frac("2X+5@Z6"), 2)
        assert not localization_service.unit_by_search(frac("X@Z6"), 2)

    @pytest.mark.parametrize("literal", ["Z4", "Z6"])
    def test_unit_characterization(self, localization_service, literal):
        from anderson_lab.utils.parse_utils import parse_ring
        report = localization_service.check_unit_characterization(parse_ring(literal), 1)
        assert report.holds, report.failures
        assert report.checked == parse_ring(literal).cardinality ** 2

    @pytest.mark.slow
    @pytest.mark.parametrize("literal", ["Z4", "Z6"])
    def test_unit_characterization_degree_two(self, localization_service, literal):
        from anderson_lab.utils.parse_utils import parse_ring
        report = localization_service.check_unit_characterization(parse_ring(literal), 2)
        assert report.holds, report.failures
        assert report.checked == parse_ring(literal).cardinality ** 3


class TestEmbeddings:
    def test_a_fraction_is_valid_in_n(self):
        x = frac("1/(X+1)@Z6")
        assert x.reinterpret(MultSetKind.N).kind is MultSetKind.N

    def test_split_u_tilde(self, localization_service, z6):
        x = LocElem(z6, MultSetKind.U_TILDE, Poly.one(z6), Poly.x(z6))
        a_part, k = localization_service.split_u_tilde(x)
        assert k == 1
        assert a_part == LocElem.one(z6)

    @pytest.mark.parametrize("literal", ["Z4", "Z6", "Z2xZ3"])
    def test_canonical_embeddings(self, localization_service, literal):
        from anderson_lab.utils.parse_utils import parse_ring
        report = localization_service.canonical_embeddings(parse_ring(literal), 1, 40, seed=3)
        assert report.holds, report.failures
        assert report.facts["a_subring_of_n"]

    @pytest.mark.parametrize("literal", ["Z4", "Z6", "Z9"])
    def test_congruence(self, localization_service, literal):
        from anderson_lab.utils.parse_utils import parse_ring
        report = localization_service.check_congruence(parse_ring(literal), 2, 40, seed=11)
        assert report.holds, report.failures
        assert report.checked == 40


@settings(max_examples=40, derandomize=True, deadline=None)
@given(
    num=st.lists(st.integers(min_value=0, max_value=3), max_size=3),
    tail=st.lists(st.integers(min_value=0, max_value=3), max_size=2),
    other=st.lists(st.integers(min_value=0, max_value=3), max_size=3),
)
def test_field_laws_hold_on_fractions(num, tail, other):
    from anderson_lab.utils.parse_utils import parse_ring
    ring = parse_ring("Z4")
    den = Poly.from_ints(ring, [1] + tail)
    a = LocElem.of(Poly.from_ints(ring, num), den)
    b = LocElem.of(Poly.from_ints(ring, other))
    assert a + b == b + a
    assert a * (b + b) == a * b + a * b
    assert a - a == LocElem.zero(ring)
    assert a * LocElem.one(ring) == a


def test_regular_denominators_make_equality_transitive(z4):
    """Plain cross-multiplication is an equivalence because every denominator is regular."""
    base = LocElem.of(parse_poly(z4, "2X+1"), parse_poly(z4, "X+1"))
    s = parse_poly(z4, "2X+1")
    t = parse_poly(z4, "3X^2+1")
    b = LocElem.of(base.num * s, base.den * s)
    c = LocElem.of(b.num * t, b.den * t)
    assert base == b and b == c and base == c
