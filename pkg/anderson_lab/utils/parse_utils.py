"""Parsing and formatting of ring, polynomial, fraction and ideal literals."""
import re
from typing import List, Tuple

from sympy import Poly as SymPoly
from sympy import Symbol
from sympy.parsing.sympy_parser import (
    convert_xor, implicit_multiplication_application, parse_expr,
    standard_transformations,
)

from anderson_lab.core.exceptions import ParseError
from anderson_lab.models.poly import MultSetKind, Poly
from anderson_lab.models.ring import RingElem, RingSpec

_X = Symbol("X")
_TRANSFORMATIONS = standard_transformations + (implicit_multiplication_application, convert_xor)
_RING_RE = re.compile(r"^z(\d+)(?:xz(\d+))*$")
_POLY_CHARS_RE = re.compile(r"^[0-9X+\-*^(), ]+$")
_TUPLE_RE = re.compile(r"\(\s*-?\d+\s*(?:,\s*-?\d+\s*)+\)")


def parse_ring(text: str) -> RingSpec:
    """
    Parse a ring literal such as ``Z6`` or ``Z4xZ9`` (case-insensitive).

    Raises:
        ParseError: Unknown ring literal
    """
    literal = text.strip().lower().replace(" ", "")
    if not _RING_RE.match(literal):
        raise ParseError(f"unknown ring literal: {text!r}")
    moduli = tuple(int(part[1:]) for part in literal.split("x"))
    try:
        return RingSpec(moduli)
    except ValueError as e:
        raise ParseError(f"unknown ring literal: {text!r} ({e})")


def parse_element(ring: RingSpec, text: str) -> RingElem:
    """Parse ``3`` (reduced into every coordinate) or ``(1,0)``."""
    literal = text.strip()
    try:
        if literal.startswith("(") and literal.endswith(")"):
            inner = literal[1:-1]
            if "," in inner:
                return ring.element([int(part) for part in inner.split(",")])
            literal = inner
        return ring.element(int(literal))
    except Exception as e:
        raise ParseError(f"malformed ring element: {text!r} ({e})")


def _coordinate_projection(text: str, coordinate: int, width: int) -> str:
    """Replace every coordinate tuple ``(a,b,...)`` by its component at ``coordinate``."""
    def pick(match: re.Match) -> str:
        parts = match.group(0)[1:-1].split(",")
        if len(parts) != width:
            raise ParseError(f"malformed polynomial: {text!r} (coordinate tuple of wrong width)")
        return "(" + parts[coordinate].strip() + ")"
    return _TUPLE_RE.sub(pick, text)


def parse_poly(ring: RingSpec, text: str) -> Poly:
    """
    Parse a polynomial literal such as ``2X^2+X+3`` or ``(1,0)X+1``.

    Each coordinate is parsed separately as an integer polynomial with sympy
    and reduced modulo its modulus.

    Raises:
        ParseError: Malformed polynomial
    """
    literal = text.strip().replace("x", "X")
    if not literal or not _POLY_CHARS_RE.match(literal):
        raise ParseError(f"malformed polynomial: {text!r}")

    columns: List[List[int]] = []
    for coordinate, modulus in enumerate(ring.moduli):
        projected = _coordinate_projection(literal, coordinate, ring.width)
        if "," in projected:
            raise ParseError(f"malformed polynomial: {text!r} (coordinate tuple of wrong width)")
        try:
            expr = parse_expr(projected, transformations=_TRANSFORMATIONS, evaluate=True)
            if expr.free_symbols - {_X}:
                raise ParseError(f"malformed polynomial: {text!r}")
            coeffs = SymPoly(expr, _X).all_coeffs()
        except ParseError:
            raise
        except Exception as e:
            raise ParseError(f"malformed polynomial: {text!r} ({type(e).__name__})")
        if any(not c.is_Integer for c in coeffs):
            raise ParseError(f"malformed polynomial: {text!r} (non-integer coefficient)")
        columns.append([int(c) % modulus for c in reversed(coeffs)])

    size = max(len(column) for column in columns)
    coords = [
        [column[i] if i < len(column) else 0 for column in columns]
        for i in range(size)
    ]
    return Poly.from_ints(ring, coords)


def split_top_level(text: str, separator: str) -> List[str]:
    """Split on ``separator`` outside parentheses and brackets."""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {text!r}")
        if ch == separator and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise ParseError(f"unbalanced brackets in {text!r}")
    parts.append("".join(current))
    return parts


def parse_fraction(text: str) -> Tuple[RingSpec, MultSetKind, Poly, Poly]:
    """
    Parse ``(X+2)/(2X+1)@Z6:A``. The kind defaults to A and the
    denominator to 1.

    Returns:
        tuple: (ring, kind, numerator, denominator)
    """
    if "@" not in text:
        raise ParseError(f"malformed fraction: {text!r} (expected num/den@ring:kind)")
    body, _, tail = text.rpartition("@")
    ring_text, _, kind_text = tail.partition(":")
    ring = parse_ring(ring_text)
    try:
        kind = MultSetKind.parse(kind_text) if kind_text else MultSetKind.A
    except ValueError as e:
        raise ParseError(f"malformed fraction: {text!r} ({e})")

    parts = split_top_level(body, "/")
    if len(parts) > 2 or not parts[0].strip():
        raise ParseError(f"malformed fraction: {text!r}")
    num = parse_poly(ring, parts[0])
    den = parse_poly(ring, parts[1]) if len(parts) == 2 else Poly.one(ring)
    return ring, kind, num, den


def parse_ideal_spec(ring: RingSpec, text: str) -> Tuple[str, list]:
    """
    Parse an ideal spec.

    ``(g1,g2)`` is the extension of an ideal of R, ``(g1,g2)+X`` the
    I + XR[X] shape and ``[p1; p2]`` a general list of polynomials.

    Returns:
        tuple: (shape, generators) where shape is one of "extension",
               "i_plus_x", "general"; generators are RingElem for the first
               two shapes and Poly for the last
    """
    literal = text.strip().replace(" ", "")
    if literal.startswith("[") and literal.endswith("]"):
        inner = literal[1:-1]
        gens = [parse_poly(ring, part) for part in inner.split(";") if part.strip()]
        return "general", gens

    shape = "extension"
    upper = literal.upper()
    if upper.endswith("+X"):
        shape = "i_plus_x"
        literal = literal[:-2]
    if not (literal.startswith("(") and literal.endswith(")")):
        raise ParseError(f"malformed ideal spec: {text!r}")
    inner = literal[1:-1]
    parts = [part for part in split_top_level(inner, ",") if part.strip()] if inner else []
    return shape, [parse_element(ring, part) for part in parts]


def format_poly(p: Poly) -> str:
    """Render a polynomial in the literal syntax accepted by parse_poly."""
    if p.is_zero:
        return "0"
    terms = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if c.is_zero:
            continue
        coefficient = str(c)
        if i == 0:
            terms.append(coefficient)
            continue
        monomial = "X" if i == 1 else f"X^{i}"
        terms.append(monomial if c.is_one else coefficient + monomial)
    return "+".join(terms)


def format_fraction(num: Poly, den: Poly) -> str:
    if den.degree == 0 and den.constant_term.is_one:
        return format_poly(num)
    return f"({format_poly(num)})/({format_poly(den)})"
