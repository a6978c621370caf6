"""Witnesses, certificates and theorem verdicts.

Every positive result carries a polynomial identity that can be re-evaluated
with plain Poly arithmetic; negative bounded results carry their bound.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from anderson_lab.models.poly import Poly

Product = Tuple[Poly, ...]


def _product(factors: Product, ring) -> Poly:
    result = Poly.one(ring)
    for f in factors:
        result = result * f
    return result


def _render_side(terms: Sequence[Product]) -> str:
    if not terms:
        return "0"
    return " + ".join("*".join(f"({p})" for p in term) for term in terms)


@dataclass(frozen=True)
class Identity:
    """
    An identity Σ Π lhs = Σ Π rhs in R[X], each side a sum of products.
    """

    lhs: Tuple[Product, ...]
    rhs: Tuple[Product, ...]

    @property
    def ring(self):
        for term in self.lhs + self.rhs:
            if term:
                return term[0].ring
        raise ValueError("empty identity")

    def evaluate(self) -> Tuple[Poly, Poly]:
        ring = self.ring
        left = Poly.zero(ring)
        for term in self.lhs:
            left = left + _product(term, ring)
        right = Poly.zero(ring)
        for term in self.rhs:
            right = right + _product(term, ring)
        return left, right

    def holds(self) -> bool:
        left, right = self.evaluate()
        return left == right

    def __str__(self) -> str:
        return f"{_render_side(self.lhs)} = {_render_side(self.rhs)}"

    def to_dict(self) -> Dict[str, Any]:
        return {"identity": str(self), "holds": self.holds()}


@dataclass(frozen=True)
class Witness:
    """
    target·denominator = Σ generators_i·cofactors_i in R[X].

    With denominator 1 this is membership in the ideal of R[X]; otherwise the
    denominator lies in A and the identity shows membership after
    localizing at A.
    """

    target: Poly
    generators: Tuple[Poly, ...]
    cofactors: Tuple[Poly, ...]
    denominator: Optional[Poly] = None

    def identity(self) -> Identity:
        lhs = (self.target,) if self.denominator is None else (self.target, self.denominator)
        rhs = tuple((g, q) for g, q in zip(self.generators, self.cofactors) if not q.is_zero)
        return Identity(lhs=(lhs,), rhs=rhs)

    def check(self) -> bool:
        if len(self.generators) != len(self.cofactors):
            return False
        if self.denominator is not None and not self.denominator.constant_term.is_one:
            return False
        return self.identity().holds()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target": str(self.target),
            "generators": [str(g) for g in self.generators],
            "cofactors": [str(q) for q in self.cofactors],
            "denominator": str(self.denominator) if self.denominator is not None else "1",
            "identity": str(self.identity()),
            "holds": self.check(),
        }


@dataclass(frozen=True)
class NotFoundUpTo:
    """Bounded search exhausted without a witness. Evidence, not proof."""

    bound: int
    searched: int = 0
    stats: Tuple[Tuple[str, int], ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        result = {"result": "not-found", "bound": self.bound, "searched": self.searched}
        if self.stats:
            result["stats"] = dict(self.stats)
        return result


@dataclass(frozen=True)
class Member:
    witness: Witness
    rule: str = "bounded"

    def to_dict(self) -> Dict[str, Any]:
        return {"result": "member", "rule": self.rule, "witness": self.witness.to_dict()}


@dataclass(frozen=True)
class NotMember:
    reason: str
    rule: str = "exact"

    def to_dict(self) -> Dict[str, Any]:
        return {"result": "not-member", "rule": self.rule, "reason": self.reason}


@dataclass(frozen=True)
class Certificate:
    """
    A single generator f of an ideal J of R[X]_A: f ∈ J exactly, and every
    generator of J lies in fR[X]_A by the attached witnesses.
    """

    generator: Poly
    ideal: str
    membership_rule: str
    witnesses: Tuple[Witness, ...]
    stats: Tuple[Tuple[str, int], ...] = ()

    def check(self) -> bool:
        return all(w.check() and w.generators == (self.generator,) for w in self.witnesses)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "result": "found",
            "generator": str(self.generator),
            "ideal": self.ideal,
            "generator_in_ideal": self.membership_rule,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "stats": dict(self.stats),
        }


class Status(str, Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    BOUNDED = "bounded-consistent"


@dataclass
class Claim:
    """One checked statement inside a verdict."""

    name: str
    status: Status
    bound: Optional[int] = None
    witnesses: List[Any] = field(default_factory=list)
    detail: Dict[str, Any] = field(default_factory=dict)

    @property
    def label(self) -> str:
        if self.status is Status.BOUNDED:
            return f"bounded-consistent({self.bound})"
        return self.status.value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "claim": self.name,
            "status": self.label,
            "witnesses": [w.to_dict() if hasattr(w, "to_dict") else w for w in self.witnesses],
            "detail": self.detail,
        }


@dataclass
class TheoremVerdict:
    """Aggregate verdict: refuted beats bounded-consistent beats verified."""

    theorem_id: str
    ring: str
    claims: List[Claim] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    # set when a refutation is what the theorem predicts for this ring
    refutation_expected: bool = False

    def add(self, claim: Claim) -> Claim:
        self.claims.append(claim)
        return claim

    @property
    def status(self) -> Status:
        statuses = {c.status for c in self.claims}
        if Status.REFUTED in statuses:
            return Status.REFUTED
        if Status.BOUNDED in statuses:
            return Status.BOUNDED
        return Status.VERIFIED

    @property
    def bound(self) -> Optional[int]:
        bounds = [c.bound for c in self.claims if c.status is Status.BOUNDED and c.bound is not None]
        return max(bounds) if bounds else None

    @property
    def label(self) -> str:
        if self.status is Status.BOUNDED:
            return f"bounded-consistent({self.bound})"
        return self.status.value

    @property
    def consistent(self) -> bool:
        """Whether the computation agrees with the theorem's prediction."""
        return self.status is not Status.REFUTED or self.refutation_expected

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theorem": self.theorem_id,
            "ring": self.ring,
            "status": self.label,
            "consistent_with_theorem": self.consistent,
            "claims": [c.to_dict() for c in self.claims],
            "notes": list(self.notes),
        }
