"""Command handler for the CLI subcommands."""
from typing import Any, Callable, Dict, Optional, Tuple

from anderson_lab.core.exceptions import AndersonLabError, ParseError
from anderson_lab.core.logger import get_logger
from anderson_lab.models.fraction import LocElem
from anderson_lab.models.loc_ideal import LocIdeal, LocIdealShape
from anderson_lab.models.poly import MultSetKind
from anderson_lab.models.ring import RingSpec
from anderson_lab.models.verdict import (
    Certificate, Claim, Member, NotMember, Status, TheoremVerdict,
)
from anderson_lab.utils.parse_utils import parse_fraction, parse_ideal_spec, parse_ring

logger = get_logger(__name__)

PREDICATES = ("vnr", "reduced", "pir", "local", "field")
THEOREMS = (
    "pir2", "generator-count", "contraction", "locally-principal", "gaussian",
    "vnr-prufer", "prufer-transfer", "prufer-descent", "oracle", "regularity", "embeddings",
)

Result = Tuple[Dict[str, Any], int]


def error_result(error: Exception) -> Result:
    """Convert an exception into the failure dictionary and exit code."""
    exit_code = error.exit_code if isinstance(error, AndersonLabError) else 1
    return {
        "success": False,
        "error": str(error),
        "error_type": type(error).__name__,
    }, exit_code


def verdict_from_reports(theorem_id: str, ring: RingSpec, reports) -> TheoremVerdict:
    """Wrap check reports (anything with ``holds`` and ``to_dict``) as claims."""
    verdict = TheoremVerdict(theorem_id, ring.literal)
    for report in reports:
        data = report.to_dict()
        name = data.get("check") or f"regularity of {data.get('kind')}"
        verdict.add(Claim(name, Status.VERIFIED if report.holds else Status.REFUTED, detail=data))
    return verdict


class CommandHandler:
    """Runs CLI subcommands against the service layer and builds result dictionaries."""

    def __init__(self, ring_service, poly_service, localization_service, spectrum_service,
                 theorem_service, gaussian_service, settings):
        """
        Initialize with service dependencies.

        Args:
            ring_service: RingService instance
            poly_service: PolyService instance
            localization_service: LocalizationService instance
            spectrum_service: SpectrumService instance
            theorem_service: TheoremService instance
            gaussian_service: GaussianService instance
            settings: Settings used for defaults
        """
        self.ring_service = ring_service
        self.poly_service = poly_service
        self.localization_service = localization_service
        self.spectrum_service = spectrum_service
        self.theorem_service = theorem_service
        self.gaussian_service = gaussian_service
        self.settings = settings

    # helpers

    def build_ideal(self, ring: RingSpec, spec: str) -> LocIdeal:
        shape, gens = parse_ideal_spec(ring, spec)
        if shape == "general":
            return LocIdeal.general(ring, gens)
        base = self.ring_service.ideal_from_generators(ring, gens)
        return LocIdeal.i_plus_x(base) if shape == "i_plus_x" else LocIdeal.extension(base)

    @staticmethod
    def fraction_literal(token: str, ring_literal: Optional[str]) -> str:
        """Attach ``@ring`` to a scenario fraction such as ``X/(X+1):A``."""
        if "@" in token or ring_literal is None:
            return token
        body, _, kind = token.rpartition(":") if ":" in token else (token, "", "A")
        return f"{body}@{ring_literal}:{kind or 'A'}"

    # subcommands

    def handle_spectrum(self, ring_literal: str) -> Result:
        """
        Handle ``spectrum <ring>``.

        Returns:
            tuple: (result dict, exit code)
        """
        ring = parse_ring(ring_literal)
        report = self.spectrum_service.max_spectrum_A(ring)
        result = {
            "success": True,
            "command": "spectrum",
            "report": report.to_dict(),
            "outcome": f"maximal_ideals={len(report.tops)}",
        }
        return result, 0 if report.holds else 1

    def handle_check(self, ring_literal: str, predicate: str) -> Result:
        """Handle ``check <ring> <predicate>``."""
        if predicate not in PREDICATES:
            raise ParseError(f"unknown predicate {predicate!r}; expected one of {', '.join(PREDICATES)}")
        ring = parse_ring(ring_literal)
        predicates = self.ring_service.predicates(ring).to_dict()
        value = predicates[f"is_{predicate}"]
        return {
            "success": True,
            "command": "check",
            "ring": ring.literal,
            "predicate": predicate,
            "value": value,
            "predicates": predicates,
            "outcome": "true" if value else "false",
        }, 0

    def handle_member(self, fraction_text: str, ideal_spec: str, degree: Optional[int] = None,
                      ring_literal: Optional[str] = None) -> Result:
        """Handle ``member <fraction> <ideal-spec>``."""
        ring, kind, num, den = parse_fraction(self.fraction_literal(fraction_text, ring_literal))
        if kind is not MultSetKind.A:
            raise ParseError(f"membership is decided in R[X]_A; got kind {kind.value}")
        x = LocElem(ring, kind, num, den)
        ideal = self.build_ideal(ring, ideal_spec)
        result = self.spectrum_service.loc_membership(x, ideal, degree)
        if isinstance(result, Member):
            outcome = "member"
        elif isinstance(result, NotMember):
            outcome = "not-member"
        else:
            outcome = "not-found"
        return {
            "success": True,
            "command": "member",
            "fraction": x.literal,
            "ideal": ideal.to_dict(),
            "result": result.to_dict(),
            "outcome": outcome,
        }, 0

    def handle_gen_search(self, ring_literal: str, ideal_spec: str, degree: Optional[int] = None) -> Result:
        """Handle ``gen-search <ring> <ideal-spec> --degree d``."""
        ring = parse_ring(ring_literal)
        ideal = self.build_ideal(ring, ideal_spec)
        if ideal.shape is not LocIdealShape.I_PLUS_X:
            raise ParseError(f"gen-search needs an ideal of the form (g1,...)+X, got {ideal_spec!r}")
        result = self.theorem_service.generator_search(ideal, degree)
        return {
            "success": True,
            "command": "gen-search",
            "ring": ring.literal,
            "ideal": ideal.to_dict(),
            "result": result.to_dict(),
            "outcome": "found" if isinstance(result, Certificate) else "not-found",
        }, 0

    def _theorem_runners(self, degree: Optional[int], trials: Optional[int],
                         seed: Optional[int]) -> Dict[str, Callable[[RingSpec], TheoremVerdict]]:
        ts = self.theorem_service
        ls = self.localization_service
        d = self.settings.degree if degree is None else degree
        return {
            "pir2": lambda ring: ts.check_pir2(ring, d),
            "generator-count": lambda ring: ts.for_every_ideal(
                "generator-count", ring, lambda i: ts.check_generator_count(i, d)),
            "contraction": lambda ring: ts.for_every_ideal("contraction", ring, ts.check_contraction),
            "locally-principal": lambda ring: ts.for_every_ideal(
                "locally-principal", ring, ts.check_locally_principal),
            "gaussian": lambda ring: self.gaussian_service.check_gaussian_slice(
                ring, 200 if trials is None else trials, seed, degree=degree),
            "vnr-prufer": ts.check_vnr_prufer_slice,
            "prufer-transfer": lambda ring: ts.check_prufer_transfer(ring, d),
            "prufer-descent": lambda ring: ts.check_prufer_descent(ring, d),
            "oracle": lambda ring: verdict_from_reports("oracle", ring, [
                self.spectrum_service.exact_rule_oracle_check(
                    ring, 500 if trials is None else trials, seed, degree),
            ]),
            "regularity": lambda ring: verdict_from_reports("regularity", ring, [
                self.poly_service.check_regularity(ring, d, kind)
                for kind in (MultSetKind.A_SATURATED, MultSetKind.N, MultSetKind.U, MultSetKind.U_TILDE)
            ]),
            "embeddings": lambda ring: verdict_from_reports("embeddings", ring, [
                ls.canonical_embeddings(ring, d, 50 if trials is None else trials, seed),
                ls.check_congruence(ring, max(d, 1), 50 if trials is None else trials, seed),
                ls.check_unit_characterization(ring, min(d, 2)),
            ]),
        }

    def handle_theorem(self, theorem_id: str, ring_literal: str, degree: Optional[int] = None,
                       trials: Optional[int] = None, seed: Optional[int] = None) -> Result:
        """Handle ``theorem <id> <ring> [--degree d --trials t --seed s]``."""
        runners = self._theorem_runners(degree, trials, seed)
        if theorem_id not in runners:
            raise ParseError(f"unknown theorem {theorem_id!r}; expected one of {', '.join(THEOREMS)}")
        ring = parse_ring(ring_literal)
        verdict = runners[theorem_id](ring)
        logger.info("theorem %s over %s: %s", theorem_id, ring, verdict.label)
        return {
            "success": True,
            "command": "theorem",
            "verdict": verdict.to_dict(),
            "outcome": verdict.label,
        }, 0 if verdict.consistent else 1
