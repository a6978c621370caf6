"""
Anderson lab command-line entry point.

Every subcommand prints a single JSON document on standard output and
returns an exit code: 0 success, 1 refuted expectation, 2 usage error,
3 ring cardinality cap exceeded.
"""
import argparse
import sys
from typing import List, Optional

from anderson_lab import __version__
from anderson_lab.core.config import settings as default_settings
from anderson_lab.core.exceptions import AndersonLabError, ParseError
from anderson_lab.core.logger import get_logger, setup_logging
from anderson_lab.handlers.command_handler import PREDICATES, THEOREMS, CommandHandler, error_result
from anderson_lab.handlers.scenario_handler import ScenarioHandler
from anderson_lab.services.gaussian_service import GaussianService
from anderson_lab.services.localization_service import LocalizationService
from anderson_lab.services.poly_service import PolyService
from anderson_lab.services.ring_service import RingService
from anderson_lab.services.spectrum_service import SpectrumService
from anderson_lab.services.theorem_service import TheoremService
from anderson_lab.utils.json_utils import canonical_dumps

logger = get_logger(__name__)

# Global service instances (initialized lazily)
_services_config = None
ring_service = None
poly_service = None
localization_service = None
spectrum_service = None
theorem_service = None
gaussian_service = None
command_handler = None
scenario_handler = None


def initialize_services(config=None):
    """Initialize all services lazily; rebuilt only when the settings change."""
    global _services_config, ring_service, poly_service, localization_service
    global spectrum_service, theorem_service, gaussian_service
    global command_handler, scenario_handler

    config = config or default_settings
    if _services_config == config:
        return

    ring_service = RingService(cap=config.ring_cap)
    poly_service = PolyService(ring_service)
    localization_service = LocalizationService(poly_service, config)
    spectrum_service = SpectrumService(ring_service, poly_service, localization_service, config)
    theorem_service = TheoremService(ring_service, poly_service, spectrum_service, config)
    gaussian_service = GaussianService(ring_service, poly_service, config)

    command_handler = CommandHandler(ring_service, poly_service, localization_service,
                                     spectrum_service, theorem_service, gaussian_service, config)
    scenario_handler = ScenarioHandler(command_handler, workers=config.workers)
    _services_config = config
    logger.debug("services initialized (cap=%d, seed=%d)", config.ring_cap, config.seed)


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises ParseError instead of exiting."""

    def error(self, message):
        raise ParseError(message)


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _positive(text: str) -> int:
    value = _non_negative(text)
    if value == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="anderson-lab", description="Exact computations in R[X]_A over finite rings")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--cap", type=_positive, help="ring cardinality cap (env ANDERSON_CAP)")
    parser.add_argument("--log-level", help="logging level (env ANDERSON_LOG_LEVEL)")
    parser.add_argument("--seed", type=_non_negative, help="PRNG seed for sampling commands")
    sub = parser.add_subparsers(dest="command", parser_class=ArgumentParser)
    sub.required = True

    spectrum = sub.add_parser("spectrum", help="maximal spectrum of R[X]_A")
    spectrum.add_argument("ring")

    check = sub.add_parser("check", help="ring predicates")
    check.add_argument("ring")
    check.add_argument("predicate", choices=PREDICATES)

    member = sub.add_parser("member", help="membership of a fraction in an ideal of R[X]_A")
    member.add_argument("fraction", help="e.g. X/(X+1)@Z6:A")
    member.add_argument("ideal", help="e.g. (2)+X, (3) or [X+2; 3]")
    member.add_argument("--degree", type=_non_negative)

    gen_search = sub.add_parser("gen-search", help="bounded search for a single generator of (I+XR[X])_A")
    gen_search.add_argument("ring")
    gen_search.add_argument("ideal", help="e.g. (2)+X")
    gen_search.add_argument("--degree", type=_non_negative)

    theorem = sub.add_parser("theorem", help="check a theorem over a ring")
    theorem.add_argument("theorem_id", choices=THEOREMS)
    theorem.add_argument("ring")
    theorem.add_argument("--degree", type=_non_negative)
    theorem.add_argument("--trials", type=_non_negative)
    theorem.add_argument("--seed", type=_non_negative, default=argparse.SUPPRESS)

    scenarios = sub.add_parser("scenarios", help="run a scenario file")
    scenarios.add_argument("file")
    return parser


def run_command(args: argparse.Namespace):
    """
    Dispatch a parsed command line.

    Returns:
        tuple: (result dict, exit code)
    """
    overrides = {}
    if args.cap is not None:
        overrides["ring_cap"] = args.cap
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.log_level:
        overrides["log_level"] = args.log_level.upper()
    config = default_settings.with_overrides(**overrides)
    setup_logging(config.log_level)
    initialize_services(config)

    if args.command == "spectrum":
        return command_handler.handle_spectrum(args.ring)
    if args.command == "check":
        return command_handler.handle_check(args.ring, args.predicate)
    if args.command == "member":
        return command_handler.handle_member(args.fraction, args.ideal, args.degree)
    if args.command == "gen-search":
        return command_handler.handle_gen_search(args.ring, args.ideal, args.degree)
    if args.command == "theorem":
        return command_handler.handle_theorem(args.theorem_id, args.ring, args.degree,
                                              args.trials, args.seed)
    return scenario_handler.run_file(args.file)


def main(argv: Optional[List[str]] = None) -> int:
    """Parse, run and print. Returns the process exit code."""
    try:
        args = build_parser().parse_args(argv)
        result, exit_code = run_command(args)
    except SystemExit as e:
        # --help / --version
        return e.code if isinstance(e.code, int) else 0
    except AndersonLabError as e:
        logger.warning("%s: %s", type(e).__name__, e)
        result, exit_code = error_result(e)
    except Exception as e:
        logger.exception("unexpected error")
        result, exit_code = error_result(e)

    print(canonical_dumps(result))
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
