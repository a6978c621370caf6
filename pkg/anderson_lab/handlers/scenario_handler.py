"""Scenario file runner.

A scenario file holds one scenario per line::

    name | ring | command | params | expected

``#`` starts a comment. The command column reuses CLI tokens
(``theorem pir2``, ``gen-search (2)+X``, ``member X/(X+1):A (2)+X``), params
are ``key=value`` pairs and the expected column is compared with the
command's outcome string.
"""
import shlex
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Tuple

from anderson_lab.core.exceptions import AndersonLabError, ScenarioParseError
from anderson_lab.core.logger import get_logger
from anderson_lab.handlers.command_handler import (
    PREDICATES, THEOREMS, CommandHandler, Result, error_result,
)
from anderson_lab.models.scenario import Scenario
from anderson_lab.utils.parse_utils import parse_ring

logger = get_logger(__name__)

COMMANDS = ("spectrum", "check", "member", "gen-search", "theorem")
PARAMS = ("degree", "trials", "seed")


def _parse_params(line_number: int, text: str) -> Dict[str, str]:
    params = {}
    for token in text.split():
        key, sep, value = token.partition("=")
        if not sep or not key or not value:
            raise ScenarioParseError(line_number, f"malformed parameter {token!r} (expected key=value)")
        if key not in PARAMS:
            raise ScenarioParseError(line_number, f"unknown parameter {key!r}")
        try:
            if int(value) < 0:
                raise ValueError
        except ValueError:
            raise ScenarioParseError(line_number, f"parameter {key} must be a non-negative integer")
        params[key] = value
    return params


def _validate_command(line_number: int, tokens: List[str]) -> None:
    if not tokens or tokens[0] not in COMMANDS:
        raise ScenarioParseError(line_number, f"unknown command {' '.join(tokens)!r}")
    name, args = tokens[0], tokens[1:]
    expected_args = {"spectrum": 0, "check": 1, "member": 2, "gen-search": 1, "theorem": 1}[name]
    if len(args) != expected_args:
        raise ScenarioParseError(line_number, f"{name} takes {expected_args} argument(s), got {len(args)}")
    if name == "check" and args[0] not in PREDICATES:
        raise ScenarioParseError(line_number, f"unknown predicate {args[0]!r}")
    if name == "theorem" and args[0] not in THEOREMS:
        raise ScenarioParseError(line_number, f"unknown theorem {args[0]!r}")


def parse_scenarios(text: str) -> List[Scenario]:
    """
    Parse scenario file contents.

    Raises:
        ScenarioParseError: with the offending line number
    """
    scenarios = []
    seen = set()
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        columns = [column.strip() for column in line.split("|")]
        if len(columns) not in (4, 5):
            raise ScenarioParseError(line_number, "expected 'name | ring | command | params | expected'")
        name, ring, command, params = columns[:4]
        expected = columns[4] if len(columns) == 5 and columns[4] else None
        if not name:
            raise ScenarioParseError(line_number, "missing scenario name")
        if name in seen:
            raise ScenarioParseError(line_number, f"duplicate scenario name {name!r}")
        seen.add(name)
        try:
            parse_ring(ring)
            tokens = shlex.split(command)
        except AndersonLabError as e:
            raise ScenarioParseError(line_number, str(e))
        except ValueError as e:
            raise ScenarioParseError(line_number, f"malformed command: {e}")
        _validate_command(line_number, tokens)
        scenarios.append(Scenario(
            name=name,
            ring=ring,
            command=command,
            params=_parse_params(line_number, params),
            expected=expected,
            line_number=line_number,
        ))
    return scenarios


class ScenarioHandler:
    """Runs parsed scenarios through a CommandHandler."""

    def __init__(self, command_handler: CommandHandler, workers: int = 1):
        """
        Initialize scenario handler.

        Args:
            command_handler: CommandHandler used for every scenario
            workers: Thread pool size
        """
        self.command_handler = command_handler
        self.workers = max(1, workers)

    def dispatch(self, scenario: Scenario) -> Result:
        tokens = shlex.split(scenario.command)
        name, args = tokens[0], tokens[1:]
        handler = self.command_handler
        degree = scenario.int_param("degree")
        if name == "spectrum":
            return handler.handle_spectrum(scenario.ring)
        if name == "check":
            return handler.handle_check(scenario.ring, args[0])
        if name == "member":
            return handler.handle_member(args[0], args[1], degree, ring_literal=scenario.ring)
        if name == "gen-search":
            return handler.handle_gen_search(scenario.ring, args[0], degree)
        return handler.handle_theorem(
            args[0], scenario.ring, degree, scenario.int_param("trials"), scenario.int_param("seed"),
        )

    def run_one(self, scenario: Scenario) -> Dict[str, Any]:
        try:
            result, exit_code = self.dispatch(scenario)
            outcome = result.get("outcome")
        except AndersonLabError as e:
            logger.warning("scenario %s failed: %s", scenario.name, e)
            result, exit_code = error_result(e)
            outcome = f"error:{type(e).__name__}"

        if scenario.expected is not None:
            passed = scenario.matches(outcome)
        else:
            passed = exit_code == 0
        entry = {
            "name": scenario.name,
            "ring": scenario.ring,
            "command": scenario.command,
            "expected": scenario.expected,
            "outcome": outcome,
            "passed": passed,
            "result": result,
        }
        if not passed:
            entry["mismatch"] = f"expected {scenario.expected!r}, got {outcome!r}"
        return entry

    def run(self, scenarios: List[Scenario]) -> Tuple[Dict[str, Any], int]:
        """
        Run every scenario; results keep file order.

        Returns:
            tuple: (aggregate report, exit code)
        """
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            entries = list(pool.map(self.run_one, scenarios))
        passed = sum(1 for entry in entries if entry["passed"])
        report = {
            "success": True,
            "command": "scenarios",
            "scenarios": entries,
            "passed": passed,
            "failed": len(entries) - passed,
            "total": len(entries),
        }
        return report, 0 if passed == len(entries) else 1

    def run_file(self, path: str) -> Tuple[Dict[str, Any], int]:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            return error_result(ScenarioParseError(0, f"cannot read {path}: {e.strerror}"))
        return self.run(parse_scenarios(text))
