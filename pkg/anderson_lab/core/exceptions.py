"""Custom exception classes for the Anderson ring lab."""


class AndersonLabError(Exception):
    """Base class for every error raised by the lab.

    Attributes:
        exit_code: Process exit code the CLI uses when this error escapes.
    """

    exit_code = 2

    def __init__(self, message: str = None):
        super().__init__(message or self.default_message)

    default_message = "anderson lab error"


class RingMismatchError(AndersonLabError):
    default_message = "ring mismatch"


class NotAUnitError(AndersonLabError):
    default_message = "not a unit"


class CapExceededError(AndersonLabError):
    """Ring cardinality is above the configured cap."""

    exit_code = 3
    default_message = "ring too large"

    def __init__(self, cardinality: int = None, cap: int = None):
        self.cardinality = cardinality
        self.cap = cap
        if cardinality is not None and cap is not None:
            super().__init__(f"ring too large: cardinality {cardinality} exceeds cap {cap}")
        else:
            super().__init__()


class DimensionMismatchError(AndersonLabError):
    default_message = "dimension mismatch"


class KindMismatchError(AndersonLabError):
    default_message = "kind mismatch"


class InvalidDenominatorError(AndersonLabError):
    default_message = "denominator is not in the multiplicative set"


class UnsupportedKindError(AndersonLabError):
    default_message = "unit test implemented for kind A only"


class NotMaximalError(AndersonLabError):
    default_message = "ideal is not maximal"


class InvariantViolationError(AndersonLabError):
    """An internal cross-check failed; always a bug or a false theorem."""

    exit_code = 1
    default_message = "invariant violated"


class ParseError(AndersonLabError):
    default_message = "could not parse input"


class ScenarioParseError(ParseError):
    """Scenario file line could not be parsed."""

    def __init__(self, line_number: int, message: str):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")
