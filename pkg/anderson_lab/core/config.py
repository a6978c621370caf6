"""Configuration management.

Values come from the environment (optionally a ``.env`` file) and are frozen
into a :class:`Settings` instance. Services take explicit overrides, so the
module-level ``settings`` object is only a default.
"""
import os
from dataclasses import asdict, dataclass, replace
from typing import Dict, List, Tuple

from dotenv import load_dotenv

load_dotenv()

DEFAULT_CAP = 4096


@dataclass(frozen=True)
class Settings:
    """Runtime configuration for the lab."""

    app_name: str = "anderson-lab"
    ring_cap: int = DEFAULT_CAP
    log_level: str = "WARNING"
    seed: int = 0
    degree: int = 1
    member_degree: int = 2
    oracle_degree: int = 3
    gauss_outer_degree: int = 2
    gauss_inner_degree: int = 1
    workers: int = 4

    def with_overrides(self, **changes) -> "Settings":
        """Return a copy with the given fields replaced."""
        return replace(self, **changes)


# env var name -> (field name, minimum value)
_INT_VARS = {
    "ANDERSON_CAP": ("ring_cap", 1),
    "ANDERSON_SEED": ("seed", 0),
    "ANDERSON_DEGREE": ("degree", 0),
    "ANDERSON_MEMBER_DEGREE": ("member_degree", 0),
    "ANDERSON_ORACLE_DEGREE": ("oracle_degree", 0),
    "ANDERSON_GAUSS_OUTER": ("gauss_outer_degree", 0),
    "ANDERSON_GAUSS_INNER": ("gauss_inner_degree", 0),
    "ANDERSON_WORKERS": ("workers", 1),
}


def _read_int_vars(environ) -> Tuple[Dict[str, int], List[str]]:
    values = {}
    errors = []
    for var, (field_name, minimum) in _INT_VARS.items():
        raw = environ.get(var)
        if raw is None or raw.strip() == "":
            continue
        try:
            value = int(raw)
        except ValueError:
            errors.append(f"{var} must be an integer, got {raw!r}")
            continue
        if value < minimum:
            errors.append(f"{var} must be >= {minimum}, got {value}")
            continue
        values[field_name] = value
    return values, errors


def load_settings(environ=None) -> Settings:
    """
    Build settings from environment variables.

    Invalid values are ignored here and reported by validate_configuration().

    Args:
        environ: Mapping to read from (defaults to os.environ)

    Returns:
        Settings: Frozen configuration
    """
    environ = os.environ if environ is None else environ
    values, _ = _read_int_vars(environ)
    level = environ.get("ANDERSON_LOG_LEVEL")
    if level:
        values["log_level"] = level.upper()
    return Settings(**values)


def validate_configuration(environ=None) -> dict:
    """
    Validate environment configuration.

    Returns:
        dict: {"valid": bool, "errors": [...], "settings": {...}}
    """
    environ = os.environ if environ is None else environ
    _, errors = _read_int_vars(environ)
    level = environ.get("ANDERSON_LOG_LEVEL")
    if level and level.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        errors.append(f"ANDERSON_LOG_LEVEL is not a logging level: {level!r}")
    return {
        "valid": not errors,
        "errors": errors,
        "settings": asdict(load_settings(environ)),
    }


def print_configuration_status() -> None:
    """Print the configuration report (diagnostic helper)."""
    status = validate_configuration()
    icon = "OK" if status["valid"] else "INVALID"
    print(f"[{icon}] {settings.app_name} configuration")
    for key, value in sorted(status["settings"].items()):
        print(f"   {key}: {value}")
    for error in status["errors"]:
        print(f"   - {error}")


settings = load_settings()


if __name__ == "__main__":
    print_configuration_status()
