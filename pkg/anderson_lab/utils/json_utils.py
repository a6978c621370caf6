"""Canonical JSON output: sorted keys, fixed indentation, no floating-point values."""
import json
import math
from enum import Enum
from typing import Any


def to_jsonable(value: Any) -> Any:
    """
    Convert a report value into plain JSON types.

    Floats never appear in reports: the only float in the domain is the
    degree of the zero polynomial, rendered as "-inf".
    """
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, float):
        if math.isinf(value):
            return "-inf" if value < 0 else "inf"
        if value.is_integer():
            return int(value)
        raise ValueError(f"floating-point value in report: {value}")
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(to_jsonable(v) for v in value)
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    return str(value)


def canonical_dumps(value: Any) -> str:
    """Serialize deterministically; dumps(loads(s)) reproduces s byte for byte."""
    return json.dumps(to_jsonable(value), sort_keys=True, indent=2, ensure_ascii=False)
