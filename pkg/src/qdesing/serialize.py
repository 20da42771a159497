"""Canonical JSON rendering.  Rationals are exact strings, never decimals."""
from __future__ import annotations

import json
from fractions import Fraction

from .kernel import INF, FieldElement


def rational_to_json(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def field_element_to_json(c):
    if isinstance(c, FieldElement):
        return {"num": str(c.num), "den": str(c.den)}
    return rational_to_json(c)


def scalar_to_json(c):
    if isinstance(c, (int, Fraction)):
        return rational_to_json(c)
    return field_element_to_json(c)


def order_to_json(o):
    return "inf" if o == INF else int(o)


def _default(obj):
    if isinstance(obj, (Fraction, FieldElement)):
        return scalar_to_json(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, float) and obj == INF:
        return "inf"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _scrub(obj):
    if isinstance(obj, float):
        if obj == INF:
            return "inf"
        raise TypeError("floating point values are not serialized")
    if isinstance(obj, dict):
        return {str(k): _scrub(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_scrub(v) for v in obj]
    if isinstance(obj, (Fraction, FieldElement)):
        return scalar_to_json(obj)
    if hasattr(obj, "to_json"):
        return _scrub(obj.to_json())
    return obj


def dumps(obj, pretty: bool = True) -> str:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    data = _scrub(obj)
    if pretty:
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False, default=_default) + "\n"
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False, default=_default) + "\n"
