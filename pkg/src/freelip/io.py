"""JSON encoding of numbers and small file helpers.

Exact values are written as integers when integral and as ``"p/q"`` strings
otherwise; floats are written as JSON floats. Strings are read back as
fractions, so an exact value always round-trips.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path


def encode_number(x):
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    return float(x)


def _default(o):
    if isinstance(o, Fraction):
        return encode_number(o)
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if hasattr(o, "to_json"):
        return o.to_json()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, default=_default, sort_keys=True, indent=2)


def loads(text: str, exact: bool = False):
    if exact:
        # decimal literals like 0.1 become 1/10, not the binary float value
        return json.loads(text, parse_float=Fraction, parse_int=Fraction)
    return json.loads(text)


def read_json(path, exact: bool = False):
    return loads(Path(path).read_text(), exact=exact)
