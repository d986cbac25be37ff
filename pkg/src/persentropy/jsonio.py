"""Deterministic JSON/CSV emission.

Floats are rendered with 17 significant digits so every artifact round-trips
bit-exactly and identical inputs yield byte-identical files. Only the JSON
subset the package emits is supported (null/bool/int/float/str/list/dict).
"""

import json
import math
from typing import Any


def format_float(x: float) -> str:
    if math.isnan(x):
        raise ValueError("NaN is not serializable")
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def dumps(obj: Any, indent: int = 0, _level: int = 0) -> str:
    """Serialize to JSON with deterministic float formatting.

    Dict keys are emitted in insertion order; callers build dicts in a fixed
    order, which keeps output byte-stable.
    """
    pad = " " * (indent * (_level + 1)) if indent else ""
    end_pad = " " * (indent * _level) if indent else ""
    sep = ",\n" if indent else ", "
    nl = "\n" if indent else ""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if math.isinf(obj):
            raise ValueError("infinity is not valid JSON; encode it as null")
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [dumps(v, indent, _level + 1) for v in obj]
        return "[" + nl + sep.join(pad + it for it in items) + nl + end_pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            json.dumps(str(k)) + ": " + dumps(v, indent, _level + 1)
            for k, v in obj.items()
        ]
        return "{" + nl + sep.join(pad + it for it in items) + nl + end_pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dump_path(obj: Any, path, indent: int = 2) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj, indent=indent))
        fh.write("\n")
