"""Rendering of results as JSON (exact strings) or aligned text."""

from __future__ import annotations

import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction

import numpy as np

from .gaussian import GaussianRational, format_fraction, format_gaussian


def exact(obj):
    """Recursively turn numbers into exact strings; floats get 17 significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, GaussianRational):
        return format_gaussian(obj)
    if isinstance(obj, (float, np.floating)):
        return format(float(obj), ".17g")
    if isinstance(obj, complex):
        if obj.imag == 0:
            return format(obj.real, ".17g")
        return f"{obj.real:.17g}{obj.imag:+.17g}i"
    if is_dataclass(obj):
        return exact(asdict(obj))
    if isinstance(obj, dict):
        return {str(exact(k)): exact(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [exact(v) for v in obj]
    return str(obj)


def render_json(payload: dict) -> str:
    return json.dumps(exact(payload), indent=2) + "\n"


def _flatten(prefix: str, obj, rows: list):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(obj, list) and obj and all(isinstance(r, list) for r in obj):
        rows.append((prefix, ""))
        width = max(len(x) for r in obj for x in r)
        for r in obj:
            rows.append(("", "  ".join(x.rjust(width) for x in r)))
    elif isinstance(obj, list):
        rows.append((prefix, " ".join(str(x) for x in obj)))
    else:
        rows.append((prefix, "" if obj is None else str(obj).lower() if isinstance(obj, bool) else str(obj)))


def render_text(payload: dict) -> str:
    rows: list[tuple[str, str]] = []
    _flatten("", exact(payload), rows)
    width = max((len(k) for k, _ in rows), default=0)
    lines = []
    for k, v in rows:
        lines.append(f"{k.ljust(width)}  {v}".rstrip() if k else f"{' ' * width}  {v}")
    return "\n".join(lines) + "\n"


def render(payload: dict, fmt: str) -> str:
    return render_json(payload) if fmt == "json" else render_text(payload)
