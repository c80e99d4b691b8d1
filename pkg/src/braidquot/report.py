"""JSON emission and the order bound for non-cyclic quotients."""

from __future__ import annotations

import dataclasses
import json
import math
from pathlib import Path

from . import __version__

SCHEMA_VERSION = 1


def bound(n: int) -> int:
    """Lower bound 3^(m-1) * m! on the order of a non-cyclic quotient of B_n, m = floor(n/2)."""
    if n < 5:
        raise ValueError("the bound is stated for n >= 5")
    m = n // 2
    return 3 ** (m - 1) * math.factorial(m)


def prior_bound(n: int) -> int:
    """The earlier 2-based bound 2^(m-1) * m!, for comparison."""
    if n < 5:
        raise ValueError("the bound is stated for n >= 5")
    m = n // 2
    return 2 ** (m - 1) * math.factorial(m)


def bound_table(lo: int = 5, hi: int = 12) -> list[dict]:
    return [{"n": n, "bound": bound(n), "prior": prior_bound(n), "improves": bound(n) > prior_bound(n)}
            for n in range(lo, hi + 1)]


def _plain(obj):
    if hasattr(obj, "to_dict"):
        return _plain(obj.to_dict())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return _plain(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return obj


def report_document(kind: str, payload) -> dict:
    return {"version": SCHEMA_VERSION, "package_version": __version__, "kind": kind, "data": _plain(payload)}


def emit_report(kind: str, payload, path=None) -> str:
    """Serialize with sorted keys; write to ``path`` when given."""
    text = json.dumps(report_document(kind, payload), sort_keys=True, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
