"""Real root counts of circuit polynomial systems.

A system is a mapping with keys ``n``, ``exponents`` (t vectors of n ints),
``coefficients`` (n rows of t ints) and an optional ``label``; a JSON string
of the same shape is accepted too.
"""

from __future__ import annotations

import json
from typing import Any, Mapping, Union

from ._core import CircountError, canonical, run

__all__ = [
    "CircountError",
    "count",
    "count_positive",
    "count_torus",
    "count_affine",
    "normalize",
]

System = Union[str, Mapping[str, Any]]


def _document(system: System) -> str:
    if isinstance(system, str):
        return system

    def encode(value: Any) -> Any:
        if isinstance(value, bool):
            raise TypeError("booleans are not integers here")
        if isinstance(value, int):
            return str(value)
        if isinstance(value, (list, tuple)):
            return [encode(v) for v in value]
        return value

    doc = {key: encode(value) if key != "label" else value for key, value in system.items()}
    return json.dumps(doc)


def _decode(result: dict) -> dict:
    if "count" in result:
        result["count"] = int(result["count"])
    return result


def normalize(system: System) -> dict:
    """Validated copy of the system with Python ints."""
    doc = json.loads(canonical(_document(system)))
    doc["n"] = int(doc["n"])
    doc["exponents"] = [[int(e) for e in v] for v in doc["exponents"]]
    doc["coefficients"] = [[int(c) for c in row] for row in doc["coefficients"]]
    return doc


def count(
    system: System,
    *,
    positive: bool = False,
    torus: bool = False,
    affine: bool = False,
    verify: bool = False,
    explain: bool = False,
    verify_samples: int = 100000,
    precision_cap_bits: int = 0,
) -> dict:
    """Full report for one system; all targets when none is selected."""
    report = json.loads(
        run(_document(system), positive, torus, affine, verify, explain, verify_samples, precision_cap_bits)
    )
    for result in report["results"].values():
        _decode(result)
    return report


def _single(system: System, target: str) -> dict:
    result = count(system, **{target: True})["results"][target]
    if result["kind"] == "error":
        error = CircountError(f"{result['error']['kind']}: {result['error']['message']}")
        error.kind = result["error"]["kind"]
        raise error
    return result


def count_positive(system: System) -> dict:
    """Roots in the positive orthant: ``{"kind", "count", "detail"}``."""
    return _single(system, "positive")


def count_torus(system: System) -> dict:
    """Roots with all coordinates nonzero."""
    return _single(system, "torus")


def count_affine(system: System) -> dict:
    """Roots in R^n; kind ``infinite`` when the zero set is not finite."""
    return _single(system, "affine")
