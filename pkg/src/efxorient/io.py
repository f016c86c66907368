"""JSON file formats for instances and orientations.

Instance::

    {"alpha": "3", "beta": "1", "vertices": 2,
     "edges": [{"u": 0, "v": 1, "w": "heavy"}, ...]}

Orientation::

    {"owners": [0, null, 1, ...]}

Rationals are written as strings (``"7/2"``) so nothing is lost to floats.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .core import Instance, Orientation, new_instance, validate_orientation


class FormatError(ValueError):
    """Raised for malformed instance or orientation documents."""


def _parse_rational(x: Any, field: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise FormatError(f"{field}: expected an integer or 'p/q' string, got {x!r}")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{field}: cannot parse {x!r} as a rational") from exc


def instance_to_dict(inst: Instance) -> dict:
    return {
        "alpha": str(inst.alpha),
        "beta": str(inst.beta),
        "vertices": inst.n,
        "edges": [{"u": e.u, "v": e.v, "w": e.cls.value} for e in inst.edges],
    }


def instance_from_dict(doc: dict) -> Instance:
    try:
        alpha = _parse_rational(doc["alpha"], "alpha")
        beta = _parse_rational(doc["beta"], "beta")
        n = doc["vertices"]
        edges = [(d["u"], d["v"], d["w"]) for d in doc["edges"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed instance document: {exc}") from exc
    if not isinstance(n, int) or isinstance(n, bool):
        raise FormatError(f"vertices must be an integer, got {n!r}")
    try:
        return new_instance(n, alpha, beta, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def dumps_instance(inst: Instance) -> str:
    return _dumps(instance_to_dict(inst))


def loads_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return instance_from_dict(doc)


def orientation_to_dict(pi: Orientation) -> dict:
    return {"owners": list(pi.owners)}


def orientation_from_dict(doc: dict, inst: Instance) -> Orientation:
    try:
        owners = doc["owners"]
    except (KeyError, TypeError) as exc:
        raise FormatError("orientation document needs an 'owners' list") from exc
    if not isinstance(owners, list):
        raise FormatError("'owners' must be a list")
    try:
        return validate_orientation(inst, owners)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def dumps_orientation(pi: Orientation) -> str:
    return _dumps(orientation_to_dict(pi))


def loads_orientation(text: str, inst: Instance) -> Orientation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return orientation_from_dict(doc, inst)


def _dumps(doc: Any) -> str:
    """Canonical serialization: fixed key order, one edge per line."""
    if isinstance(doc, dict) and "edges" in doc and "vertices" in doc:
        head = {k: doc[k] for k in ("alpha", "beta", "vertices")}
        lines = [json.dumps(e) for e in doc["edges"]]
        body = json.dumps(head)[:-1]
        if lines:
            return body + ', "edges": [\n  ' + ",\n  ".join(lines) + "\n]}\n"
        return body + ', "edges": []}\n'
    return json.dumps(doc) + "\n"


def read_instance(path: Union[str, Path]) -> Instance:
    return loads_instance(Path(path).read_text())


def write_instance(inst: Instance, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_instance(inst))


def read_orientation(path: Union[str, Path], inst: Instance) -> Orientation:
    return loads_orientation(Path(path).read_text(), inst)


def write_orientation(pi: Orientation, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_orientation(pi))
