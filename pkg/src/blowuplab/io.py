"""JSON reading and writing of arrangements."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .exactnum import rational, rational_str
from .matroid import Arrangement, ArrangementError, StretchedArrangement


class InputError(ValueError):
    """Malformed or invalid input file."""


def _rat(value, where: str) -> Fraction:
    try:
        if isinstance(value, float):
            raise TypeError("floats are not exact")
        return rational(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: {exc}") from None


def arrangement_from_json(data: dict, allow_proportional: bool = False):
    """Build an Arrangement, or a StretchedArrangement when multiplicities are given.

    With ``allow_proportional`` a plain list of forms may contain proportional
    columns; they are grouped into a stretched arrangement.
    """
    if not isinstance(data, dict):
        raise InputError("expected a JSON object")
    if "forms" not in data:
        raise InputError("missing key 'forms'")
    raw = data["forms"]
    if not isinstance(raw, list) or not raw:
        raise InputError("'forms' must be a non-empty list")
    k = data.get("k", len(raw[0]) if isinstance(raw[0], list) else None)
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise InputError("'k' must be a positive integer")
    forms = []
    for i, f in enumerate(raw):
        if not isinstance(f, list) or len(f) != k:
            raise InputError(f"form at index {i} must be a list of {k} coefficients")
        forms.append(tuple(_rat(c, f"form {i}") for c in f))
    for i, f in enumerate(forms):
        if not any(f):
            raise InputError(f"zero form at index {i}")
    labels = data.get("labels")
    try:
        if "multiplicities" in data or "coefficients" in data:
            mults = data.get("multiplicities")
            coeffs = data.get("coefficients")
            if mults is None:
                mults = [len(c) for c in coeffs]
            if coeffs is None:
                coeffs = [[1] * m for m in mults]
            support = Arrangement(k, tuple(forms), tuple(labels) if labels else None)
            b = StretchedArrangement(
                support, tuple(mults),
                tuple(tuple(_rat(c, f"coefficients[{i}]") for c in row) for i, row in enumerate(coeffs)))
            b.validate()
            return b
        if allow_proportional:
            b = StretchedArrangement.from_forms(forms, k)
            if b.is_simple():
                a = Arrangement(k, tuple(forms), tuple(labels) if labels else None)
                a.validate()
                return a
            b.validate()
            return b
        a = Arrangement(k, tuple(forms), tuple(labels) if labels else None)
        a.validate()
        return a
    except ArrangementError as exc:
        raise InputError(str(exc)) from None


def parse_json_text(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def load_arrangement(path: str | Path, allow_proportional: bool = False):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    data = parse_json_text(text, str(path))
    try:
        return arrangement_from_json(data, allow_proportional)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def arrangement_to_json(a) -> dict:
    if isinstance(a, StretchedArrangement):
        out = arrangement_to_json(a.support)
        out["multiplicities"] = list(a.multiplicities)
        out["coefficients"] = [[rational_str(c) for c in row] for row in a.coefficients]
        return out
    out = {"k": a.k, "forms": [[rational_str(c) for c in f] for f in a.forms]}
    if a.labels is not None:
        out["labels"] = list(a.labels)
    return out


def dumps(obj) -> str:
    """Deterministic compact JSON."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(", ", ": "))
