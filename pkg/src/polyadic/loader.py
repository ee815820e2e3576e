"""Load systems, binary tables, maps and elements from JSON files or inline strings.

Inline forms::

    derived:m=5,n=3,c=2
    gallery:copula            gallery:qprod,hbar=0.9
    qprod:hbar=0.5            qadd:n=3,hbar=0.5
    binary_center:group=z7units,c=1,n=4

System files are UTF-8 JSON objects with a ``kind`` of ``derived_modular``,
``cayley`` (``n``, ``m``, ``table`` nested or flat row-major, last index fastest),
``closed_form`` (``family`` and ``params``) or ``binary_center``.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import gallery
from .core import FiniteTable, PolyadicSystem
from .errors import DomainViolation, InvalidParams

BINARY_GROUPS = {
    "z7units": lambda: gallery.multiplicative_table(7),
    "s3": gallery.symmetric3_table,
}


def _value(text: str):
    low = text.lower()
    if low in ("true", "false"):
        return low == "true"
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def parse_params(text: str) -> dict:
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in part:
            raise InvalidParams(f"expected key=value, got {part!r}")
        key, val = part.split("=", 1)
        out[key.strip()] = _value(val.strip())
    return out


def binary_table(spec) -> np.ndarray:
    """A binary group table from a JSON file, ``cyclic:m``, ``z7units`` or ``s3``."""
    if isinstance(spec, (list, np.ndarray)):
        return np.asarray(spec, dtype=np.int64)
    path = Path(spec)
    if path.is_file():
        return np.asarray(json.loads(path.read_text(encoding="utf-8")), dtype=np.int64)
    if spec.startswith("cyclic:"):
        return gallery.cyclic_table(int(spec.split(":", 1)[1]))
    if spec in BINARY_GROUPS:
        return BINARY_GROUPS[spec]()
    raise InvalidParams(f"unknown binary table {spec!r}")


def _from_family(family: str, params: dict) -> PolyadicSystem:
    if family == "derived":
        family = "derived_modular"
    if family == "binary_center":
        params = dict(params)
        group = params.pop("group", params.pop("binary", "z7units"))
        params["table"] = binary_table(group)
    return gallery.instantiate(gallery.FamilySpec(family, params))


def system_from_dict(obj: dict) -> PolyadicSystem:
    kind = obj.get("kind")
    if kind == "derived_modular":
        return _from_family("derived_modular", {k: obj[k] for k in ("m", "n", "c") if k in obj})
    if kind == "cayley":
        try:
            return FiniteTable(int(obj["n"]), int(obj["m"]), np.asarray(obj["table"]))
        except (KeyError, ValueError) as exc:
            raise InvalidParams(f"bad cayley system: {exc}") from exc
    if kind == "closed_form":
        return _from_family(obj["family"], obj.get("params", {}))
    if kind == "binary_center":
        return _from_family("binary_center", {"binary": obj["binary"], "c": obj["c"],
                                              "n": obj.get("n", 4)})
    raise InvalidParams(f"unknown system kind {kind!r}")


def load_system(spec: str) -> PolyadicSystem:
    """Resolve a file path or an inline system string."""
    path = Path(spec)
    if path.is_file():
        return system_from_dict(json.loads(path.read_text(encoding="utf-8")))
    head, _, rest = spec.partition(":")
    if head == "gallery":
        name, _, rest = rest.partition(",")
        return _from_family(name, parse_params(rest))
    if head in ("derived", *gallery.FAMILIES):
        return _from_family(head, parse_params(rest))
    raise InvalidParams(f"cannot resolve system {spec!r}: no such file or inline family")


def load_map(spec: str) -> list:
    """A JSON array of images from a file, or an inline comma list."""
    path = Path(spec)
    text = path.read_text(encoding="utf-8") if path.is_file() else spec
    text = text.strip()
    data = json.loads(text) if text.startswith("[") else [int(x) for x in text.split(",")]
    if not isinstance(data, list):
        raise InvalidParams("a map must be a JSON array of target indices")
    return data


def parse_element(sys: PolyadicSystem, text: str):
    """An element of ``sys`` from its text form, domain-checked."""
    try:
        if sys.finite:
            g = int(text)
        elif getattr(sys, "complex_carrier", False):
            g = complex(text.replace("i", "j"))
        else:
            g = float(text)
    except ValueError as exc:
        raise InvalidParams(f"cannot read element {text!r}") from exc
    try:
        sys.check_element(g)
    except DomainViolation as exc:
        raise InvalidParams(str(exc)) from exc
    return g
