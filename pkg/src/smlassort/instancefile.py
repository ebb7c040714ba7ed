"""Reading and writing instance documents.

An instance document is JSON::

    {"format_version": 1, "u0": 1.0,
     "products": [{"id": "x11", "level": 1, "revenue": 10.0, "utility": 1.0}, ...]}

Floats are written with Python's shortest round-trip repr, so
``parse_instance(dump_instance(inst)) == inst``.
"""
from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path
from typing import Any, Union

from .errors import InstanceFormatError, InvalidInstanceError
from .model import Instance, Product

FORMAT_VERSION = 1
DATASETS = ("attraction", "choice_overload", "aggregate_bound", "excluded_high_revenue", "ro_suboptimal")


def _reject_constant(name: str):
    raise InstanceFormatError(f"non-finite number {name} is not allowed")


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InstanceFormatError(f"{where} must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise InstanceFormatError(f"{where} must be finite")
    return value


def parse_instance(doc: Any) -> Instance:
    """Validate a decoded document and build the instance."""
    if not isinstance(doc, dict):
        raise InstanceFormatError("instance document must be a JSON object")
    missing = {"format_version", "u0", "products"} - doc.keys()
    if missing:
        raise InstanceFormatError(f"missing keys: {sorted(missing)}")
    version = doc["format_version"]
    if isinstance(version, bool) or version != FORMAT_VERSION:
        raise InstanceFormatError(f"unsupported format_version {version!r}")
    u0 = _number(doc["u0"], "u0")
    if not isinstance(doc["products"], list):
        raise InstanceFormatError("products must be an array")
    products = []
    for i, rec in enumerate(doc["products"]):
        where = f"products[{i}]"
        if not isinstance(rec, dict):
            raise InstanceFormatError(f"{where} must be an object")
        missing = {"id", "level", "revenue", "utility"} - rec.keys()
        if missing:
            raise InstanceFormatError(f"{where} is missing {sorted(missing)}")
        if not isinstance(rec["id"], str):
            raise InstanceFormatError(f"{where}.id must be a string")
        level = rec["level"]
        if isinstance(level, bool) or not isinstance(level, int):
            raise InstanceFormatError(f"{where}.level must be an integer")
        try:
            products.append(
                Product(rec["id"], level, _number(rec["revenue"], f"{where}.revenue"), _number(rec["utility"], f"{where}.utility"))
            )
        except InvalidInstanceError as exc:
            raise InstanceFormatError(str(exc)) from exc
    try:
        return Instance(tuple(products), u0)
    except InvalidInstanceError as exc:
        raise InstanceFormatError(str(exc)) from exc


def loads_instance(text: str) -> Instance:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON: {exc}") from exc
    return parse_instance(doc)


def load_instance(path: Union[str, Path]) -> Instance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceFormatError(f"cannot read {path}: {exc}") from exc
    return loads_instance(text)


def instance_to_dict(instance: Instance) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "u0": float(instance.outside_utility),
        "products": [
            {"id": p.id, "level": p.level, "revenue": float(p.revenue), "utility": float(p.utility)}
            for p in instance.products
        ],
    }


def dump_instance(instance: Instance) -> str:
    if not all(isinstance(p.id, str) for p in instance.products):
        raise InstanceFormatError("instance documents require string product ids")
    return json.dumps(instance_to_dict(instance), indent=2, allow_nan=False) + "\n"


def save_instance(instance: Instance, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_instance(instance), encoding="utf-8")


def load_dataset(name: str) -> Instance:
    """One of the small bundled instances listed in ``DATASETS``."""
    if name not in DATASETS:
        raise KeyError(f"unknown dataset {name!r}; choose from {DATASETS}")
    text = resources.files("smlassort").joinpath("data", f"{name}.json").read_text(encoding="utf-8")
    return loads_instance(text)
