"""Bundled example models."""

from __future__ import annotations

import re
from importlib import resources
from pathlib import Path

from .modelfile import ModelFile, load_model_file, parse_model_file

__all__ = ["zoo_ids", "zoo_entry", "zoo_entries", "resolve_model", "TABLE_SUITE", "STRETCH_SUITE"]

# default and stretch rows of the ML-degree benchmark (there is no I9)
TABLE_SUITE = ("I1", "I2", "I4", "I5", "I8", "I10")
STRETCH_SUITE = ("I3", "I6", "I7")


def _natural(name):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def _files():
    root = resources.files("dualmle") / "zoo_data"
    return {p.name[:-5]: p for p in root.iterdir() if p.name.endswith(".json")}


def zoo_ids() -> list[str]:
    return sorted(_files(), key=_natural)


def zoo_entry(name: str) -> ModelFile:
    files = _files()
    if name not in files:
        raise KeyError(f"no zoo model named {name!r}; available: {', '.join(zoo_ids())}")
    return parse_model_file(files[name].read_text())


def zoo_entries() -> list[ModelFile]:
    return [zoo_entry(n) for n in zoo_ids()]


def resolve_model(ref: str) -> ModelFile:
    """A model file path, ``zoo/NAME``, ``zoo:NAME`` or a bare zoo name."""
    p = Path(ref)
    if p.is_file():
        return load_model_file(p)
    for prefix in ("zoo/", "zoo:"):
        if ref.startswith(prefix):
            return zoo_entry(ref[len(prefix):])
    if ref in _files():
        return zoo_entry(ref)
    raise FileNotFoundError(f"no model file or zoo entry {ref!r}")
