"""Model files: a small versioned JSON document describing X or X*."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .likelihood import DataVector
from .polynomial import LEX, Polynomial, VariableSet
from .varieties import Model

__all__ = ["FORMAT_VERSION", "ModelFile", "parse_model_file", "format_model_file", "load_model_file"]

FORMAT_VERSION = 1

# canonical key order; absent optional keys are omitted
_KEYS = (
    "format_version",
    "id",
    "role",
    "variables",
    "generators",
    "codim",
    "data",
    "expected_ml_degree",
    "method",
    "stretch",
    "note",
)


class ModelFileError(ValueError):
    pass


@dataclass
class ModelFile:
    id: str
    role: str
    variables: list
    generators: list  # strings in the polynomial grammar
    codim: int | None = None
    data: list | None = None  # rationals as strings
    expected_ml_degree: int | None = None
    method: str | None = None  # preferred formulation
    stretch: bool = False
    note: str = ""
    format_version: int = FORMAT_VERSION
    _model: Model | None = field(default=None, repr=False, compare=False)

    def to_model(self) -> Model:
        if self._model is None:
            self._model = Model(VariableSet(self.variables), self.generators, role=self.role,
                                name=self.id, codim=self.codim)
        return self._model

    def data_vector(self) -> DataVector | None:
        return None if self.data is None else DataVector(self.data)

    def canonical(self) -> ModelFile:
        """Same model with generators re-printed by the polynomial formatter."""
        V = VariableSet(self.variables)
        gens = [Polynomial.parse(g, V).format(LEX) for g in self.generators]
        data = None if self.data is None else DataVector(self.data).as_strings()
        return ModelFile(self.id, self.role, list(self.variables), gens, self.codim, data,
                         self.expected_ml_degree, self.method, self.stretch, self.note, self.format_version)

    def as_dict(self) -> dict:
        d = {
            "format_version": self.format_version,
            "id": self.id,
            "role": self.role,
            "variables": list(self.variables),
            "generators": list(self.generators),
            "codim": self.codim,
            "data": self.data,
            "expected_ml_degree": self.expected_ml_degree,
            "method": self.method,
            "stretch": self.stretch or None,
            "note": self.note or None,
        }
        return {k: d[k] for k in _KEYS if d[k] is not None}

    @classmethod
    def from_model(cls, model: Model, id=None, **extra) -> ModelFile:
        gens = [g.primitive(LEX).format(LEX) for g in model.generators]
        return cls(id or model.name or "model", model.role, list(model.variables.names), gens, **extra)


def parse_model_file(text: str) -> ModelFile:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"model file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ModelFileError("model file must be a JSON object")
    version = raw.get("format_version")
    if version != FORMAT_VERSION:
        raise ModelFileError(f"unsupported format_version {version!r} (expected {FORMAT_VERSION})")
    unknown = set(raw) - set(_KEYS)
    if unknown:
        raise ModelFileError(f"unknown keys in model file: {sorted(unknown)}")
    for key in ("id", "role", "variables", "generators"):
        if key not in raw:
            raise ModelFileError(f"model file is missing {key!r}")
    if raw["role"] not in ("primal", "dual"):
        raise ModelFileError(f"role must be 'primal' or 'dual', got {raw['role']!r}")
    mf = ModelFile(
        id=raw["id"],
        role=raw["role"],
        variables=list(raw["variables"]),
        generators=list(raw["generators"]),
        codim=raw.get("codim"),
        data=raw.get("data"),
        expected_ml_degree=raw.get("expected_ml_degree"),
        method=raw.get("method"),
        stretch=bool(raw.get("stretch", False)),
        note=raw.get("note", ""),
    )
    V = VariableSet(mf.variables)
    for g in mf.generators:
        Polynomial.parse(g, V)  # fail early on grammar errors
    return mf


def format_model_file(mf: ModelFile) -> str:
    return json.dumps(mf.as_dict(), indent=2) + "\n"


def load_model_file(path) -> ModelFile:
    return parse_model_file(Path(path).read_text())
