"""
JSON encoding of vectors, matrices, states, observables and reports.

A complex scalar is ``[re, im]``; a vector is ``{"dim": n, "entries": [...]}``;
a matrix is ``{"rows": r, "cols": c, "entries": [...]}`` in row-major order.
Floats are written with ``repr`` precision, so decoding is bit-exact.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .composite import DensityMatrix, QubitRegister
from .errors import InvalidInputError
from .evolution import TheoremReport
from .linalg_core import OperatorClass, as_matrix, as_vector
from .measurement import DEGENERACY_TOL, Observable, OutcomeDistribution, make_observable
from .states import CanonicalRay, RawState, UnitState

_COMPLEX = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}
VECTOR_SCHEMA = {
    "type": "object",
    "required": ["dim", "entries"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "entries": {"type": "array", "items": _COMPLEX, "minItems": 1},
    },
}
MATRIX_SCHEMA = {
    "type": "object",
    "required": ["rows", "cols", "entries"],
    "properties": {
        "rows": {"type": "integer", "minimum": 1},
        "cols": {"type": "integer", "minimum": 1},
        "entries": {"type": "array", "items": _COMPLEX, "minItems": 1},
    },
}
STATE_SCHEMA = {
    "allOf": [VECTOR_SCHEMA],
    "required": ["representation"],
    "properties": {"representation": {"enum": ["raw", "unit", "ray"]}},
}
OBSERVABLE_SCHEMA = {
    "allOf": [MATRIX_SCHEMA],
    "properties": {"degeneracy_tol": {"type": "number", "exclusiveMinimum": 0}},
}
DENSITY_SCHEMA = {
    "allOf": [MATRIX_SCHEMA],
    "required": ["normalized"],
    "properties": {"normalized": {"type": "boolean"}},
}
DISTRIBUTION_SCHEMA = {
    "type": "object",
    "required": ["outcomes"],
    "properties": {
        "outcomes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["eigenvalue", "probability"],
                "properties": {
                    "eigenvalue": {"type": "number"},
                    "probability": {"type": "number", "minimum": 0, "maximum": 1},
                },
            },
        }
    },
}
REGISTER_SCHEMA = {
    "type": "object",
    "required": ["n_qubits", "sites", "state"],
    "properties": {
        "n_qubits": {"type": "integer", "minimum": 1},
        "sites": {"type": "array", "items": {"type": "string"}},
        "state": VECTOR_SCHEMA,
    },
}
OPERATOR_CLASS_SCHEMA = {
    "type": "object",
    "required": ["tag", "scale", "gram_residual", "singular_values"],
    "properties": {
        "tag": {"enum": ["Unitary", "ProportionalUnitary", "GeneralInvertible", "Singular"]},
        "scale": {"oneOf": [_COMPLEX, {"type": "null"}]},
        "gram_residual": {"type": "number", "minimum": 0},
        "singular_values": {"type": "array", "items": {"type": "number"}},
    },
}
THEOREM_REPORT_SCHEMA = {
    "type": "object",
    "required": [
        "operator_class",
        "n_samples",
        "seed",
        "max_unit_norm_deviation",
        "polarization_residual",
        "gram_residual",
        "witness",
        "witness_norm_deviation",
        "admissible_A",
        "admissible_B",
    ],
    "properties": {
        "operator_class": OPERATOR_CLASS_SCHEMA,
        "max_unit_norm_deviation": {"type": "number", "minimum": 0},
        "polarization_residual": {"type": "number", "minimum": 0},
        "gram_residual": {"type": "number", "minimum": 0},
        "witness": {"oneOf": [VECTOR_SCHEMA, {"type": "null"}]},
    },
}


def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(obj) -> complex:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise InvalidInputError(f"complex scalar must be [re, im], got {obj!r}")
    re, im = obj
    if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in (re, im)):
        raise InvalidInputError(f"complex scalar must hold two numbers, got {obj!r}")
    return complex(float(re), float(im))


def vector_to_json(v) -> dict:
    v = as_vector(v)
    return {"dim": int(v.size), "entries": [complex_to_json(z) for z in v]}


def vector_from_json(obj) -> np.ndarray:
    try:
        dim, entries = obj["dim"], obj["entries"]
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"vector JSON needs 'dim' and 'entries': {exc}") from None
    if not isinstance(entries, list) or len(entries) != dim:
        raise InvalidInputError(f"vector declares dim {dim!r} but has {len(entries)} entries")
    return as_vector([complex_from_json(e) for e in entries])


def matrix_to_json(m) -> dict:
    m = as_matrix(m)
    r, c = m.shape
    return {"rows": r, "cols": c, "entries": [complex_to_json(z) for z in m.ravel()]}


def matrix_from_json(obj) -> np.ndarray:
    try:
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"matrix JSON needs 'rows', 'cols' and 'entries': {exc}") from None
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
        raise InvalidInputError("rows and cols must be positive integers")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise InvalidInputError(f"{rows}x{cols} matrix needs {rows * cols} entries")
    return as_matrix(np.array([complex_from_json(e) for e in entries]).reshape(rows, cols))


def state_to_json(s) -> dict:
    rep = {RawState: "raw", UnitState: "unit", CanonicalRay: "ray"}[type(s)]
    return {**vector_to_json(s.vec), "representation": rep}


def state_from_json(obj):
    v = vector_from_json(obj)
    rep = obj.get("representation", "raw")
    if rep == "raw":
        return RawState(v)
    if rep == "unit":
        return UnitState(v)
    if rep == "ray":
        return CanonicalRay(v)
    raise InvalidInputError(f"unknown representation {rep!r}")


def observable_to_json(obs: Observable) -> dict:
    return {**matrix_to_json(obs.matrix), "degeneracy_tol": obs.degeneracy_tol}


def observable_from_json(obj) -> Observable:
    tol = obj.get("degeneracy_tol", DEGENERACY_TOL)
    if not isinstance(tol, (int, float)) or tol <= 0:
        raise InvalidInputError("degeneracy_tol must be a positive number")
    return make_observable(matrix_from_json(obj), float(tol))


def distribution_to_json(d: OutcomeDistribution) -> dict:
    return {"outcomes": [{"eigenvalue": lam, "probability": p} for lam, p in d.outcomes]}


def distribution_from_json(obj) -> OutcomeDistribution:
    return OutcomeDistribution(
        tuple((float(o["eigenvalue"]), float(o["probability"])) for o in obj["outcomes"])
    )


def density_to_json(rho: DensityMatrix) -> dict:
    return {**matrix_to_json(rho.matrix), "normalized": rho.normalized}


def density_from_json(obj) -> DensityMatrix:
    return DensityMatrix(matrix_from_json(obj), bool(obj.get("normalized", True)))


def register_to_json(reg: QubitRegister) -> dict:
    return {"n_qubits": reg.n_qubits, "sites": list(reg.sites), "state": vector_to_json(reg.state.vec)}


def register_from_json(obj) -> QubitRegister:
    return QubitRegister(int(obj["n_qubits"]), RawState(vector_from_json(obj["state"])), tuple(obj["sites"]))


def operator_class_to_json(c: OperatorClass) -> dict:
    return {
        "tag": c.tag.value,
        "scale": None if c.scale is None else complex_to_json(c.scale),
        "gram_residual": c.gram_residual,
        "singular_values": list(c.singular_values),
    }


def theorem_report_to_json(r: TheoremReport) -> dict:
    return {
        "operator_class": operator_class_to_json(r.operator_class),
        "n_samples": r.n_samples,
        "seed": r.seed,
        "max_unit_norm_deviation": r.max_unit_norm_deviation,
        "polarization_residual": r.polarization_residual,
        "gram_residual": r.gram_residual,
        "witness": None if r.witness is None else vector_to_json(r.witness),
        "witness_norm_deviation": r.witness_norm_deviation,
        "admissible_A": r.admissible_A,
        "admissible_B": r.admissible_B,
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, allow_nan=False)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"invalid JSON: {exc}") from None
