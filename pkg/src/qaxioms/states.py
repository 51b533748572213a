"""
State representations.

``RawState``      any nonzero vector; physical state = ray {z * v : z != 0}
``UnitState``     unit vector; physical state = phase class {e^{i theta} v}
``CanonicalRay``  unique representative of a ray: unit norm, first
                  significantly nonzero entry real and positive
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, InvalidInputError, ZeroStateError
from .linalg_core import as_vector, max_scaled

UNIT_TOL = 1e-12
PHASE_TOL = 1e-12


def _frozen(v: np.ndarray) -> np.ndarray:
    v = np.array(v, dtype=np.complex128)
    v.setflags(write=False)
    return v


@dataclass(frozen=True, eq=False)
class RawState:
    vec: np.ndarray

    def __post_init__(self):
        v = as_vector(self.vec)
        if not np.any(v):
            raise ZeroStateError("the zero vector does not represent a physical state")
        object.__setattr__(self, "vec", _frozen(v))

    @property
    def dim(self) -> int:
        return self.vec.size

    def as_raw(self) -> RawState:
        return self


@dataclass(frozen=True, eq=False)
class UnitState:
    vec: np.ndarray

    def __post_init__(self):
        v = as_vector(self.vec)
        n = float(np.linalg.norm(v))
        if abs(n - 1.0) > UNIT_TOL:
            raise InvalidInputError(f"unit state has norm {n!r}")
        object.__setattr__(self, "vec", _frozen(v))

    @property
    def dim(self) -> int:
        return self.vec.size

    def as_raw(self) -> RawState:
        return RawState(self.vec)


@dataclass(frozen=True, eq=False)
class CanonicalRay:
    vec: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "vec", _frozen(as_vector(self.vec)))

    @property
    def dim(self) -> int:
        return self.vec.size


def normalize(s) -> UnitState:
    if isinstance(s, UnitState):
        v = s.vec
    else:
        v = (s if isinstance(s, RawState) else RawState(s)).vec
    w, m = max_scaled(v)
    if m == 0.0:
        raise ZeroStateError("cannot normalize the zero vector")
    return UnitState(w / np.linalg.norm(w))


def canonicalize(s, phase_tol: float = PHASE_TOL) -> CanonicalRay:
    """Unique representative of the ray through ``s``.

    The first entry whose modulus exceeds ``phase_tol * norm(s)`` is rotated
    onto the positive real axis; smaller leading entries are treated as
    numerical zeros and do not fix the gauge.
    """
    v = normalize(s).vec
    mags = np.abs(v)
    idx = int(np.argmax(mags > phase_tol))
    pivot = v[idx]
    return CanonicalRay(v * (abs(pivot) / pivot))


def _check_dims(a, b):
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimensions differ: {a.dim} vs {b.dim}")


def equivalent_A(u: UnitState, v: UnitState, tol: float = 1e-9) -> bool:
    """Phase equivalence: ``min_theta ||u - e^{i theta} v|| <= tol``.

    The minimizing phase is ``arg <v|u>``, so no sweep over theta is needed.
    The distance is evaluated directly: ``2 (1 - |<u|v>|)`` is the same
    quantity squared but cancels catastrophically for tol below ~1e-8.
    """
    _check_dims(u, v)
    overlap = np.vdot(v.vec, u.vec)
    phase = overlap / abs(overlap) if overlap != 0 else 1.0
    return bool(np.linalg.norm(u.vec - phase * v.vec) <= tol)


def equivalent_B(s, t, tol: float = 1e-9) -> bool:
    """Ray equivalence: canonical representatives within ``tol`` in norm."""
    s = s.as_raw() if isinstance(s, (RawState, UnitState)) else RawState(s)
    t = t.as_raw() if isinstance(t, (RawState, UnitState)) else RawState(t)
    _check_dims(s, t)
    a, b = canonicalize(s).vec, canonicalize(t).vec
    return bool(np.linalg.norm(a - b) <= tol)
