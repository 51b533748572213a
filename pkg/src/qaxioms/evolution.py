"""
Time evolution engines and the unitarity laboratory.

Three engines:

* ``evolve_unitary``        standard evolution, unitary operators only
* ``evolve_linear_B``       any invertible linear map on raw (unnormalized) vectors
* ``evolve_manual_norm_A``  the same dynamics seen on unit vectors:
                            ``psi -> U psi / ||U psi||``, which is nonlinear
                            unless ``U^dagger U`` is a multiple of the identity
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    NonUnitaryOperatorError,
    SingularOperatorError,
    ZeroStateError,
)
from .linalg_core import (
    DEFAULT_TOL,
    OperatorClass,
    OperatorTag,
    as_square,
    classify_operator,
    polarization_reconstruct,
    random_unit_vectors,
)
from .states import RawState, UnitState, normalize


@dataclass(frozen=True, eq=False)
class EvolutionOperator:
    matrix: np.ndarray
    label: str = ""
    op_class: OperatorClass = field(init=False)

    def __post_init__(self):
        m = np.array(as_square(self.matrix))
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "op_class", classify_operator(m, DEFAULT_TOL))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def tag(self) -> OperatorTag:
        return self.op_class.tag


def _as_operator(u) -> EvolutionOperator:
    return u if isinstance(u, EvolutionOperator) else EvolutionOperator(u)


def _require_invertible(u: EvolutionOperator):
    if u.tag is OperatorTag.SINGULAR:
        smin = u.op_class.singular_values[-1]
        raise SingularOperatorError(
            f"operator {u.label or ''} is singular (smallest singular value {smin:.3e}); "
            "it would annihilate some nonzero state"
        )


def _require_dim(u: EvolutionOperator, v: np.ndarray):
    if u.dim != v.size:
        raise DimensionMismatchError(f"operator dimension {u.dim} vs state dimension {v.size}")


def evolve_unitary(state, u):
    """``psi -> U psi`` for unitary ``U``; keeps the input representation."""
    u = _as_operator(u)
    if u.tag is not OperatorTag.UNITARY:
        raise NonUnitaryOperatorError(
            f"standard evolution requires a unitary operator, got {u.tag.value}"
        )
    if not isinstance(state, (RawState, UnitState)):
        state = RawState(state)
    _require_dim(u, state.vec)
    out = u.matrix @ state.vec
    if isinstance(state, UnitState):
        # |norm - 1| <= ~1e-10 by the class check; snap back onto the unit sphere
        return UnitState(out / np.linalg.norm(out))
    return RawState(out)


def evolve_linear_B(state, u) -> RawState:
    """``psi -> U psi`` without renormalization; the norm may drift."""
    u = _as_operator(u)
    _require_invertible(u)
    v = state.vec if isinstance(state, (RawState, UnitState)) else RawState(state).vec
    _require_dim(u, v)
    return RawState(u.matrix @ v)


def evolve_manual_norm_A(state: UnitState, u) -> UnitState:
    """``psi -> U psi / sqrt(<psi|U^dagger U|psi>)``."""
    u = _as_operator(u)
    _require_invertible(u)
    if not isinstance(state, UnitState):
        state = normalize(state)
    _require_dim(u, state.vec)
    out = u.matrix @ state.vec
    return UnitState(out / np.linalg.norm(out))


def linearity_defect(u, psi1: UnitState, psi2: UnitState, a: complex, b: complex) -> float:
    """How far manual-normalized evolution is from acting linearly on superpositions.

    Returns ``|| M(normalize(a psi1 + b psi2)) - normalize(a M(psi1) + b M(psi2)) ||``
    where ``M`` is ``evolve_manual_norm_A``. Zero for unitary and
    proportional-unitary ``U``; generally positive otherwise.
    """
    u = _as_operator(u)
    _require_invertible(u)
    sup = a * psi1.vec + b * psi2.vec
    if not np.any(np.abs(sup) > 0):
        raise ZeroStateError("a*psi1 + b*psi2 is the zero vector")
    lhs = evolve_manual_norm_A(normalize(RawState(sup)), u).vec
    images = a * evolve_manual_norm_A(psi1, u).vec + b * evolve_manual_norm_A(psi2, u).vec
    if not np.any(np.abs(images) > 0):
        raise ZeroStateError("superposition of evolved states vanishes")
    rhs = images / np.linalg.norm(images)
    return float(np.linalg.norm(lhs - rhs))


@dataclass(frozen=True, eq=False)
class TheoremReport:
    operator_class: OperatorClass
    n_samples: int
    seed: int
    max_unit_norm_deviation: float
    polarization_residual: float
    gram_residual: float
    witness: np.ndarray | None = None
    witness_norm_deviation: float | None = None

    @property
    def admissible_A(self) -> bool:
        """Admissible as a linear evolution on unit vectors (must be unitary)."""
        return self.operator_class.tag is OperatorTag.UNITARY

    @property
    def admissible_B(self) -> bool:
        """Admissible under manually normalized linear evolution (any invertible map)."""
        return self.operator_class.is_invertible


def theorem1_lab(u, n_samples: int = 1000, seed: int = 0) -> TheoremReport:
    """
    Numerical check that norm preservation on unit vectors forces unitarity.

    Samples ``n_samples`` random unit vectors and records the worst
    ``| ||U psi|| - 1 |``; reconstructs ``<alpha|U^dagger U|beta>`` for
    consecutive sample pairs from norms alone and compares it with
    ``<U alpha|U beta>``; reports ``||U^dagger U - I||_F``. For a non-unitary
    operator the witness is the right singular vector whose singular value
    is farthest from 1, i.e. the unit vector maximizing
    ``| ||U psi|| - 1 |``.
    """
    u = _as_operator(u)
    n = u.dim
    rng = np.random.default_rng(seed)
    psis = random_unit_vectors(n, rng, size=max(n_samples, 2))
    images = psis @ u.matrix.T
    max_dev = float(np.max(np.abs(np.linalg.norm(images, axis=1) - 1.0)))

    alpha, beta = psis[:-1], psis[1:]
    recon = polarization_reconstruct(u.matrix, alpha, beta)
    direct = np.sum(images[:-1].conj() * images[1:], axis=1)
    pol = float(np.max(np.abs(recon - direct)))

    witness = None
    wdev = None
    if u.tag is not OperatorTag.UNITARY:
        gram = u.matrix.conj().T @ u.matrix
        vals, vecs = np.linalg.eigh(0.5 * (gram + gram.conj().T))
        k = int(np.argmax(np.abs(np.sqrt(np.clip(vals, 0.0, None)) - 1.0)))
        witness = vecs[:, k].copy()
        pivot = witness[np.argmax(np.abs(witness) > 1e-12)]
        witness *= abs(pivot) / pivot
        wdev = abs(float(np.linalg.norm(u.matrix @ witness)) - 1.0)

    return TheoremReport(
        operator_class=u.op_class,
        n_samples=n_samples,
        seed=seed,
        max_unit_norm_deviation=max_dev,
        polarization_residual=pol,
        gram_residual=u.op_class.gram_residual,
        witness=witness,
        witness_norm_deviation=wdev,
    )
