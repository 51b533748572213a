"""
Multi-qubit registers, local operators, density matrices and partial trace.

Basis ordering: site 0 is the most significant tensor factor, so for two
qubits the basis is |00>, |01>, |10>, |11> with the first label belonging
to site 0 ("A") and the second to site 1 ("B").
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import DimensionMismatchError, InvalidInputError, ZeroStateError
from .linalg_core import as_square
from .states import RawState, UnitState

MAX_QUBITS = 12
HERM_TOL = 1e-10
PSD_TOL = 1e-10


def _check_n(n_qubits: int):
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise InvalidInputError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")


@dataclass(frozen=True, eq=False)
class QubitRegister:
    n_qubits: int
    state: RawState
    sites: tuple[str, ...] = ()

    def __post_init__(self):
        _check_n(self.n_qubits)
        state = self.state if isinstance(self.state, RawState) else RawState(self.state)
        if state.dim != 2**self.n_qubits:
            raise DimensionMismatchError(
                f"{self.n_qubits} qubits need dimension {2**self.n_qubits}, got {state.dim}"
            )
        sites = tuple(self.sites) or tuple(str(i) for i in range(self.n_qubits))
        if len(sites) != self.n_qubits:
            raise InvalidInputError("one site label per qubit")
        object.__setattr__(self, "state", state)
        object.__setattr__(self, "sites", sites)

    def site_index(self, site) -> int:
        if isinstance(site, str):
            return self.sites.index(site)
        return int(site)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian positive semidefinite matrix.

    ``normalized`` marks unit trace. Unnormalized density matrices are kept
    as they come (e.g. ``|s><s|`` for a raw state) rather than rescaled.
    """

    matrix: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        m = np.array(as_square(self.matrix))
        scale = max(1.0, float(np.abs(np.trace(m))))
        if np.linalg.norm(m - m.conj().T, "fro") > HERM_TOL * scale:
            raise InvalidInputError("density matrix is not Hermitian")
        if np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0] < -PSD_TOL * scale:
            raise InvalidInputError("density matrix has a negative eigenvalue")
        if self.normalized and abs(np.trace(m).real - 1.0) > HERM_TOL:
            raise InvalidInputError(f"normalized density matrix has trace {np.trace(m).real!r}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def renormalized(self) -> DensityMatrix:
        t = self.trace
        if t <= 0.0:
            raise ZeroStateError("cannot renormalize a zero density matrix")
        return DensityMatrix(self.matrix / t, normalized=True)

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.matrix).real.copy()


def tensor_states(a, b) -> RawState:
    a = a if isinstance(a, (RawState, UnitState)) else RawState(a)
    b = b if isinstance(b, (RawState, UnitState)) else RawState(b)
    return RawState(np.kron(a.vec, b.vec))


def tensor_ops(a, b) -> np.ndarray:
    return np.kron(as_square(a), as_square(b))


def bell_state() -> QubitRegister:
    """``|00> + |11>``, deliberately unnormalized."""
    return QubitRegister(2, RawState(np.array([1, 0, 0, 1], dtype=complex)), ("A", "B"))


def embed_local(op, site: int, n_qubits: int) -> np.ndarray:
    """``I x ... x op x ... x I`` with ``op`` acting on ``site``."""
    _check_n(n_qubits)
    op = as_square(op)
    if op.shape != (2, 2):
        raise DimensionMismatchError(f"local operator must be 2x2, got {op.shape}")
    if not 0 <= site < n_qubits:
        raise InvalidInputError(f"site {site} out of range for {n_qubits} qubits")
    eye = np.eye(2, dtype=complex)
    factors = [op if k == site else eye for k in range(n_qubits)]
    return reduce(np.kron, factors)


def density_from_state(s, normalize: bool = True) -> DensityMatrix:
    """``|s><s| / <s|s>``, or the bare ``|s><s|`` when ``normalize`` is false."""
    s = s if isinstance(s, (RawState, UnitState)) else RawState(s)
    rho = np.outer(s.vec, s.vec.conj())
    if normalize:
        rho = rho / np.vdot(s.vec, s.vec).real
    return DensityMatrix(rho, normalized=normalize)


def partial_trace(rho: DensityMatrix, keep: int, n_qubits: int) -> DensityMatrix:
    """Trace out every site except ``keep``; the ``normalized`` flag is carried over."""
    _check_n(n_qubits)
    m = rho.matrix if isinstance(rho, DensityMatrix) else as_square(rho)
    normalized = rho.normalized if isinstance(rho, DensityMatrix) else True
    if m.shape[0] != 2**n_qubits:
        raise DimensionMismatchError(f"{n_qubits} qubits need dimension {2**n_qubits}, got {m.shape[0]}")
    if not 0 <= keep < n_qubits:
        raise InvalidInputError(f"site {keep} out of range for {n_qubits} qubits")
    left, right = 2**keep, 2 ** (n_qubits - keep - 1)
    t = m.reshape(left, 2, right, left, 2, right)
    return DensityMatrix(np.einsum("aibajb->ij", t), normalized=normalized)
