"""
Observables, the two Born rules, collapse and seeded sampling.

Random draws come from a counter-based Philox generator keyed by the seed:
draw ``k`` of seed ``s`` is the ``k``-th double of ``Philox(key=s)``, so any
draw can be reproduced on its own and chunked/parallel sampling yields the
same outcomes as a serial loop.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidInputError,
    NumericContractError,
    ZeroProbabilityError,
)
from .linalg_core import DEFAULT_TOL, as_square, hermitian_eigendecomposition, max_scaled
from .states import RawState, UnitState

DEGENERACY_TOL = 1e-9
COLLAPSE_TOL = 1e-14
SUM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Eigenspace:
    eigenvalue: float
    projector: np.ndarray
    basis: np.ndarray  # orthonormal columns

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True, eq=False)
class Observable:
    matrix: np.ndarray
    eigenspaces: tuple[Eigenspace, ...]
    degeneracy_tol: float = DEGENERACY_TOL

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([e.eigenvalue for e in self.eigenspaces])

    def eigenspace(self, eigenvalue: float) -> Eigenspace:
        for e in self.eigenspaces:
            if abs(e.eigenvalue - eigenvalue) <= self.degeneracy_tol * max(1.0, abs(e.eigenvalue)):
                return e
        raise InvalidInputError(f"{eigenvalue!r} is not an eigenvalue of this observable")


def make_observable(h, degeneracy_tol: float = DEGENERACY_TOL) -> Observable:
    """Build an observable, grouping eigenvalues closer than
    ``degeneracy_tol * max(1, |lambda|)`` (chained over the sorted spectrum)
    into one eigenspace."""
    h = as_square(h)
    vals, vecs = hermitian_eigendecomposition(h, DEFAULT_TOL)

    groups: list[list[int]] = []
    for i, lam in enumerate(vals):
        if groups and abs(lam - vals[groups[-1][-1]]) <= degeneracy_tol * max(1.0, abs(lam)):
            groups[-1].append(i)
        else:
            groups.append([i])

    spaces = []
    for g in groups:
        basis = vecs[:, g].copy()
        proj = basis @ basis.conj().T
        basis.setflags(write=False)
        proj.setflags(write=False)
        spaces.append(Eigenspace(float(np.mean(vals[g])), proj, basis))
    m = h.copy()
    m.setflags(write=False)
    return Observable(m, tuple(spaces), degeneracy_tol)


def computational_observable(dim: int) -> Observable:
    """``diag(0, 1, ..., dim-1)``: outcome k is basis index k."""
    return make_observable(np.diag(np.arange(dim, dtype=float)))


@dataclass(frozen=True)
class OutcomeDistribution:
    outcomes: tuple[tuple[float, float], ...]

    def __post_init__(self):
        total = sum(p for _, p in self.outcomes)
        if abs(total - 1.0) > SUM_TOL:
            raise NumericContractError(f"probabilities sum to {total!r}, not 1")
        for lam, p in self.outcomes:
            if not -SUM_TOL <= p <= 1.0 + SUM_TOL:
                raise NumericContractError(f"P({lam!r}) = {p!r} outside [0, 1]")

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([lam for lam, _ in self.outcomes])

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p for _, p in self.outcomes])

    def probability(self, eigenvalue: float, tol: float = 1e-9) -> float:
        for lam, p in self.outcomes:
            if abs(lam - eigenvalue) <= tol * max(1.0, abs(lam)):
                return p
        raise InvalidInputError(f"no outcome {eigenvalue!r}")


def _check(state, obs: Observable) -> np.ndarray:
    v = state.vec
    if v.size != obs.dim:
        raise DimensionMismatchError(f"state dimension {v.size} vs observable dimension {obs.dim}")
    return v


def _weights(v: np.ndarray, obs: Observable) -> list[float]:
    # <v|P|v> = sum_k |<e_k|v>|^2 over an orthonormal eigenspace basis
    return [float(np.sum(np.abs(e.basis.conj().T @ v) ** 2)) for e in obs.eigenspaces]


def _clip(p: float) -> float:
    # rounding can push a certain outcome to 1 + 2e-16
    return min(p, 1.0)


def born_probabilities_A(u: UnitState, obs: Observable) -> OutcomeDistribution:
    """``P(lambda) = <u|P_lambda|u>`` for a unit vector ``u``."""
    if not isinstance(u, UnitState):
        raise InvalidInputError("the unit-vector Born rule needs a UnitState; normalize first")
    v = _check(u, obs)
    w = _weights(v, obs)
    return OutcomeDistribution(tuple(zip((e.eigenvalue for e in obs.eigenspaces), map(_clip, w))))


def born_probabilities_B(s, obs: Observable) -> OutcomeDistribution:
    """``P(lambda) = <s|P_lambda|s> / <s|s>``; invariant under ``s -> z s``."""
    s = s.as_raw() if isinstance(s, (RawState, UnitState)) else RawState(s)
    v = _check(s, obs)
    # the rule is scale-invariant; rescale so tiny raw vectors don't underflow
    v, _ = max_scaled(v)
    w = _weights(v, obs)
    total = float(np.vdot(v, v).real)
    return OutcomeDistribution(
        tuple(zip((e.eigenvalue for e in obs.eigenspaces), (_clip(x / total) for x in w)))
    )


def collapse(state, obs: Observable, eigenvalue: float):
    """Project onto the eigenspace of ``eigenvalue``.

    A ``UnitState`` comes back renormalized; a ``RawState`` comes back as the
    bare projected vector.
    """
    v = _check(state, obs)
    space = obs.eigenspace(eigenvalue)
    w = space.projector @ v
    # compare on a rescaled copy so tiny raw vectors don't underflow
    vs, _ = max_scaled(v)
    ws = space.projector @ vs
    ratio = float(np.vdot(ws, ws).real / np.vdot(vs, vs).real)
    if ratio <= COLLAPSE_TOL:
        raise ZeroProbabilityError(f"outcome {eigenvalue!r} has probability {ratio!r}")
    if isinstance(state, UnitState):
        return UnitState(w / np.linalg.norm(w))
    return RawState(w)


def uniform_draws(seed: int, start: int, count: int) -> np.ndarray:
    """Draws ``start .. start+count-1`` of the seeded stream, uniform on [0, 1)."""
    if seed < 0 or start < 0 or count < 0:
        raise InvalidInputError("seed, start and count must be non-negative")
    bitgen = np.random.Philox(key=seed)
    # one Philox counter step yields four 64-bit words; Generator.random uses one word per double
    bitgen.advance(start // 4)
    gen = np.random.Generator(bitgen)
    if start % 4:
        gen.random(start % 4)
    return gen.random(count)


def _inverse_cdf(probs: np.ndarray, u: np.ndarray) -> np.ndarray:
    cdf = np.cumsum(probs)
    idx = np.searchsorted(cdf, u, side="right")
    # rounding can leave cdf[-1] a hair below u; fall back to the last possible outcome
    last = int(np.flatnonzero(probs > 0)[-1])
    return np.minimum(idx, last)


def sample_indices(
    dist: OutcomeDistribution, seed: int, n: int, start: int = 0, workers: int = 1, chunk: int = 1 << 18
) -> np.ndarray:
    """Outcome indices for draws ``start .. start+n-1``; identical for any ``workers``/``chunk``."""
    probs = dist.probabilities

    def run(lo: int) -> np.ndarray:
        hi = min(lo + chunk, start + n)
        return _inverse_cdf(probs, uniform_draws(seed, lo, hi - lo))

    starts = range(start, start + n, chunk)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, starts))
    else:
        parts = [run(lo) for lo in starts]
    return np.concatenate(parts) if parts else np.empty(0, dtype=np.intp)


@dataclass(frozen=True, eq=False)
class MeasurementRecord:
    observed_eigenvalue: float
    post_state: RawState | UnitState
    rng_seed_used: int
    draw_index: int = 0


def sample_measurement(state, obs: Observable, rng_seed: int, draw_index: int = 0) -> MeasurementRecord:
    """Sample one outcome by inverse CDF over ascending eigenvalues, then collapse.

    Uses the unit-vector rule for ``UnitState`` input and the projective
    rule otherwise; the two agree on every state.
    """
    if isinstance(state, UnitState):
        dist = born_probabilities_A(state, obs)
    else:
        state = state if isinstance(state, RawState) else RawState(state)
        dist = born_probabilities_B(state, obs)
    u = uniform_draws(rng_seed, draw_index, 1)
    k = int(_inverse_cdf(dist.probabilities, u)[0])
    lam = obs.eigenspaces[k].eigenvalue
    return MeasurementRecord(lam, collapse(state, obs, lam), rng_seed, draw_index)
