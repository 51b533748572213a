"""
Entanglement signaling under manually normalized (non-unitary) evolution.

Alice and Bob share ``|00> + |11>``. To send bit 0 Alice applies
``diag(1, eps)`` to her qubit, to send bit 1 ``diag(eps, 1)``. Bob measures
his qubit in the computational basis and reads the bit directly; he gets the
wrong bit with probability ``eps**2 / (1 + eps**2)``. With unitary gates
Bob's statistics never move off ``{1/2, 1/2}``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .composite import (
    DensityMatrix,
    bell_state,
    density_from_state,
    embed_local,
    partial_trace,
)
from .errors import InvalidInputError
from .evolution import EvolutionOperator, evolve_linear_B, evolve_manual_norm_A, evolve_unitary
from .linalg_core import random_unitary
from .measurement import (
    Observable,
    OutcomeDistribution,
    born_probabilities_A,
    born_probabilities_B,
    make_observable,
    sample_indices,
)
from .serialization import density_to_json, distribution_to_json
from .states import RawState, normalize

ALICE, BOB = 0, 1


def bob_observable() -> Observable:
    """Bob's computational-basis measurement on the joint space; eigenvalue = bit."""
    return make_observable(embed_local(np.diag([0.0, 1.0]), BOB, 2))


def _check_epsilon(epsilon: float):
    if not 0.0 < epsilon < 1.0:
        raise InvalidInputError(
            f"epsilon must lie in (0, 1), got {epsilon!r}; "
            "epsilon = 0 makes the gate singular and epsilon = 1 carries no signal"
        )


@dataclass(frozen=True)
class SignalingConfig:
    epsilon: float = 0.1
    bit_to_send: int = 0
    n_trials: int = 100_000
    rng_seed: int = 0

    def __post_init__(self):
        _check_epsilon(self.epsilon)
        if self.bit_to_send not in (0, 1):
            raise InvalidInputError(f"bit must be 0 or 1, got {self.bit_to_send!r}")
        if self.n_trials < 1:
            raise InvalidInputError("n_trials must be positive")
        if self.rng_seed < 0:
            raise InvalidInputError("rng_seed must be non-negative")


@dataclass(frozen=True, eq=False)
class SignalingReport:
    config: SignalingConfig
    analytic_bob_distribution: OutcomeDistribution
    empirical_counts: tuple[int, int]
    empirical_error_rate: float
    analytic_error_rate: float
    reduced_density_unnormalized: DensityMatrix

    @property
    def sigma(self) -> float:
        """Binomial standard error of the empirical error rate."""
        p = self.analytic_error_rate
        return float(np.sqrt(p * (1.0 - p) / self.config.n_trials))


@dataclass(frozen=True)
class NoCommReport:
    n_unitaries: int
    seed: int
    max_marginal_deviation: float


def alice_gate(bit: int, epsilon: float) -> EvolutionOperator:
    _check_epsilon(epsilon)
    if bit == 0:
        return EvolutionOperator(np.diag([1.0, epsilon]).astype(complex), f"diag(1, {epsilon!r})")
    if bit == 1:
        return EvolutionOperator(np.diag([epsilon, 1.0]).astype(complex), f"diag({epsilon!r}, 1)")
    raise InvalidInputError(f"bit must be 0 or 1, got {bit!r}")


def signaled_state(bit: int, epsilon: float) -> RawState:
    """Joint raw state after Alice's gate acts on the shared Bell pair."""
    gate = alice_gate(bit, epsilon)
    joint = EvolutionOperator(embed_local(gate.matrix, ALICE, 2), f"{gate.label} on A")
    return evolve_linear_B(bell_state().state, joint)


def bob_marginal(state) -> np.ndarray:
    """Bob's outcome probabilities read off his renormalized reduced density matrix."""
    rho = partial_trace(density_from_state(state), BOB, 2)
    return rho.renormalized().diagonal


def run_protocol(cfg: SignalingConfig, workers: int = 1) -> SignalingReport:
    final = signaled_state(cfg.bit_to_send, cfg.epsilon)
    dist = born_probabilities_B(final, bob_observable())
    rho_b = partial_trace(density_from_state(final, normalize=False), BOB, 2)

    # trial k uses draw k of the seeded stream, identical to sample_measurement(..., draw_index=k)
    idx = sample_indices(dist, cfg.rng_seed, cfg.n_trials, workers=workers)
    ones = int(np.count_nonzero(idx))
    counts = (cfg.n_trials - ones, ones)
    wrong = 1 - cfg.bit_to_send
    return SignalingReport(
        config=cfg,
        analytic_bob_distribution=dist,
        empirical_counts=counts,
        empirical_error_rate=counts[wrong] / cfg.n_trials,
        analytic_error_rate=dist.probability(float(wrong)),
        reduced_density_unnormalized=rho_b,
    )


def formulation_A_distribution(bit: int, epsilon: float) -> OutcomeDistribution:
    """The same prediction computed on unit vectors with the manual-normalization map."""
    gate = alice_gate(bit, epsilon)
    joint = EvolutionOperator(embed_local(gate.matrix, ALICE, 2))
    u = evolve_manual_norm_A(normalize(bell_state().state), joint)
    return born_probabilities_A(u, bob_observable())


def no_communication_check(n_unitaries: int = 100, seed: int = 0) -> NoCommReport:
    if n_unitaries < 1:
        raise InvalidInputError("n_unitaries must be at least 1")
    rng = np.random.default_rng(seed)
    start = normalize(bell_state().state)
    worst = 0.0
    for _ in range(n_unitaries):
        v = random_unitary(2, rng)
        u = evolve_unitary(start, EvolutionOperator(embed_local(v, ALICE, 2)))
        worst = max(worst, float(np.max(np.abs(bob_marginal(u) - 0.5))))
    return NoCommReport(n_unitaries, seed, worst)


def marginal_deviation_linear_B(gate) -> float:
    """Bob's marginal shift when ``gate`` acts on Alice's half via the general linear engine."""
    joint = EvolutionOperator(embed_local(gate, ALICE, 2))
    final = evolve_linear_B(bell_state().state, joint)
    return float(np.max(np.abs(bob_marginal(final) - 0.5)))


@dataclass(frozen=True)
class SweepRow:
    epsilon: float
    analytic_error: float
    empirical_error: float
    analytic_error_bit0: float
    empirical_error_bit0: float
    analytic_error_bit1: float
    empirical_error_bit1: float


def error_rate_sweep(epsilons, n_trials: int = 100_000, seed: int = 0, workers: int = 1) -> list[SweepRow]:
    """Run both bit values at every epsilon; each (epsilon, bit) gets its own derived seed."""
    rows = []
    for i, eps in enumerate(epsilons):
        reports = []
        for bit in (0, 1):
            sub = int(np.random.SeedSequence([seed, i, bit]).generate_state(1, np.uint64)[0])
            reports.append(run_protocol(SignalingConfig(float(eps), bit, n_trials, sub), workers))
        r0, r1 = reports
        rows.append(
            SweepRow(
                epsilon=float(eps),
                analytic_error=0.5 * (r0.analytic_error_rate + r1.analytic_error_rate),
                empirical_error=0.5 * (r0.empirical_error_rate + r1.empirical_error_rate),
                analytic_error_bit0=r0.analytic_error_rate,
                empirical_error_bit0=r0.empirical_error_rate,
                analytic_error_bit1=r1.analytic_error_rate,
                empirical_error_bit1=r1.empirical_error_rate,
            )
        )
    return rows


def signaling_report_to_json(r: SignalingReport) -> dict:
    return {
        "epsilon": r.config.epsilon,
        "bit_to_send": r.config.bit_to_send,
        "n_trials": r.config.n_trials,
        "rng_seed": r.config.rng_seed,
        "analytic_bob_distribution": distribution_to_json(r.analytic_bob_distribution),
        "empirical_counts": list(r.empirical_counts),
        "empirical_error_rate": r.empirical_error_rate,
        "analytic_error_rate": r.analytic_error_rate,
        "reduced_density_unnormalized": density_to_json(r.reduced_density_unnormalized),
    }


def signaling_report_to_tsv(r: SignalingReport) -> str:
    p0, p1 = r.analytic_bob_distribution.probabilities
    header = "epsilon\tbit\tn_trials\tseed\tP0\tP1\tcount0\tcount1\tanalytic_error\tempirical_error"
    row = "\t".join(
        repr(x)
        for x in (
            r.config.epsilon,
            r.config.bit_to_send,
            r.config.n_trials,
            r.config.rng_seed,
            float(p0),
            float(p1),
            *r.empirical_counts,
            r.analytic_error_rate,
            r.empirical_error_rate,
        )
    )
    return f"{header}\n{row}\n"


def no_comm_report_to_json(r: NoCommReport) -> dict:
    return {"n_unitaries": r.n_unitaries, "seed": r.seed, "max_marginal_deviation": r.max_marginal_deviation}


def sweep_to_tsv(rows: list[SweepRow]) -> str:
    cols = [
        "epsilon",
        "analytic_error_bit0",
        "empirical_error_bit0",
        "analytic_error_bit1",
        "empirical_error_bit1",
        "analytic_error",
        "empirical_error",
    ]
    lines = ["\t".join(cols)]
    for row in rows:
        lines.append("\t".join(repr(getattr(row, c)) for c in cols))
    return "\n".join(lines) + "\n"


SIGNALING_REPORT_SCHEMA = {
    "type": "object",
    "required": [
        "epsilon",
        "bit_to_send",
        "n_trials",
        "rng_seed",
        "analytic_bob_distribution",
        "empirical_counts",
        "empirical_error_rate",
        "analytic_error_rate",
        "reduced_density_unnormalized",
    ],
    "properties": {
        "epsilon": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "bit_to_send": {"enum": [0, 1]},
        "n_trials": {"type": "integer", "minimum": 1},
        "empirical_counts": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        "empirical_error_rate": {"type": "number", "minimum": 0, "maximum": 1},
        "analytic_error_rate": {"type": "number", "minimum": 0, "maximum": 1},
    },
}
NO_COMM_REPORT_SCHEMA = {
    "type": "object",
    "required": ["n_unitaries", "seed", "max_marginal_deviation"],
    "properties": {"max_marginal_deviation": {"type": "number", "minimum": 0}},
}
