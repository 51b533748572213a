import numpy as np
import pytest

from qaxioms.composite import bell_state, embed_local
from qaxioms.errors import InvalidInputError
from qaxioms.evolution import EvolutionOperator, evolve_linear_B
from qaxioms.linalg_core import OperatorTag, random_unitary
from qaxioms.measurement import born_probabilities_B, make_observable, sample_measurement
from qaxioms.signaling import (
    SignalingConfig,
    alice_gate,
    bob_observable,
    error_rate_sweep,
    formulation_A_distribution,
    marginal_deviation_linear_B,
    no_communication_check,
    run_protocol,
    signaled_state,
    sweep_to_tsv,
)


def full_joint_probabilities(bit, eps):
    """Independent path: 4-dim amplitudes written out by hand, then the ratio Born rule."""
    amps = np.array([1, 0, 0, eps]) if bit == 0 else np.array([eps, 0, 0, 1])
    w = np.abs(amps) ** 2 / np.sum(np.abs(amps) ** 2)
    # Bob's bit is the second label: indices 0 (00) and 2 (10) give 0
    return np.array([w[0] + w[2], w[1] + w[3]])


def test_alice_gate_examples():
    g = alice_gate(0, 0.1)
    assert np.array_equal(g.matrix, np.diag([1, 0.1]))
    assert g.tag is OperatorTag.GENERAL_INVERTIBLE
    assert np.array_equal(alice_gate(1, 0.1).matrix, np.diag([0.1, 1]))
    for eps in (0.0, -0.1, 1.0, 1.5):
        with pytest.raises(InvalidInputError):
            alice_gate(0, eps)
    with pytest.raises(InvalidInputError):
        alice_gate(2, 0.1)


def test_bit_one_gate_is_the_mirror_image():
    # full simulation: bit 1 sends Bob to 1 with the same error as bit 0 sends him to 0
    for eps in (0.05, 0.3, 0.7):
        p0 = run_protocol(SignalingConfig(eps, 0, 10, 0)).analytic_bob_distribution.probabilities
        p1 = run_protocol(SignalingConfig(eps, 1, 10, 0)).analytic_bob_distribution.probabilities
        assert np.array_equal(p0, p1[::-1])


def test_config_validation():
    with pytest.raises(InvalidInputError):
        SignalingConfig(epsilon=0.0)
    with pytest.raises(InvalidInputError):
        SignalingConfig(bit_to_send=3)
    with pytest.raises(InvalidInputError):
        SignalingConfig(n_trials=0)


def test_signaled_state():
    assert np.allclose(signaled_state(0, 0.1).vec, [1, 0, 0, 0.1], atol=0)


def test_protocol_analytic_values():
    rep = run_protocol(SignalingConfig(0.1, 0, 1000, 0))
    p = rep.analytic_bob_distribution
    assert p.probability(0) == pytest.approx(0.9900990099, abs=1e-10)
    assert p.probability(1) == pytest.approx(0.0099009901, abs=1e-10)
    assert abs(p.probability(0) - 1 / (1 + 0.1**2)) <= 1e-14
    assert abs(rep.analytic_error_rate - 0.1**2 / (1 + 0.1**2)) <= 1e-14
    assert np.max(np.abs(rep.reduced_density_unnormalized.matrix - np.diag([1, 0.01]))) <= 1e-14
    assert not rep.reduced_density_unnormalized.normalized
    assert sum(rep.empirical_counts) == 1000
    assert abs(p.probabilities.sum() - 1) <= 1e-12


@pytest.mark.parametrize("bit", [0, 1])
@pytest.mark.parametrize("eps", [0.01, 0.1, 0.5, 0.99])
def test_analytic_matches_brute_force(bit, eps):
    rep = run_protocol(SignalingConfig(eps, bit, 1, 0))
    assert np.max(np.abs(rep.analytic_bob_distribution.probabilities - full_joint_probabilities(bit, eps))) <= 1e-14
    assert np.max(np.abs(formulation_A_distribution(bit, eps).probabilities - full_joint_probabilities(bit, eps))) <= 1e-14


def test_empirical_rate_within_binomial_bound():
    rep = run_protocol(SignalingConfig(0.1, 0, 1_000_000, 7))
    p = 0.01 / 1.01
    assert abs(rep.empirical_error_rate - p) <= 3 * np.sqrt(p * (1 - p) / 1_000_000)


def test_trials_reproduce_single_measurements():
    cfg = SignalingConfig(0.5, 0, 300, 17)
    rep = run_protocol(cfg)
    final = signaled_state(0, 0.5)
    obs = bob_observable()
    ones = sum(sample_measurement(final, obs, 17, draw_index=k).observed_eigenvalue == 1.0 for k in range(300))
    assert rep.empirical_counts == (300 - ones, ones)


def test_parallel_matches_serial():
    cfg = SignalingConfig(0.3, 1, 600_000, 5)
    assert run_protocol(cfg).empirical_counts == run_protocol(cfg, workers=4).empirical_counts


def test_empirical_agreement_across_seeds():
    eps, n = 0.2, 100_000
    p = eps**2 / (1 + eps**2)
    bound = 4 * np.sqrt(p * (1 - p) / n)
    hits = sum(abs(run_protocol(SignalingConfig(eps, 0, n, s)).empirical_error_rate - p) <= bound for s in range(100))
    assert hits >= 99


def test_bit_symmetry_empirical():
    eps, n = 0.3, 200_000
    r0 = run_protocol(SignalingConfig(eps, 0, n, 1))
    r1 = run_protocol(SignalingConfig(eps, 1, n, 2))
    assert r0.analytic_error_rate == r1.analytic_error_rate
    sigma = np.sqrt(2 * r0.analytic_error_rate * (1 - r0.analytic_error_rate) / n)
    assert abs(r0.empirical_error_rate - r1.empirical_error_rate) <= 5 * sigma


def test_no_communication():
    assert no_communication_check(1, 0).max_marginal_deviation <= 1e-12
    assert no_communication_check(100, 1).max_marginal_deviation <= 1e-10
    with pytest.raises(InvalidInputError):
        no_communication_check(0)


def test_contrast_with_non_unitary_gate():
    # oracle: run_protocol's analytic Bob distribution
    p0 = run_protocol(SignalingConfig(0.1, 0, 1, 0)).analytic_bob_distribution.probability(0)
    dev = marginal_deviation_linear_B(np.diag([1, 0.1]))
    assert dev == pytest.approx(abs(p0 - 0.5), abs=1e-14)
    assert dev == pytest.approx(0.4900990099, abs=1e-10)


def test_linear_engine_with_unitary_gates_is_standard(rng):
    for _ in range(100):
        assert marginal_deviation_linear_B(random_unitary(2, rng)) <= 1e-10
    # also through Bob's observable on the unnormalized Bell pair
    obs = bob_observable()
    for _ in range(20):
        op = EvolutionOperator(embed_local(random_unitary(2, rng), 0, 2))
        p = born_probabilities_B(evolve_linear_B(bell_state().state, op), obs).probabilities
        assert np.max(np.abs(p - 0.5)) <= 1e-10


def test_sweep_examples():
    rows = error_rate_sweep([0.5, 1e-3], n_trials=1000, seed=0)
    # oracle: the full 4-dim computation
    assert rows[0].analytic_error == pytest.approx(full_joint_probabilities(0, 0.5)[1], abs=1e-15)
    assert rows[0].analytic_error == pytest.approx(0.2, abs=1e-15)
    assert rows[1].analytic_error == pytest.approx(full_joint_probabilities(0, 1e-3)[1], rel=1e-12)
    assert rows[1].analytic_error == pytest.approx(1e-6, rel=1e-5)


def test_sweep_monotone_and_tsv():
    eps = [k / 10 for k in range(1, 10)]
    rows = error_rate_sweep(eps, n_trials=2000, seed=3)
    analytic = [r.analytic_error for r in rows]
    assert all(b > a for a, b in zip(analytic, analytic[1:]))
    for r in rows:
        assert r.analytic_error_bit0 == pytest.approx(r.analytic_error_bit1, abs=1e-15)
    tsv = sweep_to_tsv(rows).splitlines()
    assert tsv[0].split("\t")[0] == "epsilon"
    assert len(tsv) == 10 and all(len(line.split("\t")) == 7 for line in tsv)
    assert error_rate_sweep(eps[:2], 2000, 3) == rows[:2]


def test_bob_observable_eigenvalues_are_bits():
    obs = bob_observable()
    assert list(obs.eigenvalues) == [0.0, 1.0]
    assert np.allclose(obs.eigenspaces[1].projector, np.diag([0, 1, 0, 1]))
    assert make_observable(obs.matrix).eigenvalues.tolist() == [0.0, 1.0]
