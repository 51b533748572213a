"""Manual normalization lets Alice steer Bob's statistics; unitaries do not."""

import numpy as np

from qaxioms.signaling import (
    SignalingConfig,
    error_rate_sweep,
    marginal_deviation_linear_B,
    no_communication_check,
    run_protocol,
)

rep = run_protocol(SignalingConfig(epsilon=0.1, bit_to_send=0, n_trials=200_000, rng_seed=3))
print("Bob's distribution:", rep.analytic_bob_distribution.probabilities)
print("counts            :", rep.empirical_counts)
print(f"error rate        : {rep.empirical_error_rate:.5f} (analytic {rep.analytic_error_rate:.5f}, sigma {rep.sigma:.1e})")

print("\nepsilon  analytic  empirical")
for row in error_rate_sweep([0.05, 0.2, 0.5, 0.9], n_trials=50_000, seed=3):
    print(f"{row.epsilon:7.2f}  {row.analytic_error:.5f}   {row.empirical_error:.5f}")

print("\nshift of Bob's marginal under diag(1, 0.1):", marginal_deviation_linear_B(np.diag([1, 0.1])))
print("worst shift over 100 unitaries          :", no_communication_check(100, seed=3).max_marginal_deviation)
