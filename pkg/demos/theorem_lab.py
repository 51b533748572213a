"""Norm preservation on every unit vector forces U^dagger U = I."""

import numpy as np

from qaxioms import EvolutionOperator, theorem1_lab
from qaxioms.linalg_core import random_unitary

rng = np.random.default_rng(1)

cases = {
    "random unitary": random_unitary(3, rng),
    "2 * unitary": 2 * random_unitary(3, rng),
    "diag(1, 0.1)": np.diag([1.0, 0.1]),
    "diag(1, 0)": np.diag([1.0, 0.0]),
}

for name, m in cases.items():
    rep = theorem1_lab(EvolutionOperator(m), n_samples=500, seed=0)
    print(f"{name:16s} {rep.operator_class.tag.value:20s}"
          f" max|norm-1|={rep.max_unit_norm_deviation:.3e}"
          f" polarization={rep.polarization_residual:.1e}")
    if rep.witness is not None:
        print(f"{'':16s} witness drifts by {rep.witness_norm_deviation:.3f}")
