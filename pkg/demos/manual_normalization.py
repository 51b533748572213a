"""Rescaled unitaries are harmless under manual normalization; other maps break linearity."""

import numpy as np

from qaxioms import EvolutionOperator, evolve_manual_norm_A, evolve_unitary, normalize
from qaxioms.evolution import linearity_defect
from qaxioms.linalg_core import random_unitary
from qaxioms.states import RawState, UnitState, equivalent_A

rng = np.random.default_rng(5)
v = random_unitary(2, rng)
u = normalize(RawState([1.0, 1j]))

a = evolve_unitary(u, EvolutionOperator(v))
b = evolve_manual_norm_A(u, EvolutionOperator(0.3j * v))
print("0.3i*V then renormalize matches V:", equivalent_A(a, b))

e0, e1 = UnitState([1, 0]), UnitState([0, 1])
w = 1 / np.sqrt(2)
for name, m in [("V", v), ("0.3i*V", 0.3j * v), ("diag(1, 0.1)", np.diag([1, 0.1]))]:
    print(f"linearity defect of {name:13s} {linearity_defect(EvolutionOperator(m), e0, e1, w, w):.3e}")
