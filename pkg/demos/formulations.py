"""Unit vectors versus rays: both Born rules give the same numbers."""

import numpy as np

from qaxioms import born_probabilities_A, born_probabilities_B, make_observable, normalize
from qaxioms.linalg_core import random_hermitian
from qaxioms.states import RawState, canonicalize, equivalent_B

rng = np.random.default_rng(7)

s = RawState([3.0, 4.0j, 0.0])
obs = make_observable(random_hermitian(3, rng))

print("raw state        ", s.vec)
print("canonical ray    ", canonicalize(s).vec)
print("unit-vector rule ", born_probabilities_A(normalize(s), obs).probabilities)
print("projective rule  ", born_probabilities_B(s, obs).probabilities)

# any nonzero rescaling is the same ray
z = 1e-5 * np.exp(0.3j)
print("same ray after scaling by z:", equivalent_B(s, RawState(z * s.vec)))
print("projective rule on z*s     ", born_probabilities_B(RawState(z * s.vec), obs).probabilities)
