"""
Entanglement and steering measures
==================================

The measures on states whose answers are known in closed form, and the
region labels used by the sweeps.
"""

import math

import numpy as np

from optosqueeze import classify_region, log_negativity, steering
from optosqueeze.oracle import random_two_mode_state, tmsv_covariance

for s in (0.1, 0.5, 1.0):
    v = tmsv_covariance(s)
    print(f"s={s}: EN={log_negativity(v)[0]:.6f} (2s={2 * s}), "
          f"G={steering(v):.6f} (ln cosh 2s={math.log(math.cosh(2 * s)):.6f})")

####################################################################
# Adding noise to one side breaks the symmetry: the noisy party can still
# steer the clean one, not the other way round.

a, b, c = 3.0, 1.0, 1.5
v = np.array([[a, 0, c, 0], [0, a, 0, -c], [c, 0, b, 0], [0, -c, 0, b]])
e_n = log_negativity(v)[0]
g12, g21 = steering(v, "1->2"), steering(v, "2->1")
print(f"EN={e_n:.4f}  G_1->2={g12:.4f}  G_2->1={g21:.4f}  region={classify_region(e_n, g12, g21)}")

####################################################################
# Steering never appears without entanglement.

rng = np.random.default_rng(0)
tally = {}
for _ in range(2000):
    w = random_two_mode_state(rng)
    e_n = log_negativity(w)[0]
    label = str(classify_region(e_n, steering(w, "1->2"), steering(w, "2->1")))
    tally[label] = tally.get(label, 0) + 1
print(dict(sorted(tally.items())))
