"""Sandwiching the fidelity of two tilted circle states.

For the equator state against its rotation by alpha, the fidelity sits
between the computable sub- and super-fidelity, and below the operator upper
bound obtained from concentrated Gaussian compressions.  This script prints
the whole chain at a few levels, plus the closed-form sub-fidelity predictor.
"""

import numpy as np

from lagfid import (
    Level,
    equator_state,
    fidelity,
    fidelity_upper_bound,
    predicted_subfidelity,
    rotated_circle_state,
    sphere_intersection_data,
    sub_fidelity,
    super_fidelity,
)

alpha = np.pi / 3
print(f"tilt angle alpha = pi/3; all quantities rescaled by k")
print(f"{'k':>5} {'k*sub':>8} {'k*fid':>8} {'k*bound(c=10)':>14} {'k*super':>9} {'k*sub_pred':>11}")
for k in (20, 50, 100):
    rho1 = equator_state(Level(k))
    rho2 = rotated_circle_state(Level(k), alpha)
    e = k * sub_fidelity(rho1, rho2)
    f = k * fidelity(rho1, rho2)
    b = k * fidelity_upper_bound(Level(k), alpha, c=10.0)
    g = k * super_fidelity(rho1, rho2)
    pred = k * predicted_subfidelity(sphere_intersection_data(alpha), k)
    print(f"{k:>5} {e:>8.4f} {f:>8.4f} {b:>14.4f} {g:>9.4f} {pred:>11.4f}")
