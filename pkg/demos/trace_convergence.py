"""How fast does the rescaled trace of two great-circle states converge?

Builds the equator state and the meridian state at increasing level k,
computes k * Tr(rho_1 rho_2), and compares with the closed-form limit 2/pi
coming from the single principal angle (pi/2) at the two intersection points.
"""

import numpy as np

from lagfid import (
    Level,
    equator_state,
    expectation,
    meridian_state,
    predicted_trace,
    sphere_intersection_data,
)

limit = predicted_trace(sphere_intersection_data(np.pi / 2), 1)
print(f"predicted limit of k * trace: {limit:.6f} (= 2/pi)")
print(f"{'k':>5} {'k*trace':>10} {'rel. error':>11}")
for k in (5, 10, 20, 40, 80, 160):
    val = k * expectation(equator_state(Level(k)), meridian_state(Level(k)))
    print(f"{k:>5} {val:>10.6f} {abs(val - limit) / limit:>11.2e}")
