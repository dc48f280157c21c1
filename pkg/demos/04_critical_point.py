"""What happens to eps(x) at x = 1.

The slope jumps from (pi - 2)/4 on the left to 0 on the right.  The second
derivative stays finite on the left (about 0.107 as x -> 1-), so a log-log
fit of eps'' against 1 - x gives a slope near zero rather than a power-law
divergence.
"""
import json
import math

import numpy as np

from tfim_entanglement import Side, epsilon_derivative
from tfim_entanglement.cli import cmd_critical

report = cmd_critical()
print(json.dumps({k: v for k, v in report.items() if k != "fit_points"}, indent=1))
print(f"(pi - 2)/4 = {(math.pi - 2) / 4:.10f}")

print(f"\n{'1 - x':>8} {'eps_prime':>12} {'eps_second':>12}")
for d in np.geomspace(1e-1, 1e-3, 7):
    x = 1 - d
    print(f"{d:8.1e} {epsilon_derivative(x, 1, 1e-5, Side.LEFT, 1e-13):12.8f} "
          f"{epsilon_derivative(x, 2, 1e-4, Side.LEFT, 1e-13):12.8f}")
