"""eps(x) and eps'(x) for N = 10, 20 and the infinite chain.

The infinite-chain value is flat at ln 2 - 1/2 for |x| >= 1.  Finite chains
overshoot slightly past x = 1 and relax back onto the plateau.
"""
import math

import numpy as np

from tfim_entanglement.cli import SweepConfig, cmd_sweep

cfg = SweepConfig(x_min=-2, x_max=2, x_steps=81, sizes=[10, 20, "inf"])
rows = cmd_sweep(cfg)
by_size = {}
for r in rows:
    by_size.setdefault(r["size"], []).append(r)

for size, rs in by_size.items():
    eps = np.array([r["epsilon"] for r in rs])
    xs = np.array([r["x"] for r in rs])
    print(f"N = {size:>3}: max eps = {eps.max():.5f} at |x| = {abs(xs[np.argmax(eps)]):.3f}")
print(f"plateau ln 2 - 1/2 = {math.log(2) - 0.5:.5f}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    fig, (a1, a2) = plt.subplots(2, 1, sharex=True, figsize=(6, 7))
    for size, rs in by_size.items():
        xs = [r["x"] for r in rs]
        a1.plot(xs, [r["epsilon"] for r in rs], label=f"N = {size}")
        a2.plot(xs, [r["eps_d1"] for r in rs])
    a1.set_ylabel("eps")
    a2.set_ylabel("d eps / dx")
    a2.set_xlabel("x = J/h")
    a1.legend()
    fig.savefig("entanglement_curve.png", dpi=120)
    print("wrote entanglement_curve.png")
