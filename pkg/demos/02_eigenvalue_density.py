"""Integrated density of eigenvalues g(p, x) in the thermodynamic limit.

The closed form is compared against a direct count on a long chain.  For
|x| >= 1 the curve no longer depends on x, and every curve saturates at 1/2
once p passes 1/2.
"""
import numpy as np

from tfim_entanglement import build_grid, g_of_p, mode_probability

p = np.linspace(0, 1, 401)
grid = build_grid(4096)
curves = {}
for x in (0.8, 0.9, 1.0, 3.0):
    curves[x] = g_of_p(p, x)
    pq = np.sort(mode_probability(x, grid.q_positive))
    count = np.searchsorted(pq, p) / grid.n
    print(f"x = {x}: max |closed form - count(N=4096)| = {np.max(np.abs(curves[x] - count)):.2e}")

print("x = 1 and x = 3 curves differ by", np.max(np.abs(curves[1.0] - curves[3.0])))
print("band top for x = 0.8:", p[np.argmax(curves[0.8] >= 0.5)], "(expected (1 - 0.6)/2 = 0.2)")

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    for x, g in curves.items():
        plt.plot(p, g, label=f"x = {x}")
    plt.xlabel("p")
    plt.ylabel("g(p, x)")
    plt.legend()
    plt.savefig("eigenvalue_density.png", dpi=120)
    print("wrote eigenvalue_density.png")
