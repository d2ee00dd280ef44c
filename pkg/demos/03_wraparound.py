"""
Why smallness in C^l does not protect the index.

A symbol that vanishes on an interval is not Fredholm.  Adding
eps * exp(i N theta) makes it nonvanishing, and on the flat stretch the
curve just follows the perturbation around the origin about
N * delta / (2 pi) times.  Take eps much smaller than N^-l and the
perturbation is tiny in C^l while the winding number is as large as we like.
"""
import numpy as np

from toeplitz_fredholm.portrait import flat_interval_symbol, wraparound_experiment

delta, ell, eps = 0.5, 2, 1e-7
t = np.linspace(-1, 1, 9)
print("base symbol near 0:", np.round(flat_interval_symbol(t, delta), 3))

print(f"{'N':>5} {'winding':>8} {'N*delta/2pi':>12} {'C^2 norm':>10}")
for N in (0, 25, 50, 100, 200, 400):
    r = wraparound_experiment(ell, delta, N, eps)
    print(f"{N:5d} {r.winding_change:8d} {N * delta / (2 * np.pi):12.2f} {r.perturbation_norm:10.2e}")
