"""
From the lowest Landau level to a lattice Hall staircase.

The lattice part takes ~10 s (L=16); set L=24 for the sharper version.
"""
import numpy as np

from toeplitz_fredholm.qhe import (build_lattice_model, compactness_witness, hall_step_scan,
                                   hofstadter_gaps, landau_pup_weights)

# %% In the lowest Landau level P U P is a weighted shift with weights
# Gamma(m+3/2) / (m! sqrt(m+1)) -> 1.  The defect from the pure shift goes
# to zero like 1/(8m), so the two differ by a compact operator and share
# the index.
lw = landau_pup_weights(10_000)
for m in (0, 1, 10, 100, 1000):
    print(f"w[{m}] = {lw.w[m]:.12f}   1 - 1/(8m) = {1 - 1 / (8 * m) if m else float('nan'):.12f}")
for M in (100, 1000, 10_000):
    print(f"sup_(m >= {M // 2}) |w - 1| = {compactness_witness(landau_pup_weights(M)):.3e}")

# %% Lattice: flux 1/7 per plaquette, open L x L patch.  The estimate is
# Tr (P - U P U*)^3 restricted to a disc around the flux insertion point;
# the full finite trace is exactly zero because the edge carries the
# opposite index.
L = 16
model = build_lattice_model(L, "1/7", 0.0, seed=1)
gaps = hofstadter_gaps(1, 7, min_width=0.05)[:3]
mids = [(a + b) / 2 for a, b in gaps]
curve = hall_step_scan(model, mids)
for (lo, hi), E, est in zip(gaps, mids, curve.estimates):
    print(f"gap ({lo:+.3f}, {hi:+.3f})  E={E:+.3f}  estimate={est:.3f}")

# The third gap is narrow (about 0.3 wide) and its edge states reach well
# into a disc of radius L/3, so at this size the estimate there sits
# between 2 and 3 and creeps upward with L.

# %% Coarse staircase across the lower half of the spectrum
E = np.linspace(-3.6, -0.2, 35)
c = hall_step_scan(model, E)
for e, v in zip(E[::2], c.estimates[::2]):
    print(f"{e:+.2f} {v:6.2f} " + "*" * int(round(10 * max(v, 0))))
