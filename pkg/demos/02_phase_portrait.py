"""
Index phase portrait of a^2 + c1 a + c0 over real (c1, c0), and what
happens at the region boundaries.

Run:  python demos/02_phase_portrait.py [out.csv]
"""
import sys
from collections import Counter

import numpy as np

from toeplitz_fredholm import (NOT_FREDHOLM, conjugate_arc_endpoints, extract_boundaries,
                               path_jump_scan, quadratic_real_family, random_path_jump_scan,
                               scan_grid, write_portrait_csv)

fam = quadratic_real_family()
grid = scan_grid(fam, ((-3, 3), (-3, 3)), 401)
print("regions:", grid.regions())

# coarse text rendering, c0 up, c1 across
sub = grid.cells[::16, ::16]
glyph = {0: ".", 1: "o", 2: "#"}
for row in sub.T[::-1]:
    print("  " + "".join(glyph.get(int(v), "x") if v != NOT_FREDHOLM else "x" for v in row))

# The triangle (index 2) is bounded by two lines where a real root of
# w^2 + c1 w + c0 passes through +-1, and by the segment c0 = 1 where a
# complex conjugate pair crosses the circle together.
b = extract_boundaries(grid)
print("edge jump sizes:", Counter(e[2] for e in b.edges))

if len(sys.argv) > 1:
    write_portrait_csv(grid, sys.argv[1])
    print("wrote", sys.argv[1])

# %% Jumps along random straight paths.  For complex coefficients a
# jump by 2 needs two roots on the circle at once, which a generic
# path misses.  Real coefficients reach it on a codimension-one set.
h = random_path_jump_scan("complex", 4, 200, 200, seed=7)
print("complex n=4:", h.to_dict()["counts"], "unresolved", h.unresolved)
h = random_path_jump_scan("real", 2, 200, 200, seed=7)
print("real n=2   :", h.to_dict()["counts"])
s, e = conjugate_arc_endpoints(200, seed=7)
h = path_jump_scan(s, e, 200, "real", 7)
print("real n=2, paths across c0=1:", h.to_dict()["counts"], f"rate(2)={h.rate(2):.2f}")
