"""
Index phase portraits of symbol families and jump statistics along paths.

Polynomial families are classified with the root oracle (batched companion
eigenvalues); the winding oracle is available as a spot check.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import csv
import json

import numpy as np

from .index import count_roots_batch, toeplitz_index, winding_number, ROOT_BAND
from .symbols import (LaurentSymbol, SampledSymbol, ShiftPolynomial, angular_grid,
                      c_ell_norm, from_shift_polynomial)

__all__ = [
    "NOT_FREDHOLM",
    "ParameterFamily",
    "PortraitGrid",
    "Boundaries",
    "JumpHistogram",
    "WrapResult",
    "quadratic_real_family",
    "scan_grid",
    "cross_check_cells",
    "extract_boundaries",
    "write_portrait_csv",
    "path_jump_scan",
    "random_path_jump_scan",
    "conjugate_arc_endpoints",
    "smooth_step",
    "flat_interval_symbol",
    "wraparound_experiment",
]

NOT_FREDHOLM = int(np.iinfo(np.int64).min)
BISECTION_ROUNDS = 12


@dataclass(frozen=True)
class ParameterFamily:
    """
    Affine family ``t -> base + sum_j t_j * directions[j]``.

    ``coefficient_field`` records whether the family is meant to be read
    with real or complex parameters; scans always walk real slices.
    """

    base: LaurentSymbol
    directions: tuple
    coefficient_field: str = "real"
    name: str = "custom"
    param_names: tuple = ()

    def __post_init__(self):
        dirs = tuple(self.directions)
        if not dirs:
            raise ValueError("a family needs at least one direction")
        if self.coefficient_field not in ("real", "complex"):
            raise ValueError("coefficient_field must be 'real' or 'complex'")
        object.__setattr__(self, "directions", dirs)
        if not self.param_names:
            object.__setattr__(self, "param_names", tuple("t%d" % j for j in range(len(dirs))))
        _, _, D = self.coefficient_arrays()
        if np.linalg.matrix_rank(D) < len(dirs):
            raise ValueError("directions must be linearly independent")

    @property
    def dim(self):
        return len(self.directions)

    def window(self):
        """Common exponent range ``(low, high)`` of base and directions."""
        syms = [s for s in (self.base,) + self.directions if not s.is_zero]
        lo = min(s.low for s in syms)
        hi = max(s.high for s in syms)
        return lo, hi

    def coefficient_arrays(self):
        """``(low, base_row, direction_rows)`` over the common window."""
        lo, hi = self.window()
        w = hi - lo + 1

        def row(s):
            r = np.zeros(w, complex)
            if not s.is_zero:
                r[s.low - lo:s.low - lo + s.width] = s.coeffs
            return r

        return lo, row(self.base), np.array([row(d) for d in self.directions])

    def map(self, t):
        t = np.atleast_1d(t)
        if t.size != self.dim:
            raise ValueError("expected %d parameters" % self.dim)
        out = self.base
        for tj, d in zip(t, self.directions):
            out = out + d * complex(tj)
        return out


def quadratic_real_family():
    """``A = a**2 + c1 a + c0`` with real ``(c1, c0)``."""
    base = from_shift_polynomial(ShiftPolynomial({2: 1.0}))
    dirs = (from_shift_polynomial(ShiftPolynomial({1: 1.0})),
            from_shift_polynomial(ShiftPolynomial({0: 1.0})))
    return ParameterFamily(base, dirs, "real", "quadratic-real", ("c1", "c0"))


@dataclass
class PortraitGrid:
    """Index labels on a 2-D parameter lattice; ``cells[i, j]`` sits at ``(axes[0][i], axes[1][j])``."""

    axes: tuple
    cells: np.ndarray
    family: ParameterFamily
    zero_symbol: np.ndarray = None

    @property
    def shape(self):
        return self.cells.shape

    @property
    def fredholm(self):
        return self.cells != NOT_FREDHOLM

    def regions(self):
        return sorted(set(np.unique(self.cells[self.fredholm]).tolist()))

    def cell_width(self):
        return tuple(float(a[1] - a[0]) if a.size > 1 else 0.0 for a in self.axes)

    def metadata(self):
        return {
            "family": self.family.name,
            "params": list(self.family.param_names),
            "window": [[float(a[0]), float(a[-1])] for a in self.axes],
            "resolution": [int(a.size) for a in self.axes],
            "oracle": "roots",
            "root_band": ROOT_BAND,
            "not_fredholm_code": "NF",
        }


def _batch_indices(low, rows):
    inside, on, is_zero = count_roots_batch(rows)
    idx = -low - inside
    bad = (on > 0) | is_zero
    return np.where(bad, NOT_FREDHOLM, idx).astype(np.int64), is_zero


def scan_grid(fam, window=((-3.0, 3.0), (-3.0, 3.0)), res=401):
    """
    Classify every point of a ``res x res`` parameter grid by its index.

    Parameters
    ----------
    fam : ParameterFamily
        Must have exactly two (real) scan directions.
    window : pair of (min, max)
    res : int or pair of int

    Returns
    -------
    PortraitGrid
    """
    if fam.dim != 2:
        raise ValueError("scan_grid needs a family with exactly two directions")
    nx, ny = (res, res) if np.isscalar(res) else res
    ax = np.linspace(window[0][0], window[0][1], int(nx))
    ay = np.linspace(window[1][0], window[1][1], int(ny))
    low, base, D = fam.coefficient_arrays()
    T0, T1 = np.meshgrid(ax, ay, indexing="ij")
    rows = base + T0.reshape(-1, 1) * D[0] + T1.reshape(-1, 1) * D[1]
    cells, zero = _batch_indices(low, rows)
    return PortraitGrid((ax, ay), cells.reshape(nx, ny), fam, zero.reshape(nx, ny))


def cross_check_cells(grid, fraction=0.01, seed=0):
    """
    Re-evaluate a random subset of Fredholm cells with the winding oracle.

    Returns the list of ``(i, j, root_index, winding_index)`` disagreements.
    """
    rng = np.random.default_rng(seed)
    ii, jj = np.nonzero(grid.fredholm)
    if ii.size == 0:
        return []
    pick = rng.choice(ii.size, size=max(1, int(round(fraction * ii.size))), replace=False)
    bad = []
    for p in pick:
        i, j = int(ii[p]), int(jj[p])
        s = grid.family.map([grid.axes[0][i], grid.axes[1][j]])
        res = toeplitz_index(s)
        if not res.is_fredholm or res.index != grid.cells[i, j]:
            bad.append((i, j, int(grid.cells[i, j]), res.index))
    return bad


@dataclass
class Boundaries:
    """Adjacent cell pairs with different finite indices, plus non-Fredholm cells."""

    edges: list
    not_fredholm: list

    def jump_sizes(self):
        return sorted({e[2] for e in self.edges})


def extract_boundaries(grid):
    """
    Edges between 4-neighbour cells whose finite indices differ.

    Each edge is ``((i, j), (i2, j2), |delta index|)``.  Non-Fredholm cells
    are not paired; they are listed separately.
    """
    c = grid.cells
    ok = grid.fredholm
    edges = []
    for axis in (0, 1):
        a = c[:-1, :] if axis == 0 else c[:, :-1]
        b = c[1:, :] if axis == 0 else c[:, 1:]
        va = ok[:-1, :] if axis == 0 else ok[:, :-1]
        vb = ok[1:, :] if axis == 0 else ok[:, 1:]
        mask = va & vb & (a != b)
        for i, j in zip(*np.nonzero(mask)):
            i2, j2 = (i + 1, j) if axis == 0 else (i, j + 1)
            edges.append(((int(i), int(j)), (int(i2), int(j2)), int(abs(b[i, j] - a[i, j]))))
    nf = [(int(i), int(j)) for i, j in zip(*np.nonzero(~ok))]
    return Boundaries(edges, nf)


def write_portrait_csv(grid, path):
    """Row-major CSV with one ``param0,param1,index`` line per cell (``NF`` if not Fredholm).

    A JSON sidecar ``<path>.json`` carries the family, window and resolution.
    """
    names = list(grid.family.param_names)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(names + ["index"])
        ax, ay = grid.axes
        for i, x in enumerate(ax):
            for j, y in enumerate(ay):
                v = grid.cells[i, j]
                w.writerow([repr(float(x)), repr(float(y)), "NF" if v == NOT_FREDHOLM else int(v)])
    with open(str(path) + ".json", "w") as fh:
        json.dump(grid.metadata(), fh, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# jump statistics along one-parameter paths

@dataclass
class JumpHistogram:
    ensemble: str
    degree: int
    counts: dict
    paths: int
    steps: int
    seed: int
    unresolved: int = 0

    @property
    def total(self):
        return sum(self.counts.values())

    def rate(self, k):
        return self.counts.get(k, 0) / self.total if self.total else 0.0

    def to_dict(self):
        return {
            "ensemble": self.ensemble,
            "degree": self.degree,
            "counts": {str(k): v for k, v in sorted(self.counts.items())},
            "unresolved": self.unresolved,
            "seed": self.seed,
            "paths": self.paths,
            "steps": self.steps,
        }


def _shift_rows(c):
    """Ascending coefficients of ``z**n f`` for ``A = sum c_i a**i``: reversed ``c``."""
    return np.asarray(c)[..., ::-1]


def _index_at(start, end, t, n):
    row = _shift_rows(start + t * (end - start))
    cells, _ = _batch_indices(-n, row[None, :])
    v = int(cells[0])
    return None if v == NOT_FREDHOLM else v


def _refine(start, end, n, ta, ia, tb, ib, rounds, out):
    """Bisect ``[ta, tb]`` until each sub-bracket holds a single change."""
    if ia == ib:
        return 0
    if rounds == 0:
        out.append(abs(ib - ia))
        return 0
    tm = 0.5 * (ta + tb)
    im = _index_at(start, end, tm, n)
    if im is None:
        tm = ta + 0.5001 * (tb - ta)
        im = _index_at(start, end, tm, n)
        if im is None:
            out.append(abs(ib - ia))
            return 1
    return (_refine(start, end, n, ta, ia, tm, im, rounds - 1, out)
            + _refine(start, end, n, tm, im, tb, ib, rounds - 1, out))


def _single_path(start, end, steps, rounds):
    n = start.size - 1
    ts = np.linspace(0.0, 1.0, steps + 1)
    rows = _shift_rows(start[None, :] + ts[:, None] * (end - start)[None, :])
    cells, _ = _batch_indices(-n, rows)
    jumps, unresolved = [], 0
    prev = None
    for t, v in zip(ts, cells):
        if v == NOT_FREDHOLM:
            continue
        v = int(v)
        if prev is not None and prev[1] != v:
            unresolved += _refine(start, end, n, prev[0], prev[1], t, v, rounds, jumps)
        prev = (t, v)
    return jumps, unresolved


def path_jump_scan(starts, ends, steps, ensemble="custom", seed=None, rounds=BISECTION_ROUNDS,
                   workers=None):
    """
    Jump histogram for straight paths between given coefficient vectors.

    ``starts[p]`` and ``ends[p]`` hold ``(c_0, ..., c_n)`` of
    ``A = sum c_i a**i``.  Each path is sampled at ``steps + 1`` points;
    every index change between consecutive Fredholm samples is bisected
    `rounds` times so separate crossings are counted separately.
    """
    starts = np.atleast_2d(np.asarray(starts, dtype=complex))
    ends = np.atleast_2d(np.asarray(ends, dtype=complex))
    degree = starts.shape[1] - 1 if starts.size else 0

    def one(p):
        return _single_path(starts[p], ends[p], steps, rounds)

    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            results = list(ex.map(one, range(len(starts))))
    else:
        results = [one(p) for p in range(len(starts))]
    counts, unresolved = {}, 0
    for jumps, u in results:
        unresolved += u
        for k in jumps:
            counts[k] = counts.get(k, 0) + 1
    return JumpHistogram(ensemble, degree, counts, len(starts), steps, seed, unresolved)


def _gaussian(rng, size, ensemble):
    if ensemble == "complex":
        return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2)
    if ensemble == "real":
        return rng.standard_normal(size) + 0j
    raise ValueError("ensemble must be 'complex' or 'real'")


def random_path_jump_scan(ensemble, degree, paths, steps, seed, rounds=BISECTION_ROUNDS,
                          workers=None):
    """
    Jump statistics for random straight paths in degree-``n`` shift polynomials.

    Endpoints are standard Gaussian coefficient vectors (complex or real);
    path ``p`` draws from its own generator seeded by ``(seed, p)``, so the
    result does not depend on scheduling.
    """
    if degree < 1 or steps < 1:
        raise ValueError("degree and steps must be >= 1")
    starts = np.zeros((paths, degree + 1), complex)
    ends = np.zeros((paths, degree + 1), complex)
    for p in range(paths):
        rng = np.random.default_rng([seed, p])
        starts[p] = _gaussian(rng, degree + 1, ensemble)
        ends[p] = _gaussian(rng, degree + 1, ensemble)
    hist = path_jump_scan(starts, ends, steps, ensemble, seed, rounds, workers)
    hist.degree = degree
    return hist


def conjugate_arc_endpoints(paths, seed, c1_max=1.9, c0_range=(0.5, 1.5)):
    """
    Real quadratic paths ``a**2 + c1 a + c0`` crossing ``c0 = 1`` at fixed ``|c1| < 2``.

    On the crossing the roots are a complex conjugate pair on the circle.
    """
    rng = np.random.default_rng([seed, 0x2C])
    c1 = rng.uniform(-c1_max, c1_max, paths)
    starts = np.stack([np.full(paths, c0_range[0]), c1, np.ones(paths)], axis=1)
    ends = np.stack([np.full(paths, c0_range[1]), c1, np.ones(paths)], axis=1)
    return starts, ends


# ---------------------------------------------------------------------------
# C^ell wrap-around

def smooth_step(x):
    """C-infinity step: 0 for ``x <= 0``, 1 for ``x >= 1``."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        g0 = np.where(x > 0, np.exp(-1.0 / np.where(x > 0, x, 1.0)), 0.0)
        g1 = np.where(x < 1, np.exp(-1.0 / np.where(x < 1, 1.0 - x, 1.0)), 0.0)
    return g0 / (g0 + g1)


def flat_interval_symbol(theta, delta, theta0=0.0):
    """
    Real symbol that vanishes for ``|theta - theta0| <= delta/2`` and equals 1
    for ``|theta - theta0| >= delta``, with a smooth step in between.
    """
    d = np.abs(np.angle(np.exp(1j * (np.asarray(theta) - theta0))))
    return smooth_step((d - 0.5 * delta) / (0.5 * delta))


@dataclass(frozen=True)
class WrapResult:
    winding_change: int
    perturbation_norm: float
    winding: int
    reference_winding: int
    grid: int


def _wrap_grid(bigN):
    M = 4096
    while M < 64 * abs(bigN):
        M *= 2
    return M


def wraparound_experiment(ell, delta, bigN, eps, grid=None):
    """
    Add ``eps * e^{i N theta}`` to a symbol that is flat zero on an interval.

    Returns the winding number relative to the ``N = 0`` perturbation and
    the ``C^ell`` norm of the perturbation.  The change should be close to
    ``N * delta / (2 pi)``.

    Raises
    ------
    NotFredholmError
        If ``eps == 0`` (the symbol vanishes on an interval).
    GridTooCoarseError
        If the sampled symbol cannot be resolved.
    """
    if not 0 < delta < np.pi / 4:
        raise ValueError("delta must lie in (0, pi/4)")
    if eps < 0:
        raise ValueError("eps must be >= 0")
    M = grid or _wrap_grid(bigN)
    theta = angular_grid(M)
    base = flat_interval_symbol(theta, delta)
    pert = SampledSymbol(base + eps * np.exp(1j * bigN * theta), ell)
    ref = SampledSymbol(base + eps * np.ones(M), ell)
    w_ref = winding_number(ref)
    w = winding_number(pert)
    norm = c_ell_norm(LaurentSymbol.monomial(bigN, eps), ell) if eps else 0.0
    return WrapResult(w - w_ref, norm, w, w_ref, M)
