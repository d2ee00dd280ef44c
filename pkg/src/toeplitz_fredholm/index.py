"""
Fredholm index of scalar Toeplitz operators by two independent routes.

``toeplitz_index`` counts how often the symbol winds around the origin;
``index_from_roots`` factors ``z**m f(z)`` and counts roots inside the unit
circle.  Both follow the orientation fixed in :mod:`toeplitz_fredholm.symbols`,
so ``Index(T_f) = -winding(f) = pole_order - inside_count``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import GridTooCoarseError, NotFredholmError, ZeroSymbolError
from .symbols import LaurentSymbol, SampledSymbol, angular_grid, sample

__all__ = [
    "IndexResult",
    "RootReport",
    "winding_number",
    "toeplitz_index",
    "laurent_roots",
    "index_from_roots",
    "expected_jump_codimension",
    "companion_matrix",
    "count_roots_batch",
    "MODULUS_TOL",
    "ROOT_BAND",
]

MODULUS_TOL = 1e-9
ROOT_BAND = 1e-9
MAX_GRID = 2 ** 20
PHASE_STEP_LIMIT = np.pi / 2


@dataclass(frozen=True)
class IndexResult:
    """Outcome of an index computation.

    ``index`` is None and ``witness_theta`` is set when the symbol is not
    Fredholm (it vanishes, numerically, on the circle).
    """

    status: str
    index: int = None
    min_modulus: float = float("nan")
    method: str = "winding"
    witness_theta: float = None
    grid: int = None

    @property
    def is_fredholm(self):
        return self.status == "fredholm"

    def to_dict(self):
        d = {"status": self.status}
        if self.is_fredholm:
            d["index"] = int(self.index)
        else:
            d["witness_theta"] = self.witness_theta
        d["min_modulus"] = self.min_modulus
        d["method"] = self.method
        if self.grid is not None:
            d["grid"] = self.grid
        return d


@dataclass(frozen=True)
class RootReport:
    roots: np.ndarray
    pole_order: int
    inside_count: int
    on_circle_count: int
    outside_count: int
    band: float = ROOT_BAND

    @property
    def total(self):
        return self.inside_count + self.on_circle_count + self.outside_count

    def to_dict(self):
        return {
            "roots": [[float(r.real), float(r.imag)] for r in self.roots],
            "pole_order": self.pole_order,
            "inside": self.inside_count,
            "on_circle": self.on_circle_count,
            "outside": self.outside_count,
        }


def _default_grid(s):
    if isinstance(s, SampledSymbol):
        return s.size
    span = max(abs(s.low), abs(s.high), 1)
    M = 256
    while M < 16 * span:
        M *= 2
    return M


def _check_nonzero(s):
    if isinstance(s, LaurentSymbol) and s.is_zero:
        raise ZeroSymbolError("zero symbol has no index")


def _resolve_winding(s, grid, tol, adaptive):
    """Winding number plus diagnostics; raises on failure."""
    _check_nonzero(s)
    M = grid or _default_grid(s)
    while True:
        values = sample(s, M)
        mod = np.abs(values)
        imin = int(np.argmin(mod))
        scale = float(np.max(mod))
        if scale == 0.0 or mod[imin] < tol * scale:
            raise NotFredholmError(
                "symbol vanishes on the unit circle near theta=%.6g" % angular_grid(M)[imin],
                witness_theta=float(angular_grid(M)[imin]),
                min_modulus=float(mod[imin]),
            )
        # branch-corrected increments arg(f_{k+1}/f_k), each in (-pi, pi]
        steps = np.angle(np.roll(values, -1) / values)
        if np.max(np.abs(steps)) < PHASE_STEP_LIMIT:
            w = np.sum(steps) / (2 * np.pi)
            return int(np.rint(w)), float(mod[imin]), M
        if not adaptive or 2 * M > MAX_GRID:
            raise GridTooCoarseError(
                "phase step %.3g rad >= pi/2 on a %d-point grid" % (np.max(np.abs(steps)), M))
        M *= 2


def winding_number(s, grid=None, tol=MODULUS_TOL, adaptive=True):
    """
    Winding number of ``f`` around the origin.

    Branch-corrected phase increments are summed over the closed grid.  The
    grid doubles (up to ``2**20``) until every step is below ``pi/2``.

    Parameters
    ----------
    s : LaurentSymbol or SampledSymbol
    grid : int, optional
        Starting number of grid points.
    tol : float
        Relative modulus threshold; ``min |f| < tol * max |f|`` means the
        symbol is treated as vanishing.
    adaptive : bool
        If False, a coarse grid raises instead of being refined.

    Raises
    ------
    NotFredholmError, GridTooCoarseError, ZeroSymbolError
    """
    return _resolve_winding(s, grid, tol, adaptive)[0]


def toeplitz_index(s, grid=None, tol=MODULUS_TOL, adaptive=True):
    """Index of ``T_f`` as minus the winding number, wrapped in an IndexResult."""
    try:
        w, mmin, M = _resolve_winding(s, grid, tol, adaptive)
    except NotFredholmError as exc:
        return IndexResult("not_fredholm", None, exc.min_modulus, "winding", exc.witness_theta)
    return IndexResult("fredholm", -w, mmin, "winding", None, M)


def companion_matrix(c):
    """Companion matrix of ``sum c[i] z**i`` (ascending coefficients, ``c[-1] != 0``)."""
    c = np.asarray(c, dtype=complex)
    d = c.size - 1
    C = np.zeros((d, d), complex)
    if d > 1:
        C[1:, :-1] = np.eye(d - 1)
    C[:, -1] = -c[:-1] / c[-1]
    return C


def _classify(roots, band):
    r = np.abs(roots)
    on = np.abs(1.0 - r) <= band
    inside = (r < 1.0) & ~on
    return int(inside.sum()), int(on.sum()), int((~inside & ~on).sum())


def laurent_roots(s, band=ROOT_BAND):
    """
    Roots of the polynomial ``z**m f(z)``, classified against the unit circle.

    Roots are companion-matrix eigenvalues; a root with
    ``|1 - |zeta|| <= band`` is counted as lying on the circle.
    """
    _check_nonzero(s)
    m = s.pole_order
    zero_roots = max(s.low, 0)
    c = s.coeffs
    roots = np.zeros(zero_roots, complex)
    if c.size > 1:
        roots = np.concatenate([roots, np.linalg.eigvals(companion_matrix(c))])
    inside, on, outside = _classify(roots, band)
    return RootReport(roots, m, inside, on, outside, band)


def index_from_roots(s, band=ROOT_BAND):
    """Index of ``T_f`` as ``pole_order - (# roots of z**m f inside the circle)``."""
    rep = laurent_roots(s, band)
    mmin = float(np.min(np.abs(sample(s, _default_grid(s)))))
    if rep.on_circle_count:
        on = rep.roots[np.abs(1.0 - np.abs(rep.roots)) <= band]
        theta = float(np.mod(np.angle(on[0]), 2 * np.pi))
        return IndexResult("not_fredholm", None, mmin, "roots", theta)
    return IndexResult("fredholm", rep.pole_order - rep.inside_count, mmin, "roots")


def count_roots_batch(rows, band=ROOT_BAND):
    """
    Inside/on-circle root counts for many polynomials at once.

    Parameters
    ----------
    rows : (K, w) complex array
        Ascending coefficients; rows need not be trimmed.  Leading zeros
        lower the degree (roots at infinity count as outside), trailing
        zeros at the constant end give roots at 0.

    Returns
    -------
    inside, on_circle : (K,) int arrays
    is_zero : (K,) bool array, rows that are identically zero
    """
    rows = np.atleast_2d(np.asarray(rows, dtype=complex))
    K, w = rows.shape
    nonzero = rows != 0
    is_zero = ~nonzero.any(axis=1)
    # effective degree = index of the last nonzero coefficient
    deg = np.where(is_zero, 0, w - 1 - np.argmax(nonzero[:, ::-1], axis=1))
    inside = np.zeros(K, int)
    on = np.zeros(K, int)
    for d in np.unique(deg):
        if d < 1:
            continue
        sel = np.flatnonzero((deg == d) & ~is_zero)
        c = rows[sel, :d + 1]
        C = np.zeros((sel.size, d, d), complex)
        if d > 1:
            C[:, 1:, :-1] = np.eye(d - 1)
        C[:, :, -1] = -c[:, :-1] / c[:, -1:]
        r = np.abs(np.linalg.eigvals(C))
        on_mask = np.abs(1.0 - r) <= band
        on[sel] = on_mask.sum(axis=1)
        inside[sel] = ((r < 1.0) & ~on_mask).sum(axis=1)
    return inside, on, is_zero


def expected_jump_codimension(k, symmetry="complex"):
    """
    Real codimension of the set where the index jumps by ``k``.

    ``k`` for complex coefficients, ``(k + 1) // 2`` (largest stratum) when
    the coefficients are real.
    """
    if k < 1:
        raise ValueError("jump size must be >= 1")
    if symmetry == "complex":
        return k
    if symmetry == "real":
        return (k + 1) // 2
    raise ValueError("symmetry must be 'complex' or 'real'")
