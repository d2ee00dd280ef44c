"""
Disordered magnetic square lattice and real-space Hall index estimates.

The model is the nearest-neighbour hopping Hamiltonian on an open ``L x L``
patch with Peierls phases in the Landau gauge (flux ``2 pi p/q`` per
plaquette) and uniform on-site disorder.  Site coordinates are centred, so
for even ``L`` the origin sits in the middle of a plaquette.

The Hall index at Fermi energy ``E`` is estimated from
``Tr (P - U P U^dagger)**(2k+1)`` with ``U = z/|z|``.  On a finite patch the
full trace is identically zero (the edge carries the opposite index), so
the trace is taken over a disc around the flux origin.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
import csv

import numpy as np
from scipy.special import expit

from ..errors import DegenerateFermiError, OriginOnSiteError

__all__ = [
    "LatticeModel",
    "Projection",
    "FluxUnitary",
    "StepCurve",
    "parse_flux",
    "build_lattice_model",
    "spectral_projection",
    "fermi_function",
    "flux_unitary",
    "default_radius",
    "index_trace_estimate",
    "build_C",
    "build_C_beta",
    "smallest_singular_values",
    "hall_step_scan",
    "write_step_csv",
    "hofstadter_bands",
    "hofstadter_gaps",
]

DEGENERACY_TOL = 1e-12
DEGENERACY_SHIFT = 1e-9


def parse_flux(flux):
    """Accept ``Fraction``, ``"p/q"``, ``(p, q)`` or a float."""
    if isinstance(flux, Fraction):
        return flux
    if isinstance(flux, tuple):
        return Fraction(int(flux[0]), int(flux[1]))
    return Fraction(flux).limit_denominator(10000) if isinstance(flux, float) else Fraction(flux)


class LatticeModel:
    """
    Magnetic tight-binding model on an open ``L x L`` square patch.

    Site ``(ix, iy)`` has index ``ix * L + iy`` and coordinates
    ``(ix - (L-1)/2, iy - (L-1)/2)``.
    """

    def __init__(self, L, flux, disorder, seed, H, x, y):
        self.L = L
        self.flux = flux
        self.disorder = disorder
        self.seed = seed
        self.H = H
        self.x = x
        self.y = y

    @property
    def n_sites(self):
        return self.L * self.L

    @property
    def bandwidth(self):
        """Nominal bound ``4 + W`` on the spectral radius."""
        return 4.0 + self.disorder

    @cached_property
    def eigh(self):
        """Eigenvalues (ascending) and eigenvectors of ``H``, computed once."""
        w, v = np.linalg.eigh(self.H)
        return w, v

    @property
    def energies(self):
        return self.eigh[0]

    def metadata(self):
        return {"L": self.L, "flux": str(self.flux), "disorder": self.disorder, "seed": self.seed}


def build_lattice_model(L, flux="0", disorder=0.0, seed=0):
    """
    Build ``H = -sum e^{i A_jk} |j><k| + h.c. + sum_j W u_j |j><j|``.

    Bonds in the ``y`` direction at column ``ix`` carry the phase
    ``exp(2 pi i (p/q) ix)``; ``u_j`` are i.i.d. uniform on ``[-1, 1]``.
    """
    if L < 8:
        raise ValueError("L must be >= 8")
    if disorder < 0:
        raise ValueError("disorder must be >= 0")
    phi = parse_flux(flux)
    ix, iy = np.meshgrid(np.arange(L), np.arange(L), indexing="ij")
    ix, iy = ix.ravel(), iy.ravel()
    site = ix * L + iy
    n = L * L
    H = np.zeros((n, n), complex)
    xb = ix < L - 1
    H[site[xb] + L, site[xb]] = -1.0
    yb = iy < L - 1
    H[site[yb] + 1, site[yb]] = -np.exp(2j * np.pi * float(phi) * ix[yb])
    H = H + H.conj().T
    rng = np.random.default_rng(seed)
    u = rng.uniform(-1.0, 1.0, n)
    H[np.diag_indices(n)] += disorder * u
    c = 0.5 * (L - 1)
    return LatticeModel(L, phi, float(disorder), seed, H, ix - c, iy - c)


@dataclass
class Projection:
    """Spectral projection or Fermi function of a lattice model at energy ``E``."""

    matrix: np.ndarray
    kind: str
    energy: float
    model: LatticeModel = field(repr=False)
    beta: float = np.inf
    shifted: bool = False
    occupations: np.ndarray = field(default=None, repr=False)


def _from_occupations(model, f, kind, E, beta=np.inf, shifted=False):
    w, v = model.eigh
    P = (v * f) @ v.conj().T
    return Projection(P, kind, E, model, beta, shifted, f)


def spectral_projection(model, E, shift_degenerate=False):
    """
    Projection onto eigenstates with energy ``<= E``.

    Raises
    ------
    DegenerateFermiError
        If ``E`` is within ``1e-12`` of an eigenvalue, unless
        `shift_degenerate` is set, in which case ``E`` moves up by ``1e-9``.
    """
    w, _ = model.eigh
    shifted = False
    if np.min(np.abs(w - E)) < DEGENERACY_TOL:
        if not shift_degenerate:
            raise DegenerateFermiError("E=%r coincides with an eigenvalue" % E)
        E = E + DEGENERACY_SHIFT
        shifted = True
    return _from_occupations(model, (w <= E).astype(float), "spectral", E, np.inf, shifted)


def fermi_function(model, beta, E):
    """``1 / (exp(beta (H - E)) + 1)``, evaluated on the eigenbasis."""
    if not beta > 0:
        raise ValueError("beta must be > 0")
    if np.isinf(beta):
        return spectral_projection(model, E, shift_degenerate=True)
    w, _ = model.eigh
    return _from_occupations(model, expit(-beta * (w - E)), "fermi", E, beta)


@dataclass(frozen=True)
class FluxUnitary:
    """Diagonal of ``U = z/|z|`` about `origin`, plus the site positions it was built from."""

    diag: np.ndarray
    origin: tuple
    x: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)

    def radii(self):
        return np.hypot(self.x - self.origin[0], self.y - self.origin[1])

    def matrix(self):
        return np.diag(self.diag)


def flux_unitary(model, origin_offset=(0.0, 0.0)):
    """Phase ``(x + i y)/|x + i y|`` of each site relative to `origin_offset`."""
    x0, y0 = float(origin_offset[0]), float(origin_offset[1])
    z = (model.x - x0) + 1j * (model.y - y0)
    if np.min(np.abs(z)) < 1e-9:
        raise OriginOnSiteError("flux origin (%g, %g) coincides with a site" % (x0, y0))
    return FluxUnitary(z / np.abs(z), (x0, y0), model.x, model.y)


def default_radius(L):
    return L / 3.0


def _commutator_power_diag(P, u, k, rows):
    D = P - (u[:, None] * P) * u.conj()[None, :]
    M = D
    for _ in range(2 * k - 1):
        M = M @ D
    # diagonal of M @ D on the selected rows only
    return np.einsum("ij,ji->i", M[rows], D[:, rows])


def index_trace_estimate(P, U, k=1, radius=None):
    """
    Real part of ``Tr chi (P - U P U^dagger)**(2k+1)``.

    ``chi`` keeps the sites within `radius` of the flux origin (default
    ``L/3``); ``radius=np.inf`` gives the full trace, which vanishes on any
    finite patch.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    M = P.matrix if isinstance(P, Projection) else np.asarray(P)
    if radius is None:
        L = int(round(np.sqrt(M.shape[0])))
        radius = default_radius(L)
    rows = np.flatnonzero(U.radii() <= radius)
    if rows.size == 0:
        return 0.0
    return float(np.real(np.sum(_commutator_power_diag(M, U.diag, k, rows))))


def build_C(P, U):
    """``C = P U P + 1 - P``."""
    M = P.matrix if isinstance(P, Projection) else np.asarray(P)
    u = U.diag if isinstance(U, FluxUnitary) else np.diag(U)
    return M @ (u[:, None] * M) + np.eye(M.shape[0]) - M


def build_C_beta(model, beta, E, U):
    """``C_beta(E) = P_beta U P_beta + 1 - P_beta**2`` with the Fermi function ``P_beta``."""
    Pb = fermi_function(model, beta, E).matrix
    u = U.diag
    return Pb @ (u[:, None] * Pb) + np.eye(Pb.shape[0]) - Pb @ Pb


def smallest_singular_values(C, count=4):
    return np.sort(np.linalg.svd(C, compute_uv=False))[:count]


@dataclass
class StepCurve:
    energies: np.ndarray
    estimates: np.ndarray
    flags: list
    meta: dict

    @property
    def nearest_int(self):
        return np.rint(self.estimates).astype(int)

    @property
    def deviation(self):
        return np.abs(self.estimates - self.nearest_int)


def hall_step_scan(model, energies, beta=np.inf, k=1, radius=None, origin_offset=(0.0, 0.0)):
    """
    Index estimate at each Fermi energy in `energies`.

    ``beta = inf`` uses spectral projections (energies on an eigenvalue are
    nudged up by ``1e-9`` and flagged ``shifted``); finite ``beta`` uses the
    Fermi function.  ``H`` is diagonalised once and reused.
    """
    energies = np.asarray(energies, dtype=float)
    if np.any(np.diff(energies) < 0):
        raise ValueError("energies must be sorted")
    U = flux_unitary(model, origin_offset)
    est = np.empty(energies.size)
    flags = []
    for n, E in enumerate(energies):
        P = fermi_function(model, beta, E)
        est[n] = index_trace_estimate(P, U, k, radius)
        flags.append("shifted" if P.shifted else "")
    meta = dict(model.metadata(), beta=beta, k=k,
                radius=default_radius(model.L) if radius is None else radius,
                origin=list(U.origin))
    return StepCurve(energies, est, flags, meta)


def write_step_csv(curve, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["E", "estimate", "nearest_int", "deviation", "flags"])
        for E, e, n, d, f in zip(curve.energies, curve.estimates, curve.nearest_int,
                                 curve.deviation, curve.flags):
            w.writerow([repr(float(E)), repr(float(e)), int(n), repr(float(d)), f])


def hofstadter_bands(p, q, nk=64):
    """
    Band intervals of the clean infinite lattice at flux ``p/q``.

    Uses the ``q x q`` magnetic Bloch Hamiltonian on an ``nk x nk``
    Brillouin-zone grid; returns a ``(q, 2)`` array of ``(min, max)``.
    """
    phi = p / q
    kx = np.linspace(0.0, 2 * np.pi / q, nk)
    ky = np.linspace(0.0, 2 * np.pi, nk)
    KX, KY = np.meshgrid(kx, ky, indexing="ij")
    KX, KY = KX.ravel(), KY.ravel()
    m = np.arange(q)
    Hk = np.zeros((KX.size, q, q), complex)
    Hk[:, m, m] = -2.0 * np.cos(KY[:, None] + 2 * np.pi * phi * m[None, :])
    for j in range(q - 1):
        Hk[:, j, j + 1] += -1.0
        Hk[:, j + 1, j] += -1.0
    if q > 1:
        Hk[:, q - 1, 0] += -np.exp(1j * KX * q)
        Hk[:, 0, q - 1] += -np.exp(-1j * KX * q)
    else:
        Hk[:, 0, 0] += -2.0 * np.cos(KX)
    e = np.linalg.eigvalsh(Hk)
    return np.column_stack([e.min(axis=0), e.max(axis=0)])


def hofstadter_gaps(p, q, nk=64, min_width=0.0):
    """Open gaps ``(lo, hi)`` between consecutive bands, sorted by energy."""
    b = hofstadter_bands(p, q, nk)
    gaps = []
    for j in range(q - 1):
        lo, hi = b[j, 1], b[j + 1, 0]
        if hi - lo > min_width:
            gaps.append((float(lo), float(hi)))
    return gaps
