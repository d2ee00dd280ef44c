"""
Finite sections of Toeplitz operators.

The ``N x N`` section has entry ``(j, k) = c_{j-k}`` in the basis
``e_0 .. e_{N-1}``; with this layout the symbol ``z**-1`` gives the left
shift (ones on the superdiagonal).
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InconclusiveError, WrongRegimeError
from .symbols import LaurentSymbol

__all__ = [
    "ToeplitzTruncation",
    "KernelCandidate",
    "IndexSignature",
    "build_truncation",
    "index_signature",
    "kernel_vector_degree1",
    "inverse_series_check",
]

SIGMA_TOL = 1e-8
GAP_FACTOR = 10.0
# ratio sigma(2N)/sigma(N) above which a singular value counts as settled
SETTLED_RATIO = 0.9


@dataclass(frozen=True)
class ToeplitzTruncation:
    size: int
    entries: np.ndarray

    def __matmul__(self, v):
        return self.entries @ v


@dataclass(frozen=True)
class KernelCandidate:
    vector: np.ndarray
    residual: float
    z0: complex


@dataclass(frozen=True)
class IndexSignature:
    magnitude: int
    sign: int
    smallest_sigmas: np.ndarray
    N: int

    def to_dict(self, count=8):
        return {
            "N": self.N,
            "magnitude": self.magnitude,
            "sign": self.sign,
            "sigmas": [float(x) for x in self.smallest_sigmas[:count]],
        }


def _entries(s, N):
    col = np.array([s.coefficient(i) for i in range(N)], complex)
    row = np.array([s.coefficient(-i) for i in range(N)], complex)
    return scipy.linalg.toeplitz(col, row)


def build_truncation(s, N):
    """``N x N`` section of ``T_f``; coefficients outside ``(-N, N)`` are dropped."""
    if N < 2:
        raise ValueError("N must be >= 2")
    return ToeplitzTruncation(N, _entries(s, N))


def _pad(v, n):
    out = np.zeros(n, complex)
    out[:v.size] = v
    return out


def index_signature(s, N=256, sigma_tol=SIGMA_TOL):
    """
    Finite-section witness for the index of ``T_f``.

    The magnitude is the number of singular values of the ``N``-section
    below `sigma_tol`.  For each of them the right singular vector ``v``
    (``A v`` small) and left singular vector ``u`` (``A^dagger u`` small) are
    padded to size ``2N``; a genuine kernel survives the padding, the
    truncation artefact does not.  A smaller residual for ``v`` means a
    kernel of ``A`` and a positive index.

    Raises
    ------
    InconclusiveError
        If a singular value is within `GAP_FACTOR` of `sigma_tol`, if the
        first singular value above the cut is still decaying between ``N``
        and ``2N``, or if the small triplets disagree on the sign.
    """
    if s.is_zero:
        raise InconclusiveError("zero symbol")
    A = _entries(s, N)
    U, sig, Vh = np.linalg.svd(A)
    order = np.argsort(sig)
    sig_sorted = sig[order]
    near = (sig_sorted > sigma_tol / GAP_FACTOR) & (sig_sorted < sigma_tol * GAP_FACTOR)
    if near.any():
        raise InconclusiveError(
            "singular value %.3g within a factor %g of sigma_tol" % (sig_sorted[near][0], GAP_FACTOR))
    small = order[sig[order] < sigma_tol]
    magnitude = int(small.size)

    # the next singular value must have converged, otherwise another one
    # may still be on its way to zero
    if magnitude < N:
        sig2 = np.sort(scipy.linalg.svdvals(_entries(s, 2 * N)))
        nxt = sig_sorted[magnitude]
        if sig2[magnitude] < SETTLED_RATIO * nxt or sig2[magnitude] < sigma_tol * GAP_FACTOR:
            raise InconclusiveError(
                "singular value %.3g at N=%d drops to %.3g at N=%d" % (nxt, N, sig2[magnitude], 2 * N))

    sign = 0
    if magnitude:
        A2 = _entries(s, 2 * N)
        votes = []
        for idx in small:
            v = _pad(Vh[idx].conj(), 2 * N)
            u = _pad(U[:, idx], 2 * N)
            res_a = np.linalg.norm(A2 @ v)
            res_adj = np.linalg.norm(A2.conj().T @ u)
            votes.append(1 if res_a < res_adj else -1)
        if len(set(votes)) != 1:
            raise InconclusiveError("small singular triplets disagree on the sign")
        sign = votes[0]
    return IndexSignature(magnitude, sign, sig_sorted, N)


def kernel_vector_degree1(c0, c1, N):
    """
    Truncated kernel vector ``v_n = z0**n``, ``z0 = -c0/c1``, of ``c1 a + c0``.

    Only the last row of the section fails to annihilate ``v``, so the
    residual is ``|c0| |z0|**(N-1) / ||v||``.
    """
    c0, c1 = complex(c0), complex(c1)
    if c1 == 0 or abs(c1) <= abs(c0):
        raise WrongRegimeError("a kernel exists only for |c1| > |c0|")
    z0 = -c0 / c1
    v = z0 ** np.arange(N)
    v[0] = 1.0  # 0**0
    A = _entries(LaurentSymbol([c1, c0], -1), N)
    residual = float(np.linalg.norm(A @ v) / np.linalg.norm(v))
    return KernelCandidate(v, residual, z0)


def inverse_series_check(c0, c1, N, terms):
    """
    ``||A_N B - I||`` for the truncated Neumann series of ``(c1 a + c0)**-1``.

    ``B = sum_{n<terms} (-1)**n c1**n / c0**(n+1) a_N**n``.
    """
    c0, c1 = complex(c0), complex(c1)
    if abs(c0) <= abs(c1):
        raise WrongRegimeError("the Neumann series needs |c0| > |c1|")
    if terms < 1:
        raise ValueError("terms must be >= 1")
    a = np.eye(N, k=1, dtype=complex)
    A = c0 * np.eye(N) + c1 * a
    # Horner: B = (1/c0) (I + q a (I + q a (...))), q = -c1/c0
    q = -c1 / c0
    B = np.eye(N, dtype=complex)
    for _ in range(terms - 1):
        B = np.eye(N) + q * (a @ B)
    B /= c0
    return float(np.linalg.norm(A @ B - np.eye(N), 2))
