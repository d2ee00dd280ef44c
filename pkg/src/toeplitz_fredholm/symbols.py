"""
Toeplitz symbols: Laurent polynomials and sampled circle functions.

Orientation convention used throughout the package: the left shift ``a``
(``a e_n = e_{n-1}``) is the Toeplitz operator with symbol ``z**-1`` and
``T_{z**n} = (a^dagger)**n``.  A shift polynomial ``sum c_i a**i`` therefore
has symbol ``sum c_i z**(-i)``; the conversion is explicit
(:func:`from_shift_polynomial`) so the two readings never mix silently.
"""

from dataclasses import dataclass
import json

import numpy as np

__all__ = [
    "LaurentSymbol",
    "ShiftPolynomial",
    "SampledSymbol",
    "AnnulusSpec",
    "evaluate",
    "multiply",
    "from_shift_polynomial",
    "sample",
    "min_modulus_on_circle",
    "annulus_norm",
    "c_ell_norm",
    "angular_grid",
]

MIN_GRID = 16


def angular_grid(M):
    """Uniform angles ``2*pi*k/M`` for ``k = 0..M-1``."""
    return 2.0 * np.pi * np.arange(M) / M


def _as_complex(value):
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError("coefficient pairs must be [re, im], got %r" % (value,))
        value = complex(float(value[0]), float(value[1]))
    c = complex(value)
    if not np.isfinite(c.real) or not np.isfinite(c.imag):
        raise ValueError("symbol coefficients must be finite")
    return c


class LaurentSymbol:
    """
    Finite Laurent polynomial ``f(z) = sum_{i=low}^{high} c_i z**i``.

    Coefficients are stored densely from ``low`` to ``high``; zero
    coefficients at either end are trimmed so the bounds are the true
    support.  The zero symbol has an empty coefficient array.

    Parameters
    ----------
    coeffs : sequence of complex
        Coefficients of ``z**low, z**(low+1), ...``.
    low : int
        Exponent of the first entry of `coeffs`.
    """

    __slots__ = ("_c", "_low")

    def __init__(self, coeffs=(), low=0):
        c = np.array(coeffs, dtype=complex).ravel()
        if not np.all(np.isfinite(c)):
            raise ValueError("symbol coefficients must be finite")
        nz = np.flatnonzero(c)
        if nz.size == 0:
            c, low = np.zeros(0, complex), 0
        else:
            c = c[nz[0]:nz[-1] + 1].copy()
            low = int(low) + int(nz[0])
        c.setflags(write=False)
        self._c = c
        self._low = low

    # construction helpers

    @classmethod
    def from_dict(cls, mapping):
        """Build from ``{exponent: coefficient}``; keys may be strings."""
        items = {int(k): _as_complex(v) for k, v in dict(mapping).items()}
        if not items:
            return cls()
        lo, hi = min(items), max(items)
        dense = np.zeros(hi - lo + 1, complex)
        for k, v in items.items():
            dense[k - lo] = v
        return cls(dense, lo)

    @classmethod
    def from_json(cls, text):
        """Parse ``{"coeffs": {"-1": [re, im], ...}}`` or the bare mapping."""
        obj = json.loads(text) if isinstance(text, str) else text
        if isinstance(obj, dict) and "coeffs" in obj:
            obj = obj["coeffs"]
        if not isinstance(obj, dict):
            raise ValueError("symbol literal must be a JSON object")
        return cls.from_dict(obj)

    @classmethod
    def monomial(cls, n, c=1.0):
        return cls([c], n)

    # basic attributes

    @property
    def coeffs(self):
        """Read-only dense coefficient array over ``[low, high]``."""
        return self._c

    @property
    def low(self):
        return self._low

    @property
    def high(self):
        return self._low + len(self._c) - 1 if len(self._c) else 0

    @property
    def pole_order(self):
        """Order ``m >= 0`` of the pole at ``z = 0``."""
        return max(0, -self._low) if len(self._c) else 0

    @property
    def degree(self):
        """Highest non-negative power ``n >= 0``."""
        return max(0, self.high) if len(self._c) else 0

    @property
    def is_zero(self):
        return len(self._c) == 0

    @property
    def width(self):
        return len(self._c)

    def coefficient(self, i):
        k = i - self._low
        if 0 <= k < len(self._c):
            return complex(self._c[k])
        return 0j

    def exponents(self):
        return np.arange(self._low, self._low + len(self._c))

    def to_dict(self):
        return {i: complex(c) for i, c in zip(self.exponents(), self._c) if c != 0}

    def to_json_obj(self):
        return {"coeffs": {str(i): [c.real, c.imag] for i, c in self.to_dict().items()}}

    def to_json(self):
        return json.dumps(self.to_json_obj())

    # algebra

    def __call__(self, z):
        """Evaluate at complex ``z`` (any nonzero value if there is a pole)."""
        z = np.asarray(z, dtype=complex)
        if self.is_zero:
            return np.zeros_like(z)
        # Horner in z, then shift by z**low
        acc = np.zeros_like(z)
        for c in self._c[::-1]:
            acc = acc * z + c
        return acc * z ** self._low

    def evaluate(self, theta):
        return evaluate(self, theta)

    def __mul__(self, other):
        if isinstance(other, LaurentSymbol):
            return multiply(self, other)
        return LaurentSymbol(self._c * _as_complex(other), self._low)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, LaurentSymbol):
            other = LaurentSymbol([_as_complex(other)], 0)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self._low, other._low)
        hi = max(self.high, other.high)
        out = np.zeros(hi - lo + 1, complex)
        out[self._low - lo:self._low - lo + len(self._c)] += self._c
        out[other._low - lo:other._low - lo + len(other._c)] += other._c
        return LaurentSymbol(out, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSymbol(-self._c, self._low)

    def __sub__(self, other):
        return self + (-other if isinstance(other, LaurentSymbol) else -_as_complex(other))

    def reversed(self):
        """The symbol ``g(z) = f(1/z)``."""
        if self.is_zero:
            return self
        return LaurentSymbol(self._c[::-1], -self.high)

    def __eq__(self, other):
        if not isinstance(other, LaurentSymbol):
            return NotImplemented
        return self._low == other._low and np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash((self._low, self._c.tobytes()))

    def __repr__(self):
        terms = ", ".join("%d: %s" % (i, c) for i, c in self.to_dict().items())
        return "LaurentSymbol({%s})" % terms


@dataclass(frozen=True)
class ShiftPolynomial:
    """
    Operator ``A = sum_i c_i a**i`` in the left shift ``a``.

    Negative exponents stand for powers of ``a^dagger``.
    """

    coeffs: dict

    def __post_init__(self):
        object.__setattr__(self, "coeffs",
                           {int(k): _as_complex(v) for k, v in dict(self.coeffs).items()})

    @classmethod
    def from_list(cls, c):
        """``c[i]`` multiplies ``a**i``."""
        return cls({i: v for i, v in enumerate(c)})


@dataclass(frozen=True)
class SampledSymbol:
    """
    Circle function known by its values on the uniform grid ``2*pi*k/M``.

    `smoothness` is the number of derivatives the underlying function is
    assumed to have; it caps the order of :func:`c_ell_norm`.
    """

    samples: np.ndarray
    smoothness: int = 0

    def __post_init__(self):
        s = np.array(self.samples, dtype=complex)
        if s.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        M = s.size
        if M < MIN_GRID or M % 2:
            raise ValueError("need an even number of samples >= %d, got %d" % (MIN_GRID, M))
        if not np.all(np.isfinite(s)):
            raise ValueError("samples must be finite")
        if self.smoothness < 0:
            raise ValueError("smoothness must be >= 0")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @classmethod
    def from_function(cls, func, M, smoothness=0):
        return cls(func(angular_grid(M)), smoothness)

    @property
    def size(self):
        return self.samples.size

    def resample(self, M):
        """Values of the trigonometric interpolant on an ``M``-point grid."""
        n = self.size
        if M == n:
            return np.array(self.samples)
        if M % n == 0:
            spec = np.fft.fft(self.samples)
            padded = np.zeros(M, complex)
            half = n // 2
            padded[:half] = spec[:half]
            padded[M - half + 1:] = spec[half + 1:]
            # split the Nyquist mode symmetrically
            padded[half] = 0.5 * spec[half]
            padded[M - half] = 0.5 * spec[half]
            return np.fft.ifft(padded) * (M / n)
        theta = angular_grid(M)
        return self.interpolate(theta)

    def interpolate(self, theta):
        theta = np.asarray(theta, dtype=float)
        n = self.size
        spec = np.fft.fft(self.samples) / n
        k = np.fft.fftfreq(n, 1.0 / n)
        spec = spec.copy()
        spec[n // 2] *= 0.5
        out = spec @ np.exp(1j * np.outer(k, theta.ravel()))
        out = out + spec[n // 2] * np.exp(1j * (n // 2) * theta.ravel())
        return out.reshape(theta.shape)

    def derivative(self, j):
        """Samples of the ``j``-th derivative via spectral differentiation."""
        if j == 0:
            return np.array(self.samples)
        n = self.size
        spec = np.fft.fft(self.samples)
        k = np.fft.fftfreq(n, 1.0 / n)
        k[n // 2] = 0.0
        return np.fft.ifft(spec * (1j * k) ** j)


@dataclass(frozen=True)
class AnnulusSpec:
    r0: float
    r1: float

    def __post_init__(self):
        if not (0.0 < self.r0 < 1.0 < self.r1):
            raise ValueError("annulus needs 0 < r0 < 1 < r1, got %r, %r" % (self.r0, self.r1))


def evaluate(s, theta):
    """``f(e^{i theta})`` for a :class:`LaurentSymbol`; vectorised in `theta`."""
    theta = np.asarray(theta, dtype=float)
    if s.is_zero:
        return np.zeros(theta.shape, complex)
    phases = np.exp(1j * np.multiply.outer(theta, s.exponents()))
    return phases @ s.coeffs


def multiply(s1, s2):
    """Product of two Laurent symbols (coefficient convolution)."""
    if s1.is_zero or s2.is_zero:
        return LaurentSymbol()
    return LaurentSymbol(np.convolve(s1.coeffs, s2.coeffs), s1.low + s2.low)


def from_shift_polynomial(p):
    """Symbol of ``A = sum c_i a**i``: ``f(z) = sum c_i z**(-i)``."""
    return LaurentSymbol.from_dict({-i: c for i, c in p.coeffs.items()})


def sample(s, M):
    """Values of a Laurent or sampled symbol on the ``M``-point grid."""
    if isinstance(s, SampledSymbol):
        return s.resample(M)
    return evaluate(s, angular_grid(M))


def min_modulus_on_circle(s, grid=1024):
    """Minimum of ``|f|`` over the uniform ``grid``-point circle grid."""
    if grid < MIN_GRID:
        raise ValueError("grid must be >= %d" % MIN_GRID)
    return float(np.min(np.abs(sample(s, grid))))


def annulus_norm(s, annulus):
    """Weighted coefficient norm ``sum |c_i| (r0**i + r1**i)``."""
    if s.is_zero:
        return 0.0
    i = s.exponents().astype(float)
    return float(np.sum(np.abs(s.coeffs) * (annulus.r0 ** i + annulus.r1 ** i)))


def c_ell_norm(s, ell, grid=4096):
    """
    ``C^ell`` norm ``max_theta sum_{j<=ell} |f^{(j)}(theta)|`` on a grid.

    Laurent symbols are differentiated exactly; sampled symbols use
    spectral differentiation on their own grid (`grid` is ignored).
    """
    if ell < 0:
        raise ValueError("ell must be >= 0")
    if isinstance(s, SampledSymbol):
        if ell > s.smoothness:
            raise ValueError("ell=%d exceeds declared smoothness %d" % (ell, s.smoothness))
        total = sum(np.abs(s.derivative(j)) for j in range(ell + 1))
        return float(np.max(total))
    if s.is_zero:
        return 0.0
    theta = angular_grid(grid)
    k = s.exponents()
    phases = np.exp(1j * np.outer(theta, k))
    total = np.zeros(grid)
    for j in range(ell + 1):
        total += np.abs(phases @ (s.coeffs * (1j * k) ** j))
    return float(np.max(total))
