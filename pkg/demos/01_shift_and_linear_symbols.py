"""
The shift, its adjoint, and c1*a + c0.

Run:  python demos/01_shift_and_linear_symbols.py
"""
import numpy as np

from toeplitz_fredholm import (LaurentSymbol, ShiftPolynomial, build_truncation,
                               from_shift_polynomial, index_from_roots, index_signature,
                               inverse_series_check, kernel_vector_degree1, toeplitz_index)

# %% The shift a sends e_n to e_{n-1}. Its symbol is 1/z, so the finite
# section has ones on the superdiagonal and a zero first column.
a = from_shift_polynomial(ShiftPolynomial({1: 1.0}))
print(build_truncation(a, 5).entries.real.astype(int))
print("index(a)      =", toeplitz_index(a).index)
print("index(a^dag)  =", toeplitz_index(LaurentSymbol.monomial(1)).index)

# %% c1 a + c0: the index is 1 when |c1| > |c0| and 0 when |c1| < |c0|.
for c1, c0 in [(2.0, 1.0), (1.0, 2.0), (1.0, 1.0), (1j, 0.3)]:
    f = from_shift_polynomial(ShiftPolynomial({1: c1, 0: c0}))
    r = index_from_roots(f)
    print(f"c1={c1!s:>4} c0={c0!s:>4}  ->  {r.status:13s} index={r.index}")

# %% When |c1| > |c0| the kernel is spanned by v_n = z0^n with z0 = -c0/c1.
# On an N x N section only the last row misses, so the residual falls
# off like |z0|^N.
for N in (8, 16, 32, 64):
    kc = kernel_vector_degree1(1.0, 2.0, N)
    print(f"N={N:3d}  residual={kc.residual:.3e}  |z0|^N={0.5 ** N:.3e}")

# In the other regime the Neumann series inverts A
print("||A B - I|| with 40 terms:", inverse_series_check(2.0, 1.0, 64, 40))

# %% Finite sections see the index too: a symbol with index 2 gives two
# singular values that collapse to zero, and the sign comes from whether
# the near-kernel lives on the right or the left.
f = LaurentSymbol.from_dict({-2: 1.0, -1: 0.5, 0: 0.06})
sig = index_signature(f, 128)
print("signature:", sig.magnitude, sig.sign, np.round(sig.smallest_sigmas[:4], 12))
