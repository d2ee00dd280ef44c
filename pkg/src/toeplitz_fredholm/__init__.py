"""Fredholm indices of Toeplitz operators, index jumps, and lattice Hall indices."""

__version__ = "0.1.0"

from .errors import (ToeplitzError, ZeroSymbolError, NotFredholmError,  # noqa: F401
                     GridTooCoarseError, WrongRegimeError, InconclusiveError,
                     DegenerateFermiError, OriginOnSiteError)
from .symbols import (LaurentSymbol, ShiftPolynomial, SampledSymbol, AnnulusSpec,  # noqa: F401
                      angular_grid, evaluate, multiply, from_shift_polynomial, sample,
                      min_modulus_on_circle, annulus_norm, c_ell_norm)
from .index import (IndexResult, RootReport, winding_number, toeplitz_index,  # noqa: F401
                    laurent_roots, index_from_roots, count_roots_batch,
                    expected_jump_codimension)
from .truncation import (IndexSignature, build_truncation, index_signature,  # noqa: F401
                         kernel_vector_degree1, inverse_series_check)
from .portrait import (NOT_FREDHOLM, ParameterFamily, PortraitGrid, JumpHistogram,  # noqa: F401
                       quadratic_real_family, scan_grid, cross_check_cells, extract_boundaries,
                       write_portrait_csv, path_jump_scan, random_path_jump_scan,
                       conjugate_arc_endpoints, wraparound_experiment)
