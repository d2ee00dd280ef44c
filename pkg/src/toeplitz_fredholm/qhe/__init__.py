"""Hall-index experiments: lowest Landau level weights and a disordered magnetic lattice."""

from .landau import (LandauWeights, landau_pup_weights, compactness_witness,  # noqa: F401
                     landau_table)
from .lattice import (LatticeModel, build_lattice_model, spectral_projection,  # noqa: F401
                      fermi_function, flux_unitary, index_trace_estimate, build_C, build_C_beta,
                      smallest_singular_values, hall_step_scan, write_step_csv, hofstadter_gaps)
