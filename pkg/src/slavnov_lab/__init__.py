"""Six-vertex determinant forms, Slavnov scalar products and the identities
linking them, with brute-force lattice oracles to check every formula."""

from .bethe import BetheSolution, bethe_residual, solve_bethe, verify_on_shell
from .detforms import (ParamSets, extended_limit, izergin_mixed, izergin_uniform, kostov_dwpf,
                       pdwpf_2Nx2N, pdwpf_LxL, restricted_pdwpf_ize, restricted_pdwpf_kos,
                       restricted_slavnov, slavnov)
from .errors import (CardinalityMismatch, DegenerateParams, NoSolutionFound, NotConverged,
                     NotOnShell, SingularWeight, SlavnovLabError)
from .gvmap import gv_casoratian_closed, gv_structure_constant, theta_map
from .symcaso import CasoratianSpec, casoratian, complete_h, discrete_derivative, elementary_e
from .vertexlat import dwpf_oracle, partition_function, pdwpf_oracle, scalar_product_oracle

__version__ = "0.1.0"

__all__ = [
    "BetheSolution", "bethe_residual", "solve_bethe", "verify_on_shell",
    "ParamSets", "extended_limit", "izergin_mixed", "izergin_uniform", "kostov_dwpf",
    "pdwpf_2Nx2N", "pdwpf_LxL", "restricted_pdwpf_ize", "restricted_pdwpf_kos",
    "restricted_slavnov", "slavnov",
    "CardinalityMismatch", "DegenerateParams", "NoSolutionFound", "NotConverged", "NotOnShell",
    "SingularWeight", "SlavnovLabError",
    "gv_casoratian_closed", "gv_structure_constant", "theta_map",
    "CasoratianSpec", "casoratian", "complete_h", "discrete_derivative", "elementary_e",
    "dwpf_oracle", "partition_function", "pdwpf_oracle", "scalar_product_oracle",
]
