"""Jordan-block column statistics of random strictly upper-triangular
matrices over finite fields: exact finite-n distributions, growth-chain
simulation, the discrete limit law, and contour-integral cross-checks."""

__version__ = "0.1.0"

from .chain import (exact_column_distribution, exact_distribution, simulate,
                    simulate_columns, transition_law, column_projection)
from .gfq import (FiniteField, MatrixGFq, enumerate_strict_upper, jordan_type,
                  rank, sample_strict_upper)
from .limitlaw import (ContourSpec, Estimate, dinf, limit_pmf_contour,
                       limit_pmf_k1, limit_pmf_series)
from .partitions import Pmf, conjugate, interlaces, partitions_of
from .prelimit import (TorusQuad, poissonized_pmf_integral,
                       prelimit_pmf_integral, residue_E)
from .qseries import qbinomial, qpochhammer, qpochhammer_inf
from .symfunc import (hl_phi, hl_psi, hl_Q_gamma, hl_Q_gamma_alpha1,
                      qw_psi, qwhittaker_P)

__all__ = [
    "ContourSpec", "Estimate", "FiniteField", "MatrixGFq", "Pmf",
    "TorusQuad", "column_projection", "conjugate", "dinf",
    "enumerate_strict_upper", "exact_column_distribution",
    "exact_distribution", "hl_Q_gamma", "hl_Q_gamma_alpha1", "hl_phi",
    "hl_psi", "interlaces", "jordan_type", "limit_pmf_contour",
    "limit_pmf_k1", "limit_pmf_series", "partitions_of",
    "poissonized_pmf_integral", "prelimit_pmf_integral", "qbinomial",
    "qpochhammer", "qpochhammer_inf", "qw_psi", "qwhittaker_P", "rank",
    "residue_E", "sample_strict_upper", "simulate", "simulate_columns",
    "transition_law",
]
