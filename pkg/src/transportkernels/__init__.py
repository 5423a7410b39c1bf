"""Positive definite kernels between integral histograms.

Two histograms with the same number of bins and the same total mass
bound a transportation polytope; its lattice points are the contingency
tables with those margins. Summing an entrywise weight product over all
tables gives the weighted volume, a kernel that is positive definite
whenever the entry-weight matrix is. Sampling corner-rule vertices
instead of summing the whole polytope gives a cheap positive definite
surrogate, and the exact transport optimum is kept alongside as the
classical (indefinite) baseline.
"""

from . import fileio
from .errors import (
    BudgetExceededError,
    ConvergenceError,
    DimensionMismatchError,
    KernelEvaluationError,
    LengthMismatchError,
    MassMismatchError,
    ParseError,
    TransportKernelError,
    ValidationError,
)
from .histograms import (
    ContingencyTable,
    Histogram,
    IndexSequence,
    Permutation,
    canonical_sequence,
    chi,
    permuted_sequence,
    require_compatible,
)
from .northwest import (
    PermutationSet,
    nw_cost_matrix,
    nw_kernel,
    nw_permuted,
    nw_table,
    sample_permutations,
)
from .ot import TransportSolution, monge_check, ot_cost, pseudo_kernel
from .polytope import (
    DEFAULT_MAX_TABLES,
    EnumerationBudget,
    WeightSpec,
    count_tables,
    enumerate_tables,
    fisher_yates,
    generating_function,
    softmin,
    weighted_volume,
)
from .psd import (
    GramMatrix,
    PsdCertificate,
    build_gram,
    certify_psd,
    dataset_digest,
    jacobi_eigh,
    psd_weight_check,
)

__all__ = [
    "fileio",
    "BudgetExceededError",
    "ConvergenceError",
    "ContingencyTable",
    "DEFAULT_MAX_TABLES",
    "DimensionMismatchError",
    "EnumerationBudget",
    "GramMatrix",
    "Histogram",
    "IndexSequence",
    "KernelEvaluationError",
    "LengthMismatchError",
    "MassMismatchError",
    "ParseError",
    "Permutation",
    "PermutationSet",
    "PsdCertificate",
    "TransportKernelError",
    "TransportSolution",
    "ValidationError",
    "WeightSpec",
    "build_gram",
    "canonical_sequence",
    "certify_psd",
    "chi",
    "count_tables",
    "dataset_digest",
    "enumerate_tables",
    "fisher_yates",
    "generating_function",
    "jacobi_eigh",
    "monge_check",
    "nw_cost_matrix",
    "nw_kernel",
    "nw_permuted",
    "nw_table",
    "ot_cost",
    "permuted_sequence",
    "pseudo_kernel",
    "psd_weight_check",
    "require_compatible",
    "sample_permutations",
    "softmin",
    "weighted_volume",
]

__version__ = "0.1.0"
