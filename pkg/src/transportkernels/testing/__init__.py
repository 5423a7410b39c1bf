"""Test-support namespace: independent oracles for cross-checking kernels."""

from .oracles import (
    SN_MASS_CAP,
    brute_force_pattern_counts,
    factorial_kernel_expansion,
    k1,
    k2,
    pattern_factorial_split,
    permutation_sum_oracle,
    shuffle_kernel,
    symmetrization_oracle,
)

__all__ = [
    "SN_MASS_CAP",
    "brute_force_pattern_counts",
    "factorial_kernel_expansion",
    "k1",
    "k2",
    "pattern_factorial_split",
    "permutation_sum_oracle",
    "shuffle_kernel",
    "symmetrization_oracle",
]
