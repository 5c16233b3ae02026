"""Python bindings for gleasonkit.

Matrices are numpy complex arrays. Bipartite operators take the local
dimensions explicitly; the first factor is the left one in ``kron``.
"""

from ._core import (
    GleasonkitError,
    choi_of,
    classify_functional,
    cli_classify,
    cli_demo,
    cli_gen,
    cli_reconstruct,
    eigh,
    gns_error,
    jordan_product,
    kron,
    max_entangled_projector,
    min_product_expectation,
    partial_trace,
    partial_transpose,
    psi,
    reconstruct_state,
    stinespring_error,
    swap_operator,
    time_orientation,
)

__all__ = [
    "GleasonkitError",
    "choi_of",
    "classify_functional",
    "cli_classify",
    "cli_demo",
    "cli_gen",
    "cli_reconstruct",
    "eigh",
    "gns_error",
    "jordan_product",
    "kron",
    "max_entangled_projector",
    "min_product_expectation",
    "partial_trace",
    "partial_transpose",
    "psi",
    "reconstruct_state",
    "stinespring_error",
    "swap_operator",
    "time_orientation",
]
