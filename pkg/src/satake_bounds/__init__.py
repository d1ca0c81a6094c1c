"""Explicit local bounds for Satake parameters and the Dirichlet series they build.

Submodules:

* :mod:`~satake_bounds.params` -- local parameters, unitary pairing, traces, sampling
* :mod:`~satake_bounds.constants` -- exact constants ``r_j``, ``R_j``, ``c_n``
* :mod:`~satake_bounds.majorization` -- the trace majorization and its relatives
* :mod:`~satake_bounds.symfunc` -- partitions, Schur functions, Cauchy identity
* :mod:`~satake_bounds.dirichlet` -- completely multiplicative series and the bootstrap
* :mod:`~satake_bounds.suite` -- the acceptance matrix used by ``satake-bounds report``
* :mod:`~satake_bounds.cli` -- the ``satake-bounds`` command
"""
from .constants import constant_table, leading_constant, subset_counts, threshold_sequence
from .majorization import (
    classify_case,
    lrs_check,
    max_modulus_sq,
    prime_majorization_bound,
    trace_bound,
    trace_split_check,
)
from .params import (
    SpectralParams,
    UnitaryClass,
    check_unitary_pairing,
    exterior_trace,
    sample_unitary_class,
    sort_by_modulus,
    sym2_trace,
)

__version__ = "0.1.0"
