"""Exact and certified asymptotic analysis of partitions split by crank parity."""

from .asymptotics import (
    Envelope,
    HypothesisNotMet,
    Subject,
    ckl_error_bound,
    ckl_series,
    e_beta_bound,
    equidistribution_bound,
    main_term,
    mk_envelope,
    mu,
    p_asymptotic,
    y_bounds,
)
from .certify import Certificate, Method, Status, Theorem
from .dedekind import ExpSumValue, a_hat, dedekind_sum, dedekind_sum_direct
from .interval import IndeterminateError, RealInterval
from .partitions import (
    CrankParityTable,
    InvariantViolation,
    Partition,
    brute_force_crank_counts,
    build_table,
    crank_of_partition,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate", "CrankParityTable", "Envelope", "ExpSumValue", "HypothesisNotMet",
    "IndeterminateError", "InvariantViolation", "Method", "Partition", "RealInterval",
    "Status", "Subject", "Theorem", "a_hat", "brute_force_crank_counts", "build_table",
    "ckl_error_bound", "ckl_series", "crank_of_partition", "dedekind_sum", "dedekind_sum_direct",
    "e_beta_bound", "equidistribution_bound", "main_term", "mk_envelope", "mu", "p_asymptotic",
    "y_bounds",
]
