"""Daugavet, Delta and Delta_k points in absolute sums of two Banach spaces,
computed on desk-scale models with exact rational arithmetic."""

from .errors import DiametralError
from .norm2 import HEX, L1, L2, LINF, AbsoluteNorm, classify, find_kl, flatness_delta
from .spaces import (C01PL, FiniteDim, L1Step, NonDeltaCertificate, SliceSpec, brute_slice_sup,
                     daugavet_witness, non_delta_certificate)
from .sums import SumSpace, SumVector, aoh_daugavet_point

__version__ = "0.1.0"

__all__ = [
    "AbsoluteNorm", "C01PL", "DiametralError", "FiniteDim", "HEX", "L1", "L1Step", "L2", "LINF",
    "NonDeltaCertificate", "SliceSpec", "SumSpace", "SumVector", "aoh_daugavet_point",
    "brute_slice_sup", "classify", "daugavet_witness", "find_kl", "flatness_delta",
    "non_delta_certificate",
]
