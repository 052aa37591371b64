"""Desk-scale Banach space models."""

from .base import (Chart, DeskSpace, DiametralWitness, NonDeltaCertificate, SliceSpec,
                   check_witness)
from .c01 import C01PL, PLFunction, PointMasses
from .finite import FiniteDim
from .l1step import L1Step, StepFunction
from .oracles import brute_slice_sup, daugavet_witness, non_delta_certificate, norming_functional
from .search import search_sup

__all__ = [
    "C01PL", "Chart", "DeskSpace", "DiametralWitness", "FiniteDim", "L1Step",
    "NonDeltaCertificate", "PLFunction", "PointMasses", "SliceSpec", "StepFunction",
    "brute_slice_sup", "check_witness", "daugavet_witness", "non_delta_certificate",
    "norming_functional", "search_sup",
]
