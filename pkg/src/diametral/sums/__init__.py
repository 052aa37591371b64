"""Absolute sums and the witness/certificate transformers on them."""

from .daugavet import (aoh_daugavet_point, combine_non_daugavet_certificates,
                       component_witness_from_sum, sum_daugavet_witness)
from .delta import (DeltaIndexSet, combine_non_deltak_certificates, conjugate_pair_exists,
                    delta_point_infty, deltak_point, deltak_witness_l1, infty_delta_witness,
                    lift_non_delta_certificate)
from .points import OraclePoint, as_oracle_point, daugavet_point
from .space import SumFunctional, SumSpace, SumVector

__all__ = [
    "DeltaIndexSet", "OraclePoint", "SumFunctional", "SumSpace", "SumVector",
    "aoh_daugavet_point", "as_oracle_point", "combine_non_daugavet_certificates",
    "combine_non_deltak_certificates", "component_witness_from_sum", "conjugate_pair_exists",
    "daugavet_point", "delta_point_infty", "deltak_point", "deltak_witness_l1",
    "infty_delta_witness", "lift_non_delta_certificate", "sum_daugavet_witness",
]
