"""Apolarity, generalized rank strata and Fano-scheme enumeration in exact arithmetic."""

__version__ = "0.1.0"

from .apolarity import (
    ApolarityProfile,
    apolar_space,
    contract,
    essential_subspace,
    membership,
    pairing,
    pairing_nonzero,
    witness_form,
)
from .fields import GF, QQ, Field, FieldError
from .forms import Form, FormTuple, parse_form, parse_tuple
from .linalg import Subspace
from .oracle import (
    FiberReport,
    PrimePowerField,
    enumerate_subspaces,
    fano_points,
    fiber_of_h,
    gaussian_binomial,
    stratum_membership,
)
from .strata import (
    DerivedConstants,
    FanoParameters,
    StratumTable,
    F,
    binom_d,
    compute_R,
    derived_constants,
    endpoint_minimum_check,
    fiber_dim,
    second_difference_G,
    stratum_dim_bound,
)

__all__ = [
    "ApolarityProfile",
    "apolar_space",
    "contract",
    "essential_subspace",
    "membership",
    "pairing",
    "pairing_nonzero",
    "witness_form",
    "GF",
    "QQ",
    "Field",
    "FieldError",
    "Form",
    "FormTuple",
    "parse_form",
    "parse_tuple",
    "Subspace",
    "FiberReport",
    "PrimePowerField",
    "enumerate_subspaces",
    "fano_points",
    "fiber_of_h",
    "gaussian_binomial",
    "stratum_membership",
    "DerivedConstants",
    "FanoParameters",
    "StratumTable",
    "F",
    "binom_d",
    "compute_R",
    "derived_constants",
    "endpoint_minimum_check",
    "fiber_dim",
    "second_difference_G",
    "stratum_dim_bound",
]
