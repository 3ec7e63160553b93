"""Exact truncated q-series arithmetic and convolution-recurrence verification.

The package computes coefficients A(n) of generating functions

    F_q(t) = prod_j (1 - a_j t q^(beta_j))^(-b_j)
             prod_{n>=1} (1 - a_j t q^(alpha_j n + beta_j))^(-f_j(n)/n)

two independent ways (a logarithmic-derivative convolution recurrence and
direct product expansion) and verifies classical identity families built on
that recurrence, all in exact rational arithmetic truncated at a chosen
q-order.
"""

from .engine import (
    Factor,
    LinearFn,
    ProductSpec,
    SpecError,
    TabulatedFn,
    VerificationReport,
    compute_A,
    compute_h,
    expand_product,
    load_spec,
    spec_from_dict,
    spec_to_dict,
    verify_spec,
)
from .identities import (
    IDENTITY_IDS,
    IdentityCase,
    catalog,
    cauchy_spec,
    euler1_spec,
    euler2_spec,
    lambda_sequence,
    lambda_spec,
    recommended_qorder,
    rogers_szego_spec,
    theorem2_spec,
    verify_t1a,
    verify_t1b,
    verify_t2,
    verify_t3,
    verify_t4,
    verify_t5,
)
from .polys import ParamPoly, Rat, format_rat, gbinom, normalize_rat, parse_rat
from .qtools import (
    PochhammerSpec,
    gaussian_binomial,
    param_poch,
    partition_oracle,
    partition_p,
    pochhammer,
    q6poch,
    qpoch,
    rogers_szego,
    sigma,
    triangular_weight,
)
from .series import Mismatch, QSeries, TSeries, expand_factor, first_mismatch

__all__ = [
    "Factor",
    "IDENTITY_IDS",
    "IdentityCase",
    "LinearFn",
    "Mismatch",
    "ParamPoly",
    "PochhammerSpec",
    "ProductSpec",
    "QSeries",
    "Rat",
    "SpecError",
    "TSeries",
    "TabulatedFn",
    "VerificationReport",
    "catalog",
    "cauchy_spec",
    "compute_A",
    "compute_h",
    "euler1_spec",
    "euler2_spec",
    "expand_factor",
    "expand_product",
    "first_mismatch",
    "format_rat",
    "gaussian_binomial",
    "gbinom",
    "lambda_sequence",
    "lambda_spec",
    "load_spec",
    "normalize_rat",
    "param_poch",
    "parse_rat",
    "partition_oracle",
    "partition_p",
    "pochhammer",
    "q6poch",
    "qpoch",
    "recommended_qorder",
    "rogers_szego",
    "rogers_szego_spec",
    "sigma",
    "spec_from_dict",
    "spec_to_dict",
    "theorem2_spec",
    "triangular_weight",
    "verify_spec",
    "verify_t1a",
    "verify_t1b",
    "verify_t2",
    "verify_t3",
    "verify_t4",
    "verify_t5",
]
