"""Weighted operator means and Ky Fan type operator inequality checks."""

import json as _json

from ._core import (
    DimensionMismatch,
    DomainViolation,
    Error,
    InvalidArgument,
    NonConvergence,
    NonFinite,
    NotCommuting,
    NotStrictlyPositive,
    ParseError,
    PrimedUnavailable,
    ToleranceConfig,
    chain_identity,
    commutative_identity,
    commutative_kyfan_gap,
    complement,
    eigen_hermitian,
    format_matrix,
    kyfan_gap,
    kyfan_scalar_check,
    lemma_identity,
    loewner_classify,
    loewner_leq,
    parse_matrix_file,
    scalar_means,
    theorem_identity,
    weighted_mean,
)
from ._core import run_fuzz as _run_fuzz
from ._core import run_verify as _run_verify


def verify(**kwargs):
    """Run the verification suite and return the report as a dict."""
    return _json.loads(_run_verify(**kwargs))


def fuzz(target, **kwargs):
    """Explore non-commuting pairs for ``target`` and return the report as a dict."""
    return _json.loads(_run_fuzz(target, **kwargs))


__all__ = [
    "DimensionMismatch",
    "DomainViolation",
    "Error",
    "InvalidArgument",
    "NonConvergence",
    "NonFinite",
    "NotCommuting",
    "NotStrictlyPositive",
    "ParseError",
    "PrimedUnavailable",
    "ToleranceConfig",
    "chain_identity",
    "commutative_identity",
    "commutative_kyfan_gap",
    "complement",
    "eigen_hermitian",
    "format_matrix",
    "fuzz",
    "kyfan_gap",
    "kyfan_scalar_check",
    "lemma_identity",
    "loewner_classify",
    "loewner_leq",
    "parse_matrix_file",
    "scalar_means",
    "theorem_identity",
    "verify",
    "weighted_mean",
]
