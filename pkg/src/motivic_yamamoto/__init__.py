"""Motivic Yamamoto integrals over labeled posets."""

from .coaction import (
    CoactionResult,
    closed_terms,
    delta_poset,
    delta_word,
    dr_poset,
    dr_word,
    drprime_poset,
    drprime_word,
    exp_drprime,
)
from .fixtures import example1, example2, example3, load_poset, parse_dsl
from .numeric import NumericValue, eval_poset, mzv_eval
from .poset import LabeledPoset, PathSpec, TotalOrder, antichain, chain, enumerate_posets, validate_poset
from .relations import MembershipCertificate, NotMember, RelationFamily, span_membership
from .schur import TableauIndex, smzv_numeric, smzv_to_poset, smzv_truncated
from .words import FormalSum, IISymbol, Level, TensorTerm, parse_symbol, zeta_symbol
from .yamamoto import STD_PATH, expand, is_admissible

__all__ = [
    "CoactionResult",
    "FormalSum",
    "IISymbol",
    "LabeledPoset",
    "Level",
    "MembershipCertificate",
    "NotMember",
    "NumericValue",
    "PathSpec",
    "RelationFamily",
    "STD_PATH",
    "TableauIndex",
    "TensorTerm",
    "TotalOrder",
    "antichain",
    "chain",
    "closed_terms",
    "delta_poset",
    "delta_word",
    "dr_poset",
    "dr_word",
    "drprime_poset",
    "drprime_word",
    "enumerate_posets",
    "eval_poset",
    "example1",
    "example2",
    "example3",
    "exp_drprime",
    "expand",
    "is_admissible",
    "load_poset",
    "mzv_eval",
    "parse_dsl",
    "parse_symbol",
    "smzv_numeric",
    "smzv_to_poset",
    "smzv_truncated",
    "span_membership",
    "validate_poset",
    "zeta_symbol",
]
