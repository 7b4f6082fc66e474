"""Exact construction and finite-horizon analysis of uniformly recurrent words:
Sturmian and substitutive words, Zeckendorff numeration, finite-sum certificates
and palindromic closures."""

from .errors import (
    Degenerate,
    InsufficientData,
    InvalidArgument,
    IpwordError,
    NotMaximal,
    NotProlongable,
    ResourceLimit,
    StreamsIdentical,
    UnsupportedFormat,
)
from .generators import (
    GOLDEN_ALPHA,
    Substitution,
    SturmianParams,
    characteristic_word,
    fibonacci,
    fixed_point,
    generalized_tm_fixed_point,
    m_bonacci,
    mechanical_word,
    weak_mixing,
)
from .numeration import decode_value, digit_rule_letter, greedy_representation
from .presets import parse_word
from .quadratic import QuadraticReal
from .words import WordStream, complexity_profile, occurrences, special_factors

__version__ = "0.1.0"

__all__ = [
    "Degenerate",
    "GOLDEN_ALPHA",
    "InsufficientData",
    "InvalidArgument",
    "IpwordError",
    "NotMaximal",
    "NotProlongable",
    "QuadraticReal",
    "ResourceLimit",
    "StreamsIdentical",
    "SturmianParams",
    "Substitution",
    "UnsupportedFormat",
    "WordStream",
    "characteristic_word",
    "complexity_profile",
    "decode_value",
    "digit_rule_letter",
    "greedy_representation",
    "occurrences",
    "special_factors",
    "fibonacci",
    "fixed_point",
    "generalized_tm_fixed_point",
    "m_bonacci",
    "mechanical_word",
    "parse_word",
    "weak_mixing",
]
