"""Fuzzy rule interpolation over piecewise-linear fuzzy sets."""
from .analysis import (
    AbnormalityReport, ComparisonMatrix, LinearityReport, MethodRow, check_linearity, compare_methods,
    detect_abnormality, evaluate,
)
from .conclusion import ALL_METHODS, AlphaCut, Conclusion, InterpolationConfig, MethodId
from .errors import FriError
from .estimator import FuzzyRuleInterpolator
from .fis import RuleBaseDocument, parse_fis, parse_observation, serialize_fis, serialize_observation
from .methods import interpolate
from .rulebase import (
    LinguisticPartition, Observation, Rule, RuleBase, fuzzy_distance, select_flanking, validate_rulebase,
)
from .sets import (
    FuzzySet, alpha_cut, alpha_cuts, characteristic_points, is_cnf, make_set, membership, polar_cut,
    reference_point, representative_value, singleton, trapezoid, triangle,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_METHODS", "AbnormalityReport", "AlphaCut", "ComparisonMatrix", "Conclusion", "FriError",
    "FuzzyRuleInterpolator", "FuzzySet", "InterpolationConfig", "LinearityReport", "LinguisticPartition",
    "MethodId", "MethodRow", "Observation", "Rule", "RuleBase", "RuleBaseDocument", "alpha_cut", "alpha_cuts",
    "characteristic_points", "check_linearity", "compare_methods", "detect_abnormality", "evaluate",
    "fuzzy_distance", "interpolate", "is_cnf", "make_set", "membership", "parse_fis", "parse_observation",
    "polar_cut", "reference_point", "representative_value", "select_flanking", "serialize_fis",
    "serialize_observation", "singleton", "trapezoid", "triangle", "validate_rulebase",
]
