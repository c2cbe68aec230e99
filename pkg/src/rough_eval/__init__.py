"""Rough sets on fuzzy approximation spaces with ordering rules and entropy weighting."""

from .entropy import WeightReport, partition_entropy, significance, weight_report, weighting_coefficients
from .errors import RoughEvalError
from .ism import (
    AttributeSpec,
    EvaluationConfig,
    InformationSystem,
    Kind,
    LevelSpec,
    Polarity,
    load_config,
    load_information_system,
    validate_config,
)
from .ordering import GradedTable, assign_grades, dominates, order_classes
from .pipeline import EvaluationReport, LevelResult, rank_within_level, run_all, run_level
from .proximity import Partition, ProximityMatrix, alpha_partition, build_proximity
from .roughset import ApproximationPair, approximate, joint_partition, lower_approximation, upper_approximation

__version__ = "0.1.0"
