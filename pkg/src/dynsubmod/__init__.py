"""Fully dynamic non-monotone submodular maximization under a cardinality constraint."""
from .baselines import RandomSelector, SampleStreaming, random_baseline
from .data import UpdateEvent
from .guessing import GuessGrid, element_window
from .leveling import LevelingInstance, ThresholdParams
from .oracle import (CountingOracle, CoverageObjective, LogDetObjective, MaxCutObjective,
                     ModularObjective, determinant)
from .reduction import ReductionRun, SubsetStrategy, local_search_subset, uniform_subset

__version__ = "0.1.0"

__all__ = [
    "CountingOracle", "CoverageObjective", "GuessGrid", "LevelingInstance", "LogDetObjective",
    "MaxCutObjective", "ModularObjective", "RandomSelector", "ReductionRun", "SampleStreaming",
    "SubsetStrategy", "ThresholdParams", "UpdateEvent", "determinant", "element_window",
    "local_search_subset", "random_baseline", "uniform_subset",
]
