"""Approximate TTP-2 schedules for n divisible by 4 via super-team pairing."""

from .cost import CostReport, extra_cost_accounting, independent_lower_bound, itinerary_cost
from .errors import ConsistencyError, ParseError, TTPError, UnsupportedSizeError, ValidationError
from .expander import build_schedule, solve_n4
from .instance import DistanceMatrix, gen_random_metric, gen_worst_case, parse_instance, read_instance
from .matching import PairMatching, min_perfect_matching
from .model import Schedule, decode_schedule, encode_schedule, validate_schedule
from .solver import Solution, solve

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError", "CostReport", "DistanceMatrix", "PairMatching", "ParseError",
    "Schedule", "Solution", "TTPError", "UnsupportedSizeError", "ValidationError",
    "build_schedule", "decode_schedule", "encode_schedule", "extra_cost_accounting",
    "gen_random_metric", "gen_worst_case", "independent_lower_bound", "itinerary_cost",
    "min_perfect_matching", "parse_instance", "read_instance", "solve", "solve_n4",
    "validate_schedule",
]
