"""Gray codes and near-Hamilton cycles on consecutive levels of the hypercube."""

from __future__ import annotations

from .bits import BitVector, LevelInterval, a_value, b_value, special_a, special_b
from .glue import ConjectureGated, long_cycle, sat_cycle_range, tight_enum_pair, tight_enum_range
from .midlevels import ProviderCache, mid_path
from .modes import InvalidParameters, Plan, classify, resolve
from .reflected import gamma_successor, level_first, level_last, level_successor
from .satcycle import GlueCursor, sat_cycle, sat_cycle_high
from .trim import TrimCursor
from .verify import CycleReport, check_sequence, epsilon_bound, v_delta
from .walk import Walk

__version__ = "0.1.0"
