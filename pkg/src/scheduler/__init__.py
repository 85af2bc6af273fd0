"""User scheduling (greedy two-phase) and end-to-end beamforming per architecture."""

from .config import (
    BASIS_ANTENNAS, BASIS_SVD, MODES, PHASE1_ONLY, PHASE2, SchedulerConfig, GreedyResult,
    ScheduleOutcome,
)
from .greedy import phase1_greedy, run_phase1
from .modes import (
    run_db, run_asb, run_hb, schedule, select_basis, antenna_basis, evaluate_user_sets,
)
from .pipeline import CppsOptions, BeamformingResult, realize_outcome, schedule_and_beamform

__all__ = [
    "BASIS_ANTENNAS", "BASIS_SVD", "MODES", "PHASE1_ONLY", "PHASE2",
    "SchedulerConfig", "GreedyResult", "ScheduleOutcome",
    "phase1_greedy", "run_phase1",
    "run_db", "run_asb", "run_hb", "schedule", "select_basis", "antenna_basis",
    "evaluate_user_sets",
    "CppsOptions", "BeamformingResult", "realize_outcome", "schedule_and_beamform",
]
