"""Alignment-free Hardy-type Bell test: state reconstruction,
verification under arbitrary local rotations, and exhaustive
local-hidden-variable certification."""

from .config import P_GG_TARGET, TOL_EXACT, TOL_UNITARY
from .eta import EtaSolution, build_constraint, certify, solve_eta
from .lhv import enumerate_contradiction, lhv_best_model
from .measurement import (
    HardyRecord,
    Outcome4,
    OutcomeTable,
    PartySetting,
    aggregate,
    classify_f,
    classify_g,
    conditional,
    hardy_record,
    joint_outcome_table,
    outcome_projector,
)
from .montecarlo import ExperimentConfig, run_experiment, sample_outcomes
from .spin import (
    collective_rotate,
    four_qubit_singlet_basis,
    pauli,
    two_qubit_singlet,
)

__version__ = "0.1.0"
