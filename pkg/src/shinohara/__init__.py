"""Shinohara rock-paper-scissors toolkit."""

from .equilibrium import PhiSolution, eq1_residual, eq2_lhs, phi_table, solve_phi
from .game import (
    Action,
    ContractError,
    GameState,
    ResolutionKind,
    RoundResolution,
    infinite_history_payoffs,
    resolve_round,
    terminal_payoffs,
)
from .montecarlo import (
    DEFAULT_BACKEND,
    HAVE_KERNEL,
    SimStats,
    Transcript,
    play_game,
    run_trials,
)
from .profiles import (
    ExplicitProfile,
    MarkovProfile,
    RoleBasedProfile,
    SizeSymmetricProfile,
    profile_all_rock,
    profile_combo,
    profile_one_paper,
    profile_symmetric_spe,
    profile_two_paper,
    to_explicit,
)
from .search import SearchOutcome, search_totally_mixed
from .values import (
    CapacityError,
    DeviationReport,
    ResidualReport,
    ValueTable,
    compute_values,
    residual_system,
    verify_one_shot,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "CapacityError",
    "ContractError",
    "DEFAULT_BACKEND",
    "DeviationReport",
    "ExplicitProfile",
    "GameState",
    "HAVE_KERNEL",
    "MarkovProfile",
    "PhiSolution",
    "ResidualReport",
    "ResolutionKind",
    "RoleBasedProfile",
    "RoundResolution",
    "SearchOutcome",
    "SimStats",
    "SizeSymmetricProfile",
    "Transcript",
    "ValueTable",
    "compute_values",
    "eq1_residual",
    "eq2_lhs",
    "infinite_history_payoffs",
    "phi_table",
    "play_game",
    "profile_all_rock",
    "profile_combo",
    "profile_one_paper",
    "profile_symmetric_spe",
    "profile_two_paper",
    "resolve_round",
    "residual_system",
    "run_trials",
    "search_totally_mixed",
    "solve_phi",
    "terminal_payoffs",
    "to_explicit",
    "verify_one_shot",
]
