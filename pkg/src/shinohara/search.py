"""Numerical search for totally mixed equilibria.

Stacks the per-(state, player) indifference residuals into a vector and runs
damped Newton with central finite-difference Jacobians from many seeded
random interior starting points. Converged roots are deduplicated; the
symmetric equilibrium should always be among them, and with three players it
should be the only one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .game import ContractError, GameState
from .profiles import ExplicitProfile, MarkovProfile, playable_states, to_explicit
from .rng import SplitMix64, mix64
from .values import residual_entry

MIN_UNIVERSE = 3
MAX_UNIVERSE = 8
RESIDUAL_TOL = 1e-9
DEDUP_TOL = 1e-6
FD_STEP = 1e-6
BOX_MARGIN = 1e-6
MAX_NEWTON_ITERS = 60


@dataclass(frozen=True)
class SearchSolution:
    profile: ExplicitProfile
    residual_norm: float
    start_index: int


@dataclass(frozen=True)
class FailedStart:
    start_index: int
    residual_norm: float


@dataclass(frozen=True)
class SearchOutcome:
    solutions: tuple[SearchSolution, ...]
    failures: tuple[FailedStart, ...]


def variable_order(universe: int) -> list[tuple[GameState, int]]:
    """Canonical flattening of the profile coordinates."""
    return [
        (state, player)
        for state in playable_states(universe)
        for player in state.survivors
    ]


def vector_to_profile(universe: int, x: np.ndarray) -> ExplicitProfile:
    order = variable_order(universe)
    probs: dict[GameState, dict[int, float]] = {}
    for (state, player), value in zip(order, x):
        probs.setdefault(state, {})[player] = float(value)
    return ExplicitProfile(universe=universe, probs=probs)


def profile_to_vector(profile: MarkovProfile) -> np.ndarray:
    explicit = to_explicit(profile)
    return np.array(
        [explicit.probs[state][player] for state, player in variable_order(profile.universe)]
    )


def _residual_vector(universe: int, x: np.ndarray) -> np.ndarray:
    profile = vector_to_profile(universe, np.clip(x, 1e-7, 1.0 - 1e-7))
    return np.array(
        [
            residual_entry(profile, state, player).residual
            for state, player in variable_order(universe)
        ]
    )


def _fd_jacobian(universe: int, x: np.ndarray) -> np.ndarray:
    dim = len(x)
    jac = np.empty((dim, dim))
    for j in range(dim):
        hi = x.copy()
        lo = x.copy()
        hi[j] += FD_STEP
        lo[j] -= FD_STEP
        jac[:, j] = (_residual_vector(universe, hi) - _residual_vector(universe, lo)) / (
            2.0 * FD_STEP
        )
    return jac


def newton_refine(
    universe: int, x0: np.ndarray, max_iters: int = MAX_NEWTON_ITERS
) -> tuple[np.ndarray, float, bool]:
    """Damped Newton from x0; returns (point, residual max-norm, converged)."""
    x = np.clip(np.asarray(x0, dtype=float), BOX_MARGIN, 1.0 - BOX_MARGIN)
    fx = _residual_vector(universe, x)
    norm = float(np.max(np.abs(fx)))
    for _ in range(max_iters):
        if norm < RESIDUAL_TOL:
            return x, norm, True
        jac = _fd_jacobian(universe, x)
        try:
            step = np.linalg.solve(jac, -fx)
        except np.linalg.LinAlgError:
            step, *_ = np.linalg.lstsq(jac, -fx, rcond=None)
        t = 1.0
        improved = False
        while t > 1e-8:
            candidate = np.clip(x + t * step, BOX_MARGIN, 1.0 - BOX_MARGIN)
            f_new = _residual_vector(universe, candidate)
            new_norm = float(np.max(np.abs(f_new)))
            if new_norm < norm:
                x, fx, norm = candidate, f_new, new_norm
                improved = True
                break
            t *= 0.5
        if not improved:
            break
    return x, norm, norm < RESIDUAL_TOL


def search_totally_mixed(universe: int, starts: int, seed: int) -> SearchOutcome:
    """Multi-start Newton on the indifference system.

    Each start draws every coordinate uniformly from [0.05, 0.95] using a
    seed derived from (seed, start index), so results are reproducible and
    independent of evaluation order.
    """
    if not MIN_UNIVERSE <= universe <= MAX_UNIVERSE:
        raise ContractError(
            f"universe must lie in [{MIN_UNIVERSE}, {MAX_UNIVERSE}]"
        )
    dim = len(variable_order(universe))
    solutions: list[SearchSolution] = []
    failures: list[FailedStart] = []
    for k in range(starts):
        rng = SplitMix64(mix64(seed, k))
        x0 = np.array([0.05 + 0.9 * rng.uniform() for _ in range(dim)])
        x, norm, converged = newton_refine(universe, x0)
        if not converged:
            failures.append(FailedStart(start_index=k, residual_norm=norm))
            continue
        duplicate = any(
            np.max(np.abs(profile_to_vector(sol.profile) - x)) <= DEDUP_TOL
            for sol in solutions
        )
        if not duplicate:
            solutions.append(
                SearchSolution(
                    profile=vector_to_profile(universe, x),
                    residual_norm=norm,
                    start_index=k,
                )
            )
    return SearchOutcome(solutions=tuple(solutions), failures=tuple(failures))
