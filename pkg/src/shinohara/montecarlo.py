"""Seeded Monte Carlo simulation of full games.

Trial t of a run draws its own generator seed via mix64(master_seed, t), so
trials are independent streams and results do not depend on execution order.
The hot trial loop exists twice: a compiled Cython kernel (shinohara._mckernel)
and a pure-Python fallback. Both consume uniforms in the same order (one per
surviving player per round, ascending player id) from the same SplitMix64
streams and accumulate in the same order, so their outputs are bit-identical.
The kernel applies to profiles whose probabilities depend only on state size
and survivor rank; anything else runs the Python path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

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
from .profiles import (
    MarkovProfile,
    RoleBasedProfile,
    SizeSymmetricProfile,
    lowest_index_selection,
)
from .rng import SplitMix64, mix64

try:
    from . import _mckernel

    HAVE_KERNEL = True
except ImportError:  # built without the extension
    _mckernel = None
    HAVE_KERNEL = False

DEFAULT_MAX_ROUNDS = 10000
DEFAULT_BACKEND = "cython" if HAVE_KERNEL else "python"


@dataclass(frozen=True)
class RoundRecord:
    state: GameState
    actions: dict[int, Action]
    resolution: RoundResolution


@dataclass(frozen=True)
class Transcript:
    """Full record of one simulated game."""

    universe: int
    seed: int
    rounds: tuple[RoundRecord, ...]
    outcome: dict[int, Fraction]
    truncated: bool


@dataclass(frozen=True)
class SimStats:
    """Aggregate statistics over a batch of simulated games."""

    trials: int
    universe: int
    win_frequency: tuple[float, ...]
    mean_payoff: tuple[float, ...]
    round_count_histogram: dict[int, int]
    repeat_count: int
    truncation_count: int
    master_seed: int
    max_rounds: int

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "universe": self.universe,
            "win_frequency": list(self.win_frequency),
            "mean_payoff": list(self.mean_payoff),
            "round_count_histogram": {
                str(k): v for k, v in sorted(self.round_count_histogram.items())
            },
            "repeat_count": self.repeat_count,
            "truncation_count": self.truncation_count,
            "master_seed": self.master_seed,
            "max_rounds": self.max_rounds,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_csv(self) -> str:
        lines = ["player,win_frequency,mean_payoff"]
        for p in range(self.universe):
            lines.append(f"{p},{self.win_frequency[p]:.6f},{self.mean_payoff[p]:.6f}")
        return "\n".join(lines) + "\n"


def play_game(
    profile: MarkovProfile,
    universe: int,
    seed: int,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> Transcript:
    """Simulate one full game, recording every round.

    Each surviving player's action is sampled independently each round; the
    game ends at a winner, a two-player split, or after max_rounds (then
    every remaining player gets 1/n).
    """
    _check_run_args(profile, universe)
    if max_rounds < 0:
        raise ContractError("max_rounds must be non-negative")
    rng = SplitMix64(seed)
    state = GameState.full(universe)
    records: list[RoundRecord] = []
    outcome: dict[int, Fraction] | None = None
    truncated = False
    while True:
        if len(records) >= max_rounds:
            truncated = True
            outcome = infinite_history_payoffs(state)
            break
        actions = {
            p: Action.PAPER
            if rng.uniform() < profile.paper_probability(state, p)
            else Action.ROCK
            for p in state.survivors
        }
        resolution = resolve_round(state, actions)
        records.append(RoundRecord(state=state, actions=actions, resolution=resolution))
        payoffs = terminal_payoffs(resolution, state)
        if payoffs is not None:
            outcome = payoffs
            break
        if resolution.kind is ResolutionKind.CONTINUE:
            state = resolution.next_state
    full_outcome = {p: outcome.get(p, Fraction(0)) for p in range(universe)}
    return Transcript(
        universe=universe,
        seed=seed,
        rounds=tuple(records),
        outcome=full_outcome,
        truncated=truncated,
    )


def _rank_matrix(profile: MarkovProfile) -> np.ndarray | None:
    """(size, rank) probability matrix, or None if the profile cannot be
    expressed that way (explicit profiles, custom selection rules)."""
    u = profile.universe
    probs = np.zeros((u + 1, u))
    if isinstance(profile, SizeSymmetricProfile):
        for n in range(3, u + 1):
            probs[n, :n] = profile.p_by_size[n]
        return probs
    if isinstance(profile, RoleBasedProfile) and profile.selection is lowest_index_selection:
        for n in range(3, u + 1):
            probs[n, :n] = profile.roles_by_size[n]
        return probs
    return None


def _simulate_compact(profile, matrix, universe, seed, max_rounds):
    """Python twin of the Cython kernel's per-trial loop."""
    rng = SplitMix64(seed)
    survivors = list(range(universe))
    rounds = 0
    repeats = 0
    winner = -1
    split: tuple[int, int] | None = None
    truncated = False
    while True:
        if rounds >= max_rounds:
            truncated = True
            break
        n = len(survivors)
        if matrix is not None:
            ps = matrix[n]
        else:
            state = GameState(tuple(survivors))
            ps = [profile.paper_probability(state, p) for p in survivors]
        papers = []
        rocks = []
        for k in range(n):
            if rng.uniform() < ps[k]:
                papers.append(survivors[k])
            else:
                rocks.append(survivors[k])
        rounds += 1
        if not papers or not rocks:
            repeats += 1
            continue
        if len(papers) == 1:
            winner = papers[0]
            break
        if len(rocks) == 1:
            winner = rocks[0]
            break
        if len(rocks) == 2:
            split = (rocks[0], rocks[1])
            break
        survivors = rocks
    return winner, split, survivors, rounds, repeats, truncated


def _run_trials_python(profile, matrix, universe, trials, master_seed, max_rounds):
    payoff_sums = [0.0] * universe
    win_counts = [0] * universe
    hist: dict[int, int] = {}
    repeat_total = 0
    trunc_total = 0
    for t in range(trials):
        seed = mix64(master_seed, t)
        winner, split, survivors, rounds, repeats, truncated = _simulate_compact(
            profile, matrix, universe, seed, max_rounds
        )
        hist[rounds] = hist.get(rounds, 0) + 1
        repeat_total += repeats
        if truncated:
            trunc_total += 1
            share = 1.0 / len(survivors)
            for p in survivors:
                payoff_sums[p] += share
        elif winner >= 0:
            payoff_sums[winner] += 1.0
            win_counts[winner] += 1
        else:
            assert split is not None
            payoff_sums[split[0]] += 0.5
            payoff_sums[split[1]] += 0.5
    return payoff_sums, win_counts, hist, repeat_total, trunc_total


def _check_run_args(profile: MarkovProfile, universe: int):
    if universe < 3:
        raise ContractError("the game needs at least three players")
    if universe != profile.universe:
        raise ContractError(
            f"profile universe {profile.universe} does not match requested {universe}"
        )


def run_trials(
    profile: MarkovProfile,
    universe: int,
    trials: int,
    master_seed: int,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    backend: str | None = None,
) -> SimStats:
    """Run seeded independent game trials and aggregate the results.

    backend: "cython", "python", or None for the best available. Both
    backends produce identical SimStats for the same arguments.
    """
    _check_run_args(profile, universe)
    if trials < 1:
        raise ContractError("need at least one trial")
    if max_rounds < 1:
        raise ContractError("max_rounds must be at least 1")
    matrix = _rank_matrix(profile)
    chosen = backend or DEFAULT_BACKEND
    if chosen not in ("cython", "python"):
        raise ContractError(f"unknown backend: {chosen!r}")
    if chosen == "cython" and backend == "cython":
        if not HAVE_KERNEL:
            raise ContractError("the compiled kernel is not available")
        if matrix is None:
            raise ContractError("this profile is not expressible for the kernel")
    if chosen == "cython" and HAVE_KERNEL and matrix is not None:
        payoff_sums, win_counts, hist_arr, repeat_total, trunc_total = (
            _mckernel.run_trials_kernel(
                np.ascontiguousarray(matrix),
                universe,
                trials,
                master_seed & (2**64 - 1),
                max_rounds,
            )
        )
        payoff_sums = list(payoff_sums)
        win_counts = list(win_counts)
        hist = {r: int(c) for r, c in enumerate(hist_arr) if c > 0}
    else:
        payoff_sums, win_counts, hist, repeat_total, trunc_total = _run_trials_python(
            profile, matrix, universe, trials, master_seed & (2**64 - 1), max_rounds
        )
    return SimStats(
        trials=trials,
        universe=universe,
        win_frequency=tuple(float(c) / trials for c in win_counts),
        mean_payoff=tuple(float(s) / trials for s in payoff_sums),
        round_count_histogram=hist,
        repeat_count=int(repeat_total),
        truncation_count=int(trunc_total),
        master_seed=master_seed & (2**64 - 1),
        max_rounds=max_rounds,
    )
