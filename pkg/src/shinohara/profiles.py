"""Markov strategy profiles: per-state paper probabilities.

Three representations cover everything the toolkit needs:

  * SizeSymmetricProfile — every survivor plays the same probability, which
    depends only on how many players remain (the symmetric equilibrium).
  * RoleBasedProfile — probabilities attach to roles; in each state, roles
    are handed out to survivors by a selection rule (default: ascending id).
    Houses the one-paper / two-paper / combo equilibrium families.
  * ExplicitProfile — an arbitrary probability for every (state, player);
    the representation the numerical search operates on.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Sequence

from .equilibrium import solve_phi
from .game import ContractError, GameState

SelectionRule = Callable[[GameState], Sequence[int]]


def lowest_index_selection(state: GameState) -> Sequence[int]:
    """Default role order: survivors by ascending player id."""
    return state.survivors


def state_key(state: GameState) -> str:
    return ",".join(str(p) for p in state.survivors)


def state_from_key(key: str) -> GameState:
    return GameState.of(int(tok) for tok in key.split(","))


def playable_states(universe: int, min_size: int = 3) -> Iterator[GameState]:
    """All states with at least `min_size` survivors, ascending by size."""
    players = range(universe)
    for size in range(min_size, universe + 1):
        for combo in itertools.combinations(players, size):
            yield GameState(combo)


class MarkovProfile:
    """Base class; subclasses answer paper_probability(state, player)."""

    universe: int

    def paper_probability(self, state: GameState, player: int) -> float:
        raise NotImplementedError

    def probabilities(self, state: GameState) -> tuple[float, ...]:
        return tuple(self.paper_probability(state, p) for p in state.survivors)

    def is_totally_mixed(self) -> bool:
        return all(
            0.0 < p < 1.0
            for state in playable_states(self.universe)
            for p in self.probabilities(state)
        )

    def to_json(self) -> dict:
        raise NotImplementedError

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @staticmethod
    def from_json(data: dict) -> "MarkovProfile":
        kind = data.get("kind")
        if kind == "size_symmetric":
            return SizeSymmetricProfile(
                universe=int(data["universe"]),
                p_by_size={int(k): float(v) for k, v in data["p"].items()},
            )
        if kind == "role_based":
            return RoleBasedProfile(
                universe=int(data["universe"]),
                rule=str(data.get("rule", "custom")),
                roles_by_size={
                    int(k): tuple(float(x) for x in v)
                    for k, v in data["roles"].items()
                },
            )
        if kind == "explicit":
            probs = {
                state_from_key(k): {int(p): float(x) for p, x in v.items()}
                for k, v in data["probs"].items()
            }
            return ExplicitProfile(universe=int(data["universe"]), probs=probs)
        raise ContractError(f"unknown profile kind: {kind!r}")

    @staticmethod
    def loads(text: str) -> "MarkovProfile":
        return MarkovProfile.from_json(json.loads(text))


@dataclass(frozen=True)
class SizeSymmetricProfile(MarkovProfile):
    universe: int
    p_by_size: Mapping[int, float]

    def __post_init__(self):
        _check_universe(self.universe)
        for n in range(3, self.universe + 1):
            if n not in self.p_by_size:
                raise ContractError(f"missing probability for state size {n}")
            _check_prob(self.p_by_size[n])

    def paper_probability(self, state: GameState, player: int) -> float:
        return self.p_by_size[state.size]

    def is_totally_mixed(self) -> bool:
        return all(0.0 < self.p_by_size[n] < 1.0 for n in range(3, self.universe + 1))

    def to_json(self) -> dict:
        return {
            "universe": self.universe,
            "kind": "size_symmetric",
            "p": {str(n): self.p_by_size[n] for n in range(3, self.universe + 1)},
        }


@dataclass(frozen=True)
class RoleBasedProfile(MarkovProfile):
    """Per-state role probabilities; role r goes to the r-th player picked
    by the selection rule among the survivors."""

    universe: int
    rule: str
    roles_by_size: Mapping[int, tuple[float, ...]]
    selection: SelectionRule = field(default=lowest_index_selection, compare=False)

    def __post_init__(self):
        _check_universe(self.universe)
        for n in range(3, self.universe + 1):
            roles = self.roles_by_size.get(n)
            if roles is None or len(roles) != n:
                raise ContractError(f"need exactly {n} role probabilities for size {n}")
            for p in roles:
                _check_prob(p)

    def paper_probability(self, state: GameState, player: int) -> float:
        order = list(self.selection(state))
        return self.roles_by_size[state.size][order.index(player)]

    def is_totally_mixed(self) -> bool:
        return all(
            0.0 < p < 1.0
            for n in range(3, self.universe + 1)
            for p in self.roles_by_size[n]
        )

    def to_json(self) -> dict:
        return {
            "universe": self.universe,
            "kind": "role_based",
            "rule": self.rule,
            "roles": {
                str(n): list(self.roles_by_size[n])
                for n in range(3, self.universe + 1)
            },
        }


@dataclass(frozen=True)
class ExplicitProfile(MarkovProfile):
    universe: int
    probs: Mapping[GameState, Mapping[int, float]]

    def __post_init__(self):
        _check_universe(self.universe)
        for state in playable_states(self.universe):
            entry = self.probs.get(state)
            if entry is None or set(entry) != set(state.survivors):
                raise ContractError(f"missing probabilities for state {state.survivors}")
            for p in entry.values():
                _check_prob(p)

    def paper_probability(self, state: GameState, player: int) -> float:
        return self.probs[state][player]

    def to_json(self) -> dict:
        return {
            "universe": self.universe,
            "kind": "explicit",
            "probs": {
                state_key(s): {str(p): v for p, v in sorted(entry.items())}
                for s, entry in sorted(self.probs.items(), key=lambda kv: (len(kv[0].survivors), kv[0].survivors))
            },
        }


def _check_universe(universe: int):
    if universe < 3:
        raise ContractError("the game needs at least three players")


def _check_prob(p: float):
    if not 0.0 <= p <= 1.0:
        raise ContractError(f"probability {p} outside [0, 1]")


def profile_symmetric_spe(universe: int) -> SizeSymmetricProfile:
    """The unique symmetric equilibrium: phi(n) for every state size n."""
    _check_universe(universe)
    return SizeSymmetricProfile(
        universe=universe,
        p_by_size={n: solve_phi(n).phi for n in range(3, universe + 1)},
    )


def profile_one_paper(
    universe: int, selection: SelectionRule = lowest_index_selection
) -> RoleBasedProfile:
    """One designated player always shows paper, everyone else rock."""
    _check_universe(universe)
    return RoleBasedProfile(
        universe=universe,
        rule="one_paper",
        roles_by_size={
            n: (1.0,) + (0.0,) * (n - 1) for n in range(3, universe + 1)
        },
        selection=selection,
    )


def profile_two_paper(
    universe: int, selection: SelectionRule = lowest_index_selection
) -> RoleBasedProfile:
    """Two designated players always show paper, everyone else rock."""
    _check_universe(universe)
    return RoleBasedProfile(
        universe=universe,
        rule="two_paper",
        roles_by_size={
            n: (1.0, 1.0) + (0.0,) * (n - 2) for n in range(3, universe + 1)
        },
        selection=selection,
    )


def profile_combo(
    universe: int,
    q: float | Mapping[int, float],
    selection: SelectionRule = lowest_index_selection,
) -> RoleBasedProfile:
    """One sure-paper player plus one who mixes with probability q per state size."""
    _check_universe(universe)
    if isinstance(q, Mapping):
        q_by_size = {n: float(q[n]) for n in range(3, universe + 1)}
    else:
        q_by_size = {n: float(q) for n in range(3, universe + 1)}
    for value in q_by_size.values():
        _check_prob(value)
    return RoleBasedProfile(
        universe=universe,
        rule="combo",
        roles_by_size={
            n: (1.0, q_by_size[n]) + (0.0,) * (n - 2) for n in range(3, universe + 1)
        },
        selection=selection,
    )


def profile_all_rock(universe: int) -> SizeSymmetricProfile:
    """Everyone always shows rock; useful as a non-equilibrium counterexample."""
    _check_universe(universe)
    return SizeSymmetricProfile(
        universe=universe, p_by_size={n: 0.0 for n in range(3, universe + 1)}
    )


def to_explicit(profile: MarkovProfile) -> ExplicitProfile:
    """Materialize any profile as per-(state, player) probabilities."""
    if isinstance(profile, ExplicitProfile):
        return profile
    probs = {
        state: {p: profile.paper_probability(state, p) for p in state.survivors}
        for state in playable_states(profile.universe)
    }
    return ExplicitProfile(universe=profile.universe, probs=probs)
