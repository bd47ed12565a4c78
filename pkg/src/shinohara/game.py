"""Core mechanics of Shinohara rock-paper-scissors.

The host always shows rock, so each player chooses rock or paper. A round
with n >= 3 players resolves to exactly one of four outcomes:

  * everyone picked the same action       -> the round repeats
  * exactly one player picked paper       -> that player wins
  * exactly one player picked rock        -> that player wins
  * >= 2 papers and >= 2 rocks            -> papers are eliminated

When elimination leaves exactly two players, they split the prize evenly.
Everything here is pure and deterministic; randomness lives in montecarlo.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping


class ContractError(ValueError):
    """Raised when an operation is called outside its stated contract."""


class Action(Enum):
    ROCK = "rock"
    PAPER = "paper"


@dataclass(frozen=True)
class GameState:
    """The set of surviving players, canonically ordered ascending by id."""

    survivors: tuple[int, ...]

    def __post_init__(self):
        if not self.survivors:
            raise ContractError("a game state must have at least one survivor")
        if list(self.survivors) != sorted(set(self.survivors)):
            raise ContractError("survivors must be unique and ascending")
        if self.survivors[0] < 0:
            raise ContractError("player ids are non-negative")

    @classmethod
    def of(cls, players: Iterable[int]) -> "GameState":
        return cls(tuple(sorted(set(players))))

    @classmethod
    def full(cls, universe: int) -> "GameState":
        if universe < 3:
            raise ContractError("the game needs at least three players")
        return cls(tuple(range(universe)))

    @property
    def size(self) -> int:
        return len(self.survivors)

    @property
    def is_terminal(self) -> bool:
        return len(self.survivors) <= 2

    def __contains__(self, player: int) -> bool:
        return player in self.survivors

    def __iter__(self):
        return iter(self.survivors)


class ResolutionKind(Enum):
    REPEAT = "repeat"
    WINNER = "winner"
    SPLIT_TWO = "split_two"
    CONTINUE = "continue"


@dataclass(frozen=True)
class RoundResolution:
    """Outcome of one simultaneous round."""

    kind: ResolutionKind
    winner: int | None = None
    pair: tuple[int, int] | None = None
    next_state: GameState | None = None
    eliminated: tuple[int, ...] = field(default=())

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind.value, "eliminated": list(self.eliminated)}
        if self.winner is not None:
            out["winner"] = self.winner
        if self.pair is not None:
            out["pair"] = list(self.pair)
        if self.next_state is not None:
            out["survivors"] = list(self.next_state.survivors)
        return out


def resolve_paper_set(state: GameState, papers: frozenset[int]) -> RoundResolution:
    """Resolve a round given the set of players who showed paper.

    Internal fast path shared by resolve_round and the value recursion, so
    every caller classifies rounds through one piece of code.
    """
    n = state.size
    if n < 3:
        raise ContractError("rounds are only played with three or more players")
    survivors = state.survivors
    n_paper = len(papers)
    n_rock = n - n_paper
    if n_paper == 0 or n_rock == 0:
        return RoundResolution(ResolutionKind.REPEAT)
    if n_paper == 1:
        (winner,) = papers
        return RoundResolution(ResolutionKind.WINNER, winner=winner)
    if n_rock == 1:
        winner = next(p for p in survivors if p not in papers)
        return RoundResolution(ResolutionKind.WINNER, winner=winner)
    rocks = tuple(p for p in survivors if p not in papers)
    eliminated = tuple(p for p in survivors if p in papers)
    if n_rock == 2:
        return RoundResolution(ResolutionKind.SPLIT_TWO, pair=(rocks[0], rocks[1]), eliminated=eliminated)
    return RoundResolution(
        ResolutionKind.CONTINUE, next_state=GameState(rocks), eliminated=eliminated
    )


def resolve_round(state: GameState, actions: Mapping[int, Action]) -> RoundResolution:
    """Resolve one simultaneous round for the given action map.

    The action map must cover exactly the survivors of `state`.
    """
    if set(actions) != set(state.survivors):
        raise ContractError("action map must cover exactly the surviving players")
    papers = frozenset(p for p, a in actions.items() if a is Action.PAPER)
    return resolve_paper_set(state, papers)


def terminal_payoffs(
    resolution: RoundResolution, state: GameState
) -> dict[int, Fraction] | None:
    """Payoffs if the resolution ends the game, else None.

    The winner takes 1; a two-player finish splits 1/2 each. Payoffs are
    exact rationals and always sum to 1.
    """
    if resolution.kind is ResolutionKind.WINNER:
        return {p: Fraction(int(p == resolution.winner)) for p in state.survivors}
    if resolution.kind is ResolutionKind.SPLIT_TWO:
        assert resolution.pair is not None
        return {
            p: Fraction(1, 2) if p in resolution.pair else Fraction(0)
            for p in state.survivors
        }
    return None


def infinite_history_payoffs(state: GameState) -> dict[int, Fraction]:
    """Payoffs when play never terminates: each of the n survivors gets 1/n."""
    n = state.size
    return {p: Fraction(1, n) for p in state.survivors}
