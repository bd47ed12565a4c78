"""Exact winning probabilities and equilibrium verification.

compute_values walks states in increasing size, enumerating all 2^n action
profiles per state; the repeat mass (everyone rock, everyone paper) is
factored out geometrically, and an all-repeating state pays 1/n to each
survivor. verify_one_shot checks every single-round deviation against the
profile's own continuation values. residual_system evaluates the
indifference identities that characterize a totally mixed equilibrium.
"""

from __future__ import annotations

from dataclasses import dataclass

from .game import ContractError, GameState, ResolutionKind, resolve_paper_set
from .profiles import MarkovProfile, SizeSymmetricProfile, playable_states

MAX_UNIVERSE = 12
MAX_STATE_SIZE = 20


class CapacityError(ContractError):
    """The exact-enumeration limits were exceeded."""


class ValueTable:
    """Winning probability for every (state, player) reachable under a profile.

    Two-player states always carry 1/2 each. Size-symmetric profiles store
    one value per state size; everything else stores per-state entries.
    """

    def __init__(self, universe: int, entries: dict | None = None,
                 by_size: dict[int, float] | None = None):
        self.universe = universe
        self._entries = entries
        self._by_size = by_size

    def rho(self, state: GameState, player: int) -> float:
        if player not in state:
            raise ContractError(f"player {player} is not in state {state.survivors}")
        if state.size == 2:
            return 0.5
        if self._by_size is not None:
            return self._by_size[state.size]
        assert self._entries is not None
        return self._entries[state, player]


def _state_probs(profile: MarkovProfile, state: GameState) -> list[float]:
    return [profile.paper_probability(state, p) for p in state.survivors]


def _enumerate_state(
    survivors: tuple[int, ...], pis: list[float], rho_sub
) -> list[float]:
    """One state's winning probabilities by enumerating all action profiles.

    rho_sub(state, player) supplies values of strictly smaller states.
    """
    n = len(survivors)
    if n > MAX_STATE_SIZE:
        raise CapacityError(f"state size {n} exceeds the enumeration limit")
    state = GameState(survivors)
    direct = [0.0] * n
    repeat_mass = 0.0
    full = (1 << n) - 1
    for mask in range(1 << n):
        prob = 1.0
        for k in range(n):
            prob *= pis[k] if mask >> k & 1 else 1.0 - pis[k]
            if prob == 0.0:
                break
        if prob == 0.0:
            continue
        if mask == 0 or mask == full:
            repeat_mass += prob
            continue
        papers = frozenset(survivors[k] for k in range(n) if mask >> k & 1)
        res = resolve_paper_set(state, papers)
        if res.kind is ResolutionKind.WINNER:
            direct[survivors.index(res.winner)] += prob
        elif res.kind is ResolutionKind.SPLIT_TWO:
            for p in res.pair:
                direct[survivors.index(p)] += 0.5 * prob
        else:  # CONTINUE
            sub = res.next_state
            for p in sub.survivors:
                direct[survivors.index(p)] += prob * rho_sub(sub, p)
    remaining = 1.0 - repeat_mass
    if remaining <= 0.0:
        return [1.0 / n] * n
    return [d / remaining for d in direct]


def compute_values(profile: MarkovProfile) -> ValueTable:
    """Exact winning probabilities for every reachable state under a profile."""
    if isinstance(profile, SizeSymmetricProfile):
        by_size: dict[int, float] = {2: 0.5}
        for n in range(3, profile.universe + 1):
            survivors = tuple(range(n))
            pis = [profile.p_by_size[n]] * n
            values = _enumerate_state(
                survivors, pis, lambda s, p: 0.5 if s.size == 2 else by_size[s.size]
            )
            by_size[n] = values[0]  # all players symmetric within the state
        return ValueTable(profile.universe, by_size=by_size)

    if profile.universe > MAX_UNIVERSE:
        raise CapacityError(
            f"universe {profile.universe} exceeds the state-enumeration limit"
        )
    entries: dict[tuple[GameState, int], float] = {}

    def rho_sub(state: GameState, player: int) -> float:
        return 0.5 if state.size == 2 else entries[state, player]

    for state in playable_states(profile.universe):
        pis = _state_probs(profile, state)
        values = _enumerate_state(state.survivors, pis, rho_sub)
        for k, p in enumerate(state.survivors):
            entries[state, p] = values[k]
    return ValueTable(profile.universe, entries=entries)


def _verification_states(profile: MarkovProfile):
    """States that need checking; one representative per size suffices for
    size-symmetric profiles."""
    if isinstance(profile, SizeSymmetricProfile):
        return [GameState(tuple(range(n))) for n in range(3, profile.universe + 1)]
    return list(playable_states(profile.universe))


@dataclass(frozen=True)
class DeviationEntry:
    state: GameState
    player: int
    value_paper: float
    value_rock: float
    profile_value: float
    gain: float
    flagged: bool

    def to_json(self) -> dict:
        return {
            "state": list(self.state.survivors),
            "player": self.player,
            "value_paper": self.value_paper,
            "value_rock": self.value_rock,
            "profile_value": self.profile_value,
            "gain": self.gain,
            "flagged": self.flagged,
        }


@dataclass(frozen=True)
class DeviationReport:
    epsilon: float
    entries: tuple[DeviationEntry, ...]

    @property
    def flagged(self) -> tuple[DeviationEntry, ...]:
        return tuple(e for e in self.entries if e.flagged)

    @property
    def max_gain(self) -> float:
        return max(e.gain for e in self.entries)

    @property
    def is_equilibrium(self) -> bool:
        return not self.flagged

    def to_json(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "is_equilibrium": self.is_equilibrium,
            "max_gain": self.max_gain,
            "flagged": [e.to_json() for e in self.flagged],
            "entries": [e.to_json() for e in self.entries],
        }


def one_shot_values(
    profile: MarkovProfile, values: ValueTable, state: GameState, player: int
) -> tuple[float, float]:
    """Expected payoff of playing paper / rock this round, then following the
    profile, while everyone else follows the profile throughout."""
    survivors = state.survivors
    n = len(survivors)
    if n > MAX_STATE_SIZE:
        raise CapacityError(f"state size {n} exceeds the enumeration limit")
    idx = survivors.index(player)
    others = [k for k in range(n) if k != idx]
    pis = _state_probs(profile, state)
    rho_here = values.rho(state, player)
    value_paper = 0.0
    value_rock = 0.0
    for mask in range(1 << (n - 1)):
        prob = 1.0
        papers = set()
        for bit, k in enumerate(others):
            if mask >> bit & 1:
                prob *= pis[k]
                papers.add(survivors[k])
            else:
                prob *= 1.0 - pis[k]
            if prob == 0.0:
                break
        if prob == 0.0:
            continue
        for own_paper, acc in ((True, "paper"), (False, "rock")):
            own_papers = frozenset(papers | {player}) if own_paper else frozenset(papers)
            res = resolve_paper_set(state, own_papers)
            if res.kind is ResolutionKind.REPEAT:
                payoff = rho_here
            elif res.kind is ResolutionKind.WINNER:
                payoff = 1.0 if res.winner == player else 0.0
            elif res.kind is ResolutionKind.SPLIT_TWO:
                payoff = 0.5 if player in res.pair else 0.0
            else:
                sub = res.next_state
                payoff = values.rho(sub, player) if player in sub else 0.0
            if acc == "paper":
                value_paper += prob * payoff
            else:
                value_rock += prob * payoff
    return value_paper, value_rock


def verify_one_shot(profile: MarkovProfile, epsilon: float = 1e-9) -> DeviationReport:
    """Flag every (state, player) where a single-round deviation gains > epsilon."""
    values = compute_values(profile)
    entries = []
    for state in _verification_states(profile):
        for player in state.survivors:
            vp, vr = one_shot_values(profile, values, state, player)
            rho = values.rho(state, player)
            gain = max(vp, vr) - rho
            entries.append(
                DeviationEntry(
                    state=state,
                    player=player,
                    value_paper=vp,
                    value_rock=vr,
                    profile_value=rho,
                    gain=gain,
                    flagged=gain > epsilon,
                )
            )
    return DeviationReport(epsilon=epsilon, entries=tuple(entries))


@dataclass(frozen=True)
class ResidualEntry:
    state: GameState
    player: int
    lhs: float
    rhs: float
    residual: float
    lam: float

    def to_json(self) -> dict:
        return {
            "state": list(self.state.survivors),
            "player": self.player,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "lambda": self.lam,
        }


@dataclass(frozen=True)
class ResidualReport:
    entries: tuple[ResidualEntry, ...]

    @property
    def max_abs_residual(self) -> float:
        return max(abs(e.residual) for e in self.entries)

    def to_json(self) -> dict:
        return {
            "max_abs_residual": self.max_abs_residual,
            "entries": [e.to_json() for e in self.entries],
        }


def _closed_form_rho(profile: MarkovProfile, state: GameState, player: int) -> float:
    """Winning probability at a state implied by indifference, evaluated from
    the probabilities at that state alone; exact only on an equilibrium."""
    if state.size == 2:
        return 0.5
    others = [p for p in state.survivors if p != player]
    prod_paper = 1.0
    prod_rock = 1.0
    for j in others:
        pj = profile.paper_probability(state, j)
        prod_paper *= pj
        prod_rock *= 1.0 - pj
    return prod_rock / (1.0 - prod_paper)


def residual_entry(
    profile: MarkovProfile, state: GameState, player: int
) -> ResidualEntry:
    survivors = state.survivors
    n = len(survivors)
    others = [p for p in survivors if p != player]
    pis = {j: profile.paper_probability(state, j) for j in others}
    prod_paper = 1.0
    prod_rock = 1.0
    for j in others:
        prod_paper *= pis[j]
        prod_rock *= 1.0 - pis[j]
    # Continuation mass through intermediate survivor sets containing the player.
    lam = 0.0
    m = len(others)
    for mask in range(1, 1 << m):
        chosen = [others[k] for k in range(m) if mask >> k & 1]
        if len(chosen) > n - 3:  # resulting set would exceed size n-2
            continue
        sub = GameState.of([player, *chosen])
        weight = 1.0
        for j in others:
            weight *= (1.0 - pis[j]) if j in sub else pis[j]
        lam += _closed_form_rho(profile, sub, player) * weight
    lhs = prod_rock / (1.0 - prod_paper)
    rhs = (prod_paper + lam) / (1.0 - prod_rock)
    return ResidualEntry(
        state=state, player=player, lhs=lhs, rhs=rhs, residual=lhs - rhs, lam=lam
    )


def residual_system(profile: MarkovProfile) -> ResidualReport:
    """Indifference residuals for every (state, player); zero iff the totally
    mixed profile is an equilibrium."""
    if not profile.is_totally_mixed():
        raise ContractError("residuals are only defined for totally mixed profiles")
    entries = tuple(
        residual_entry(profile, state, player)
        for state in _verification_states(profile)
        for player in state.survivors
    )
    return ResidualReport(entries=entries)
