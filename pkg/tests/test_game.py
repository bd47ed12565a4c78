import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shinohara.game import (
    Action,
    ContractError,
    GameState,
    ResolutionKind,
    infinite_history_payoffs,
    resolve_round,
    terminal_payoffs,
)

R, P = Action.ROCK, Action.PAPER


def make_actions(*vals):
    return {i + 1: v for i, v in enumerate(vals)}


def state_of(n):
    return GameState.of(range(1, n + 1))


class TestResolveRound:
    def test_all_rock_repeats(self):
        res = resolve_round(state_of(3), make_actions(R, R, R))
        assert res.kind is ResolutionKind.REPEAT

    def test_all_paper_repeats(self):
        res = resolve_round(state_of(4), make_actions(P, P, P, P))
        assert res.kind is ResolutionKind.REPEAT

    def test_sole_paper_wins(self):
        res = resolve_round(state_of(3), make_actions(P, R, R))
        assert res.kind is ResolutionKind.WINNER
        assert res.winner == 1

    def test_sole_rock_wins(self):
        res = resolve_round(state_of(3), make_actions(P, P, R))
        assert res.kind is ResolutionKind.WINNER
        assert res.winner == 3

    def test_split_at_two(self):
        res = resolve_round(state_of(5), make_actions(P, P, P, R, R))
        assert res.kind is ResolutionKind.SPLIT_TWO
        assert res.pair == (4, 5)
        assert res.eliminated == (1, 2, 3)

    def test_continue_with_four(self):
        res = resolve_round(state_of(6), make_actions(P, P, R, R, R, R))
        assert res.kind is ResolutionKind.CONTINUE
        assert res.next_state.survivors == (3, 4, 5, 6)
        assert res.eliminated == (1, 2)

    def test_missing_player_rejected(self):
        with pytest.raises(ContractError):
            resolve_round(state_of(3), {1: R, 2: R})

    def test_extra_player_rejected(self):
        with pytest.raises(ContractError):
            resolve_round(state_of(3), make_actions(R, R, R, R))

    def test_two_player_state_rejected(self):
        with pytest.raises(ContractError):
            resolve_round(GameState.of([1, 2]), {1: R, 2: P})


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_exactly_one_case_applies(n):
    """The four round-outcome cases partition all 2^n action maps."""
    state = state_of(n)
    for combo in itertools.product([R, P], repeat=n):
        actions = make_actions(*combo)
        papers = sum(a is P for a in combo)
        res = resolve_round(state, actions)
        if papers == 0 or papers == n:
            expected = ResolutionKind.REPEAT
        elif papers == 1 or papers == n - 1:
            expected = ResolutionKind.WINNER
        elif n - papers == 2:
            expected = ResolutionKind.SPLIT_TWO
        else:
            expected = ResolutionKind.CONTINUE
        assert res.kind is expected
        # Eliminated and survivors always partition the input state.
        if res.kind is ResolutionKind.CONTINUE:
            assert set(res.eliminated) | set(res.next_state.survivors) == set(state)
            assert set(res.eliminated).isdisjoint(res.next_state.survivors)
        if res.kind is ResolutionKind.SPLIT_TWO:
            assert set(res.eliminated) | set(res.pair) == set(state)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_continue_shrinks_by_at_least_two(n):
    state = state_of(n)
    for combo in itertools.product([R, P], repeat=n):
        res = resolve_round(state, make_actions(*combo))
        if res.kind is ResolutionKind.CONTINUE:
            assert res.next_state.size >= 3
            assert res.next_state.size <= n - 2


def test_three_players_never_continue_or_split():
    state = state_of(3)
    for combo in itertools.product([R, P], repeat=3):
        res = resolve_round(state, make_actions(*combo))
        assert res.kind in (ResolutionKind.REPEAT, ResolutionKind.WINNER)


class TestTerminalPayoffs:
    def test_winner_indicator(self):
        state = state_of(4)
        res = resolve_round(state, make_actions(P, P, R, P))
        payoffs = terminal_payoffs(res, state)
        assert payoffs == {1: 0, 2: 0, 3: 1, 4: 0}

    def test_split_two_half_each(self):
        state = GameState.of([1, 2, 3, 5, 6])
        res = resolve_round(state, {1: P, 2: R, 3: P, 5: R, 6: P})
        payoffs = terminal_payoffs(res, state)
        assert payoffs[2] == Fraction(1, 2)
        assert payoffs[5] == Fraction(1, 2)
        assert sum(payoffs.values()) == 1

    def test_nonterminal_has_no_payoffs(self):
        state = state_of(6)
        res = resolve_round(state, make_actions(P, P, R, R, R, R))
        assert terminal_payoffs(res, state) is None
        res = resolve_round(state, make_actions(R, R, R, R, R, R))
        assert terminal_payoffs(res, state) is None


@given(st.integers(3, 7), st.data())
def test_payoffs_sum_to_one(n, data):
    combo = data.draw(st.tuples(*[st.sampled_from([R, P])] * n))
    state = state_of(n)
    res = resolve_round(state, make_actions(*combo))
    payoffs = terminal_payoffs(res, state)
    if payoffs is not None:
        assert sum(payoffs.values()) == 1


def test_infinite_history_payoffs():
    payoffs = infinite_history_payoffs(state_of(3))
    assert payoffs == {1: Fraction(1, 3), 2: Fraction(1, 3), 3: Fraction(1, 3)}
    assert sum(payoffs.values()) == 1


def test_state_canonicalization():
    assert GameState.of([3, 1, 2]).survivors == (1, 2, 3)
    assert GameState.of([2, 2, 5]).survivors == (2, 5)
    with pytest.raises(ContractError):
        GameState.of([])
    assert GameState.of([1, 2]).is_terminal
    assert not GameState.of([1, 2, 3]).is_terminal
