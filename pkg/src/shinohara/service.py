"""JSON-over-HTTP session service for human-vs-bots play.

The human is always player 0. Each round the service draws an action for
every survivor from the bot profile using the session's RNG, then replaces
the human's draw with the posted action, so a fixed seed gives reproducible
bot play. Round resolution goes through game.resolve_round, the same code
the rest of the toolkit uses.
"""

from __future__ import annotations

import secrets
import threading
import uuid
from dataclasses import dataclass, field
from typing import Literal

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .equilibrium import solve_phi
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
    profile_all_rock,
    profile_one_paper,
    profile_symmetric_spe,
    profile_two_paper,
)
from .rng import SplitMix64

SESSION_ROUND_CAP = 10000

NAMED_PROFILES = {
    "symmetric": profile_symmetric_spe,
    "one-paper": profile_one_paper,
    "two-paper": profile_two_paper,
    "all-rock": profile_all_rock,
}


def resolve_profile_spec(spec: str | dict, universe: int) -> MarkovProfile:
    """Turn a named family or a serialized profile into a MarkovProfile."""
    if isinstance(spec, str):
        factory = NAMED_PROFILES.get(spec)
        if factory is None:
            raise ContractError(
                f"unknown profile {spec!r}; expected one of {sorted(NAMED_PROFILES)}"
            )
        return factory(universe)
    profile = MarkovProfile.from_json(spec)
    if profile.universe != universe:
        raise ContractError(
            f"profile universe {profile.universe} does not match players {universe}"
        )
    return profile


@dataclass
class RoundEntry:
    state: GameState
    actions: dict[int, Action]
    resolution: RoundResolution

    def to_json(self) -> dict:
        return {
            "state": list(self.state.survivors),
            "actions": {str(p): a.value for p, a in sorted(self.actions.items())},
            "resolution": self.resolution.to_json(),
            "eliminated": list(self.resolution.eliminated),
        }


@dataclass
class GameSession:
    session_id: str
    universe: int
    profile: MarkovProfile
    seed: int
    rng: SplitMix64
    state: GameState
    human: int = 0
    status: str = "ongoing"
    history: list[RoundEntry] = field(default_factory=list)
    payoffs: dict[int, float] | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)

    def view(self) -> dict:
        return {
            "session_id": self.session_id,
            "universe": self.universe,
            "human_id": self.human,
            "state": {"survivors": list(self.state.survivors), "human_id": self.human},
            "status": self.status,
            "round_count": len(self.history),
            "history": [entry.to_json() for entry in self.history],
            "payoffs": None
            if self.payoffs is None
            else {str(p): v for p, v in sorted(self.payoffs.items())},
        }


class CreateGameBody(BaseModel):
    players: int = Field(ge=3)
    bot_profile: str | dict = "symmetric"
    seed: int | None = None


class ActionBody(BaseModel):
    action: Literal["rock", "paper"]


def _finish(session: GameSession, payoffs: dict[int, float]):
    session.status = "finished"
    session.payoffs = {p: payoffs.get(p, 0.0) for p in range(session.universe)}


def _play_round(session: GameSession, human_action: Action | None) -> RoundEntry:
    """Play one model round; bots draw from the profile, the human's draw is
    replaced by the posted action when given."""
    state = session.state
    actions: dict[int, Action] = {}
    for p in state.survivors:
        u = session.rng.uniform()
        actions[p] = (
            Action.PAPER
            if u < session.profile.paper_probability(state, p)
            else Action.ROCK
        )
    if human_action is not None and session.human in state:
        actions[session.human] = human_action
    resolution = resolve_round(state, actions)
    entry = RoundEntry(state=state, actions=actions, resolution=resolution)
    session.history.append(entry)
    payoffs = terminal_payoffs(resolution, state)
    if payoffs is not None:
        _finish(session, {p: float(v) for p, v in payoffs.items()})
    elif resolution.kind is ResolutionKind.CONTINUE:
        session.state = resolution.next_state
    if session.status == "ongoing" and len(session.history) >= SESSION_ROUND_CAP:
        _finish(
            session,
            {p: float(v) for p, v in infinite_history_payoffs(session.state).items()},
        )
    return entry


def create_app() -> FastAPI:
    app = FastAPI(title="shinohara play service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, GameSession] = {}
    store_lock = threading.Lock()

    def get_session(session_id: str) -> GameSession:
        with store_lock:
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return session

    @app.post("/games", status_code=201)
    def create_game(body: CreateGameBody):
        try:
            profile = resolve_profile_spec(body.bot_profile, body.players)
        except ContractError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        seed = body.seed if body.seed is not None else secrets.randbits(64)
        session = GameSession(
            session_id=uuid.uuid4().hex,
            universe=body.players,
            profile=profile,
            seed=seed,
            rng=SplitMix64(seed),
            state=GameState.full(body.players),
        )
        with store_lock:
            sessions[session.session_id] = session
        return {
            "session_id": session.session_id,
            "state": {
                "survivors": list(session.state.survivors),
                "human_id": session.human,
            },
        }

    @app.post("/games/{session_id}/action")
    def post_action(session_id: str, body: ActionBody):
        session = get_session(session_id)
        with session.lock:
            if session.status != "ongoing":
                raise HTTPException(status_code=409, detail="session already finished")
            entry = _play_round(session, Action(body.action))
            # If the human went out but play continues, let the bots finish.
            while session.status == "ongoing" and session.human not in session.state:
                _play_round(session, None)
            response = {
                "round": entry.to_json(),
                "state": {
                    "survivors": list(session.state.survivors),
                    "human_id": session.human,
                },
                "status": session.status,
            }
            if session.payoffs is not None:
                response["payoffs"] = {
                    str(p): v for p, v in sorted(session.payoffs.items())
                }
            return response

    @app.get("/games/{session_id}")
    def get_game(session_id: str):
        session = get_session(session_id)
        with session.lock:
            return session.view()

    @app.delete("/games/{session_id}", status_code=204)
    def delete_game(session_id: str):
        with store_lock:
            if session_id not in sessions:
                raise HTTPException(status_code=404, detail="unknown session")
            del sessions[session_id]
        return Response(status_code=204)

    @app.get("/phi")
    def get_phi(n: int):
        if n < 3:
            raise HTTPException(status_code=422, detail="n must be at least 3")
        return {"n": n, "phi": solve_phi(n).phi}

    return app
