import pytest
from fastapi.testclient import TestClient

from shinohara.game import Action, GameState, resolve_round
from shinohara.profiles import profile_symmetric_spe
from shinohara.rng import SplitMix64
from shinohara.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


def create_game(client, players=5, profile="symmetric", seed=42):
    r = client.post(
        "/games", json={"players": players, "bot_profile": profile, "seed": seed}
    )
    assert r.status_code == 201
    return r.json()


class TestCreate:
    def test_create_returns_session(self, client):
        data = create_game(client)
        assert data["state"]["survivors"] == [0, 1, 2, 3, 4]
        assert data["state"]["human_id"] == 0

    def test_too_few_players(self, client):
        r = client.post("/games", json={"players": 2, "bot_profile": "symmetric"})
        assert r.status_code == 422

    def test_unknown_profile(self, client):
        r = client.post("/games", json={"players": 4, "bot_profile": "nope"})
        assert r.status_code == 422

    def test_custom_profile_json(self, client):
        spec = profile_symmetric_spe(4).to_json()
        r = client.post("/games", json={"players": 4, "bot_profile": spec})
        assert r.status_code == 201


class TestAction:
    def test_human_sole_paper_wins(self, client):
        data = create_game(client, players=5, profile="all-rock", seed=1)
        sid = data["session_id"]
        r = client.post(f"/games/{sid}/action", json={"action": "paper"})
        assert r.status_code == 200
        body = r.json()
        assert body["status"] == "finished"
        assert body["payoffs"]["0"] == 1.0
        assert body["round"]["resolution"]["kind"] == "winner"
        assert body["round"]["resolution"]["winner"] == 0

    def test_all_rock_repeats(self, client):
        data = create_game(client, players=4, profile="all-rock", seed=1)
        sid = data["session_id"]
        r = client.post(f"/games/{sid}/action", json={"action": "rock"})
        body = r.json()
        assert body["status"] == "ongoing"
        assert body["round"]["resolution"]["kind"] == "repeat"
        assert body["state"]["survivors"] == [0, 1, 2, 3]

    def test_round_matches_game_core(self, client):
        """The service's resolution must be exactly resolve_round on the
        actions it reports."""
        data = create_game(client, players=6, profile="symmetric", seed=77)
        sid = data["session_id"]
        status = "ongoing"
        while status == "ongoing":
            r = client.post(f"/games/{sid}/action", json={"action": "rock"})
            body = r.json()
            status = body["status"]
            round_ = body["round"]
            state = GameState.of(round_["state"])
            actions = {int(p): Action(a) for p, a in round_["actions"].items()}
            expected = resolve_round(state, actions).to_json()
            assert round_["resolution"] == expected

    def test_deterministic_bot_play(self, client):
        a = create_game(client, players=5, profile="symmetric", seed=42)
        b = create_game(client, players=5, profile="symmetric", seed=42)
        for _ in range(10):
            ra = client.post(f"/games/{a['session_id']}/action", json={"action": "rock"})
            rb = client.post(f"/games/{b['session_id']}/action", json={"action": "rock"})
            assert ra.json() == {**rb.json()}
            if ra.json()["status"] == "finished":
                break

    def test_bots_follow_seeded_stream(self, client):
        """Bot draws replay the session RNG: one uniform per survivor per
        round, ascending id, human draw overridden."""
        seed = 4242
        data = create_game(client, players=4, profile="symmetric", seed=seed)
        sid = data["session_id"]
        r = client.post(f"/games/{sid}/action", json={"action": "rock"})
        actions = r.json()["round"]["actions"]
        rng = SplitMix64(seed)
        profile = profile_symmetric_spe(4)
        state = GameState.full(4)
        expected = {
            p: "paper" if rng.uniform() < profile.paper_probability(state, p) else "rock"
            for p in state.survivors
        }
        expected[0] = "rock"  # human override
        assert actions == {str(p): a for p, a in expected.items()}

    def test_finished_session_rejects_actions(self, client):
        data = create_game(client, players=3, profile="all-rock", seed=5)
        sid = data["session_id"]
        r = client.post(f"/games/{sid}/action", json={"action": "paper"})
        assert r.json()["status"] == "finished"
        r = client.post(f"/games/{sid}/action", json={"action": "rock"})
        assert r.status_code == 409

    def test_unknown_session(self, client):
        assert client.post("/games/zz/action", json={"action": "rock"}).status_code == 404

    def test_invalid_action_body(self, client):
        data = create_game(client)
        sid = data["session_id"]
        r = client.post(f"/games/{sid}/action", json={"action": "scissors"})
        assert r.status_code == 422

    def test_human_elimination_finishes_via_bots(self, client):
        """If the human is eliminated while bots remain, the bots play out
        the game and the session finishes with full payoffs."""
        data = create_game(client, players=5, profile="two-paper", seed=3)
        sid = data["session_id"]
        # Bots: players 0 (human, overridden) and 1 designated paper... human
        # plays paper along with bot 1 -> two papers eliminated, three rocks on.
        r = client.post(f"/games/{sid}/action", json={"action": "paper"})
        body = r.json()
        assert body["status"] == "finished"
        assert body["payoffs"]["0"] == 0.0
        assert sum(body["payoffs"].values()) == pytest.approx(1.0)

    def test_split_at_two_with_human(self, client):
        # Bots 1 and 2 always show paper, bot 3 rock: the human's rock leaves
        # two rocks standing, so the round is a split for players 0 and 3.
        from shinohara.profiles import RoleBasedProfile

        spec = RoleBasedProfile(
            universe=4,
            rule="custom",
            roles_by_size={3: (0.0, 1.0, 1.0), 4: (0.0, 1.0, 1.0, 0.0)},
        ).to_json()
        data = create_game(client, players=4, profile=spec, seed=9)
        sid = data["session_id"]
        r = client.post(f"/games/{sid}/action", json={"action": "rock"})
        body = r.json()
        assert body["status"] == "finished"
        assert body["payoffs"]["0"] == 0.5
        assert body["payoffs"]["3"] == 0.5
        assert body["round"]["resolution"]["kind"] == "split_two"


class TestViews:
    def test_view_reconstructs_history(self, client):
        data = create_game(client, players=5, profile="symmetric", seed=11)
        sid = data["session_id"]
        posted = []
        status = "ongoing"
        while status == "ongoing":
            r = client.post(f"/games/{sid}/action", json={"action": "rock"})
            posted.append(r.json()["round"])
            status = r.json()["status"]
        view = client.get(f"/games/{sid}").json()
        assert view["status"] == "finished"
        # The human-facing rounds appear in order within the full history.
        human_rounds = [h for h in view["history"] if "0" in h["actions"]]
        assert human_rounds == posted

    def test_sessions_are_isolated(self, client):
        a = create_game(client, players=4, profile="symmetric", seed=100)
        b = create_game(client, players=4, profile="symmetric", seed=100)
        # Interleave requests; both sessions must produce identical streams.
        ra1 = client.post(f"/games/{a['session_id']}/action", json={"action": "rock"})
        rb1 = client.post(f"/games/{b['session_id']}/action", json={"action": "rock"})
        assert ra1.json()["round"]["actions"] == rb1.json()["round"]["actions"]

    def test_delete(self, client):
        data = create_game(client)
        sid = data["session_id"]
        assert client.delete(f"/games/{sid}").status_code == 204
        assert client.get(f"/games/{sid}").status_code == 404
        assert client.delete(f"/games/{sid}").status_code == 404


class TestPhiEndpoint:
    def test_value(self, client):
        r = client.get("/phi", params={"n": 5})
        assert r.status_code == 200
        assert r.json()["phi"] == pytest.approx(1 / 3, abs=1e-9)

    def test_too_small(self, client):
        assert client.get("/phi", params={"n": 2}).status_code == 422
