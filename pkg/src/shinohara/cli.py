"""Command-line interface.

Subcommands: phi (equilibrium table), simulate (Monte Carlo), verify
(one-shot deviation check), search (totally mixed equilibria), serve (HTTP
play service). Domain and usage errors exit with code 2; verify exits 1
when a profitable deviation exists.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .equilibrium import phi_table, phi_table_csv, phi_table_text
from .game import ContractError
from .montecarlo import run_trials
from .profiles import MarkovProfile, profile_combo
from .search import search_totally_mixed
from .service import NAMED_PROFILES, create_app, resolve_profile_spec
from .values import CapacityError, verify_one_shot


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo_s, hi_s = text.split(":")
        return int(lo_s), int(hi_s)
    except ValueError:
        raise CliError(f"bad range {text!r}; expected like 3:50")


def _load_profile(spec: str, players: int | None) -> MarkovProfile:
    """A profile spec is a named family, combo:<q>, or a JSON file path."""
    if spec in NAMED_PROFILES:
        if players is None:
            raise CliError("--players is required with a named profile")
        return resolve_profile_spec(spec, players)
    if spec.startswith("combo:"):
        if players is None:
            raise CliError("--players is required with a named profile")
        try:
            q = float(spec.split(":", 1)[1])
        except ValueError:
            raise CliError(f"bad combo spec {spec!r}; expected like combo:0.5")
        return profile_combo(players, q)
    path = Path(spec)
    if not path.is_file():
        raise CliError(
            f"profile {spec!r} is neither a known family "
            f"({', '.join(sorted(NAMED_PROFILES))}, combo:<q>) nor a file"
        )
    try:
        profile = MarkovProfile.loads(path.read_text())
    except (json.JSONDecodeError, KeyError, ContractError, ValueError) as exc:
        raise CliError(f"could not parse profile file {spec}: {exc}")
    if players is not None and profile.universe != players:
        raise CliError(
            f"profile universe {profile.universe} does not match --players {players}"
        )
    return profile


def cmd_phi(args) -> int:
    if args.n is not None:
        if args.n < 3:
            raise CliError("--n must be at least 3")
        lo = hi = args.n
    elif args.range is not None:
        lo, hi = _parse_range(args.range)
        if not 3 <= lo <= hi:
            raise CliError("range must satisfy 3 <= lo <= hi")
    else:
        raise CliError("one of --n or --range is required")
    solutions = phi_table(lo, hi)
    if args.format == "csv":
        out = phi_table_csv(solutions)
    elif lo == hi:
        out = f"{solutions[0].phi:.3f}\n"
    else:
        out = phi_table_text(solutions) + "\n"
    sys.stdout.write(out)
    return 0


def cmd_simulate(args) -> int:
    if args.players < 3:
        raise CliError("--players must be at least 3")
    if args.trials < 1:
        raise CliError("--trials must be at least 1")
    profile = _load_profile(args.profile, args.players)
    stats = run_trials(
        profile,
        args.players,
        args.trials,
        args.seed,
        max_rounds=args.max_rounds,
    )
    text = stats.dumps() + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    profile = _load_profile(args.profile, args.players)
    try:
        report = verify_one_shot(profile, epsilon=args.epsilon)
    except CapacityError as exc:
        raise CliError(str(exc))
    sys.stdout.write(json.dumps(report.to_json(), indent=2) + "\n")
    return 0 if report.is_equilibrium else 1


def cmd_search(args) -> int:
    try:
        outcome = search_totally_mixed(args.universe, args.starts, args.seed)
    except ContractError as exc:
        raise CliError(str(exc))
    result = {
        "universe": args.universe,
        "starts": args.starts,
        "seed": args.seed,
        "solutions": [
            {
                "residual_norm": sol.residual_norm,
                "start_index": sol.start_index,
                "profile": sol.profile.to_json(),
            }
            for sol in outcome.solutions
        ],
        "failures": [
            {"start_index": f.start_index, "residual_norm": f.residual_norm}
            for f in outcome.failures
        ],
    }
    sys.stdout.write(json.dumps(result, indent=2) + "\n")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    port = args.port
    if port is None:
        port = int(os.environ.get("SHINOHARA_PORT", "8000"))
    uvicorn.run(create_app(), host=args.host, port=port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shinohara")
    sub = parser.add_subparsers(dest="command", required=True)

    p_phi = sub.add_parser("phi", help="equilibrium paper probabilities")
    p_phi.add_argument("--n", type=int)
    p_phi.add_argument("--range", type=str, help="like 3:50")
    p_phi.add_argument("--format", choices=["text", "csv"], default="text")
    p_phi.set_defaults(func=cmd_phi)

    p_sim = sub.add_parser("simulate", help="Monte Carlo simulation")
    p_sim.add_argument("--players", type=int, required=True)
    p_sim.add_argument("--profile", type=str, default="symmetric")
    p_sim.add_argument("--trials", type=int, required=True)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--max-rounds", type=int, default=10000)
    p_sim.add_argument("--out", type=str)
    p_sim.set_defaults(func=cmd_simulate)

    p_ver = sub.add_parser("verify", help="one-shot deviation check")
    p_ver.add_argument("--profile", type=str, required=True)
    p_ver.add_argument("--players", type=int)
    p_ver.add_argument("--epsilon", type=float, default=1e-9)
    p_ver.set_defaults(func=cmd_verify)

    p_search = sub.add_parser("search", help="search for totally mixed equilibria")
    p_search.add_argument("--universe", type=int, required=True)
    p_search.add_argument("--starts", type=int, required=True)
    p_search.add_argument("--seed", type=int, default=0)
    p_search.set_defaults(func=cmd_search)

    p_serve = sub.add_parser("serve", help="run the HTTP play service")
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.add_argument("--host", type=str, default="127.0.0.1")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ContractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
