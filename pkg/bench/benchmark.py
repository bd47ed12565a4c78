#!/usr/bin/env python3
"""Compare the compiled and pure-Python Monte Carlo backends.

Runs identical seeded workloads through both trial loops, checks the
results are bit-identical, and reports throughput.
"""

import argparse
import time

from shinohara.montecarlo import HAVE_KERNEL, run_trials
from shinohara.profiles import profile_combo, profile_symmetric_spe


def bench(profile, universe, trials, seed, backend):
    start = time.perf_counter()
    stats = run_trials(profile, universe, trials, master_seed=seed, backend=backend)
    elapsed = time.perf_counter() - start
    return stats, elapsed


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--trials", type=int, default=200000)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    if not HAVE_KERNEL:
        raise SystemExit("compiled kernel not built; nothing to compare")

    workloads = [
        ("symmetric, 5 players", profile_symmetric_spe(5), 5),
        ("symmetric, 20 players", profile_symmetric_spe(20), 20),
        ("combo q=0.4, 6 players", profile_combo(6, 0.4), 6),
    ]
    for name, profile, universe in workloads:
        fast, t_fast = bench(profile, universe, args.trials, args.seed, "cython")
        slow, t_slow = bench(profile, universe, args.trials, args.seed, "python")
        identical = fast == slow
        print(
            f"{name}: cython {args.trials / t_fast:,.0f} games/s, "
            f"python {args.trials / t_slow:,.0f} games/s, "
            f"speedup {t_slow / t_fast:.1f}x, identical={identical}"
        )
        if not identical:
            raise SystemExit(f"backend mismatch on workload: {name}")


if __name__ == "__main__":
    main()
