# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled trial loop for run_trials.

Mirrors shinohara.montecarlo._simulate_compact / _run_trials_python exactly:
same SplitMix64 streams, same sampling order, same accumulation order, so the
two backends return bit-identical statistics.
"""

from libc.stdint cimport int64_t, uint64_t

import numpy as np


cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15u


cdef inline uint64_t _finalize(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9u
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBu
    return z ^ (z >> 31)


cdef inline uint64_t _mix64(uint64_t a, uint64_t b) noexcept nogil:
    return _finalize(a + GOLDEN * (b + 1))


cdef inline double _uniform(uint64_t* state) noexcept nogil:
    state[0] = state[0] + GOLDEN
    return <double> (_finalize(state[0]) >> 11) * (1.0 / 9007199254740992.0)


def run_trials_kernel(
    double[:, ::1] probs,
    int universe,
    int trials,
    uint64_t master_seed,
    int max_rounds,
):
    """Simulate `trials` seeded games; probs[n, k] is the paper probability
    of the k-th lowest surviving player when n players remain."""
    payoff_np = np.zeros(universe, dtype=np.float64)
    wins_np = np.zeros(universe, dtype=np.int64)
    hist_np = np.zeros(max_rounds + 1, dtype=np.int64)
    surv_np = np.zeros(universe, dtype=np.int32)
    papers_np = np.zeros(universe, dtype=np.int32)
    rocks_np = np.zeros(universe, dtype=np.int32)

    cdef double[::1] payoff = payoff_np
    cdef int64_t[::1] wins = wins_np
    cdef int64_t[::1] hist = hist_np
    cdef int[::1] surv = surv_np
    cdef int[::1] papers = papers_np
    cdef int[::1] rocks = rocks_np

    cdef int64_t repeat_total = 0
    cdef int64_t trunc_total = 0
    cdef uint64_t s
    cdef int t, k, n, npp, nrr, rounds, repeats, winner, split0, split1
    cdef bint truncated
    cdef double u, share

    with nogil:
        for t in range(trials):
            s = _mix64(master_seed, <uint64_t> t)
            n = universe
            for k in range(n):
                surv[k] = k
            rounds = 0
            repeats = 0
            winner = -1
            split0 = -1
            split1 = -1
            truncated = 0
            while True:
                if rounds >= max_rounds:
                    truncated = 1
                    break
                npp = 0
                nrr = 0
                for k in range(n):
                    u = _uniform(&s)
                    if u < probs[n, k]:
                        papers[npp] = surv[k]
                        npp += 1
                    else:
                        rocks[nrr] = surv[k]
                        nrr += 1
                rounds += 1
                if npp == 0 or nrr == 0:
                    repeats += 1
                    continue
                if npp == 1:
                    winner = papers[0]
                    break
                if nrr == 1:
                    winner = rocks[0]
                    break
                if nrr == 2:
                    split0 = rocks[0]
                    split1 = rocks[1]
                    break
                for k in range(nrr):
                    surv[k] = rocks[k]
                n = nrr
            hist[rounds] += 1
            repeat_total += repeats
            if truncated:
                trunc_total += 1
                share = 1.0 / n
                for k in range(n):
                    payoff[surv[k]] += share
            elif winner >= 0:
                payoff[winner] += 1.0
                wins[winner] += 1
            else:
                payoff[split0] += 0.5
                payoff[split1] += 0.5

    return payoff_np, wins_np, hist_np, int(repeat_total), int(trunc_total)
