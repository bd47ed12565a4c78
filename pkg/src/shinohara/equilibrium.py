"""Symmetric-equilibrium paper probability.

With n survivors, the indifference condition for the symmetric mixed
equilibrium is

    (1 - p)^(n-1) + p^(n-1) / n = 1/n

whose unique root in (0, 1) we call phi(n). Root-finding uses the factored
form

    (1 - p)^(n-2) / (1 + p + ... + p^(n-2)) = 1/n

which drops the spurious root at p = 1 and is strictly decreasing in p, so
bisection is guaranteed to converge.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

from .game import ContractError

BRACKET_TOL = 1e-14
MAX_ITERATIONS = 200


@dataclass(frozen=True)
class PhiSolution:
    n: int
    phi: float
    residual: float
    iterations: int


def eq1_residual(p: float, n: int) -> float:
    """Residual of the raw indifference equation: (1-p)^(n-1) + p^(n-1)/n - 1/n."""
    if n < 3:
        raise ContractError("need at least three players")
    return (1.0 - p) ** (n - 1) + p ** (n - 1) / n - 1.0 / n


def eq2_lhs(p: float, n: int) -> float:
    """Left side of the factored equation, strictly decreasing on [0, 1)."""
    if n < 3:
        raise ContractError("need at least three players")
    if not 0.0 <= p < 1.0:
        raise ContractError("p must lie in [0, 1)")
    geometric = sum(p**k for k in range(n - 1))  # 1 + p + ... + p^(n-2)
    return (1.0 - p) ** (n - 2) / geometric


def solve_phi(n: int) -> PhiSolution:
    """Bisect the factored equation for the unique root in (0, 1)."""
    if n < 3:
        raise ContractError("need at least three players")
    target = 1.0 / n
    lo, hi = 0.0, 1.0 - 1e-6  # lhs(0) = 1 > 1/n; lhs near 1 ~ eps^(n-2)/(n-1) < 1/n
    iterations = 0
    while hi - lo > BRACKET_TOL and iterations < MAX_ITERATIONS:
        mid = 0.5 * (lo + hi)
        if eq2_lhs(mid, n) > target:
            lo = mid
        else:
            hi = mid
        iterations += 1
    phi = 0.5 * (lo + hi)
    return PhiSolution(n=n, phi=phi, residual=eq1_residual(phi, n), iterations=iterations)


def phi_table(n_min: int, n_max: int) -> list[PhiSolution]:
    """One solution per player count in [n_min, n_max]."""
    if not 3 <= n_min <= n_max:
        raise ContractError("range must satisfy 3 <= n_min <= n_max")
    return [solve_phi(n) for n in range(n_min, n_max + 1)]


def phi_table_csv(solutions: list[PhiSolution]) -> str:
    """CSV with header `n,phi`, phi at 6 decimals."""
    buf = io.StringIO()
    buf.write("n,phi\n")
    for sol in solutions:
        buf.write(f"{sol.n},{sol.phi:.6f}\n")
    return buf.getvalue()


def phi_table_text(solutions: list[PhiSolution]) -> str:
    """Human-readable layout: blocks of up to ten columns, 3 decimals."""
    lines = []
    for start in range(0, len(solutions), 10):
        block = solutions[start : start + 10]
        lines.append("n    " + "  ".join(f"{s.n:>5d}" for s in block))
        lines.append("phi  " + "  ".join(f"{s.phi:>5.3f}" for s in block))
    return "\n".join(lines)
