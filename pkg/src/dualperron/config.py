from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and budgets shared by the direct and Collatz solvers.

    ``tol_s``/``tol_d`` bound the final Collatz bracket gap per part.
    ``kernel_tol`` is the power-iteration tolerance used for the real Perron
    pair, and ``residual_tol`` the largest eigen-residual the direct solver
    accepts. ``seed`` is only consumed by the matrix generators.
    """

    tol_s: float = 1e-10
    tol_d: float = 1e-10
    max_iter: int = 5000
    rate_window: int = 15
    seed: int = 0
    kernel_tol: float = 1e-10
    kernel_max_iter: int = 100_000
    residual_tol: float = 1e-8

    def __post_init__(self):
        if not (self.tol_s > 0 and self.tol_d > 0):
            raise ValueError("tol_s and tol_d must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.rate_window < 2:
            raise ValueError("rate_window must be at least 2")
        if not (self.kernel_tol > 0 and self.residual_tol > 0):
            raise ValueError("kernel_tol and residual_tol must be positive")
