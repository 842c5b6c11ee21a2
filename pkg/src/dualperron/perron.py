"""Closed-form Perron eigenpair of a primitive dual matrix.

The standard parts come from the real Perron pair of ``A_s``. The dual part
of the eigenvalue is ``y_s^T A_d x_s / y_s^T x_s`` and the dual part of the
eigenvector solves ``(A_s - lam_s I) x_d = (lam_d I - A_d) x_s`` under the
unit-norm constraint ``x_s^T x_d = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import SolverConfig
from .errors import ConvergenceError, NonAppreciableError, NotPrimitiveError, PreconditionError
from .linalg import DualMatrix, DualVector
from .scalar import DualNumber
from .spectral import RealPerron, real_perron, solve_bordered
from .structure import check_primitive

__all__ = ["PerronResult", "perron_eigenpair", "eigen_residual", "lambda_d_fd_oracle"]


@dataclass(frozen=True)
class PerronResult:
    lam: DualNumber
    x: DualVector
    y: Optional[DualVector]
    residual_s: float
    residual_d: float
    real: RealPerron

    @property
    def lambda_(self) -> DualNumber:
        return self.lam


def eigen_residual(A: DualMatrix, lam: DualNumber, x: DualVector) -> tuple[float, float]:
    """Norms of the standard and dual levels of ``A x - lam x``."""
    if not x.appreciable:
        raise NonAppreciableError("eigenvector must have a nonzero standard part")
    rs = A.s @ x.s - lam.s * x.s
    rd = A.s @ x.d + A.d @ x.s - lam.s * x.d - lam.d * x.s
    return float(np.linalg.norm(rs)), float(np.linalg.norm(rd))


def _right_pair(A: DualMatrix, cfg: SolverConfig):
    rp = real_perron(A.s, tol=cfg.kernel_tol, max_iter=cfg.kernel_max_iter)
    xs, ys = rp.x, rp.y
    # ys is scaled so ys @ xs == 1; the quotient is kept in full for clarity
    lam_d = float(ys @ A.d @ xs) / float(ys @ xs)
    lam = DualNumber(rp.rho, lam_d)
    rhs = lam_d * xs - A.d @ xs
    xd = solve_bordered(A.s - rp.rho * np.eye(A.n), xs, rhs)
    return rp, lam, DualVector(xs, xd)


def perron_eigenpair(A: DualMatrix, cfg: Optional[SolverConfig] = None, *, left: bool = False) -> PerronResult:
    """Perron eigenvalue ``lam`` and unit eigenvector ``x`` of a primitive dual matrix.

    With ``left=True`` the left Perron vector (the Perron vector of ``A^T``,
    normalised the same way) is returned as well.

    Raises
    ------
    NotPrimitiveError
        If ``A_s`` is not primitive.
    ConvergenceError
        If the eigen-residuals exceed ``cfg.residual_tol`` or the real kernel
        fails to converge.
    """
    cfg = cfg or SolverConfig()
    if not check_primitive(A).primitive:
        raise NotPrimitiveError("standard part is not primitive")
    rp, lam, x = _right_pair(A, cfg)
    res_s, res_d = eigen_residual(A, lam, x)
    if res_s > cfg.residual_tol or res_d > cfg.residual_tol:
        raise ConvergenceError(f"eigen-residuals ({res_s:.3e}, {res_d:.3e}) exceed {cfg.residual_tol:.1e}")
    y = None
    if left:
        _, _, y = _right_pair(DualMatrix(A.s.T, A.d.T), cfg)
    return PerronResult(lam, x, y, res_s, res_d, rp)


def lambda_d_fd_oracle(A: DualMatrix, t: float = 1e-6, tol: float = 1e-12) -> float:
    """Forward difference ``(rho(A_s + t A_d) - rho(A_s)) / t``.

    Independent of the closed-form dual eigenvalue: it only calls the real
    Perron kernel twice.
    """
    if not t > 0:
        raise ValueError("t must be positive")
    shifted = DualMatrix(A.s + t * A.d, np.zeros_like(A.s))
    if not check_primitive(A).primitive:
        raise NotPrimitiveError("standard part is not primitive")
    if not check_primitive(shifted).primitive:
        raise PreconditionError(f"A_s + {t:g} A_d is not nonnegative primitive")
    rho0 = real_perron(A.s, tol=tol).rho
    rho1 = real_perron(shifted.s, tol=tol).rho
    return (rho1 - rho0) / t
