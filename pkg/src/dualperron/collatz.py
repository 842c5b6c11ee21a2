"""Collatz bracketing iteration for the Perron eigenvalue of a primitive dual matrix.

Starting from a positive vector, the iterate is repeatedly multiplied by
``A`` and renormalised to a unit dual vector. At every step the componentwise
dual ratios ``(A x)_i / x_i`` are formed; their minimum and maximum in the
dual order bracket the Perron eigenvalue from below and above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import kernels
from .config import SolverConfig
from .errors import (
    BracketInversionError,
    ConvergenceError,
    InsufficientDataError,
    NonAppreciableError,
    NotPrimitiveError,
    PreconditionError,
)
from .kernels import status
from .linalg import DualMatrix, DualVector, normalize
from .scalar import DualNumber
from .spectral import real_perron, second_modulus
from .structure import check_primitive

__all__ = [
    "CollatzRecord",
    "CollatzTrace",
    "collatz_solve",
    "bracket_step",
    "estimate_rate",
    "order_violation",
]

UNDERFLOW = 1e-300


class CollatzRecord(NamedTuple):
    lower: DualNumber
    upper: DualNumber
    gap: DualNumber
    iterate: DualVector


@dataclass
class CollatzTrace:
    """Full history of one Collatz run.

    ``lower`` and ``upper`` have shape ``(K, 2)`` with columns (standard,
    dual); row ``k`` holds the brackets computed from iterate ``x^k``, whose
    parts are rows of ``iterates_s`` / ``iterates_d``.
    """

    lower: np.ndarray
    upper: np.ndarray
    iterates_s: np.ndarray
    iterates_d: np.ndarray
    converged: bool
    final_lambda: DualNumber
    fitted_rate_s: float = math.nan
    fitted_rate_d: float = math.nan
    eta_theoretical: float = math.nan

    @property
    def iterations(self) -> int:
        return self.lower.shape[0]

    def __len__(self):
        return self.iterations

    @property
    def gap(self) -> np.ndarray:
        return self.upper - self.lower

    def record(self, k: int) -> CollatzRecord:
        lo = DualNumber(*self.lower[k])
        up = DualNumber(*self.upper[k])
        return CollatzRecord(lo, up, DualNumber(*self.gap[k]), DualVector(self.iterates_s[k], self.iterates_d[k]))

    def records(self):
        return [self.record(k) for k in range(self.iterations)]


def order_violation(a, b, tol: float) -> bool:
    """True if ``a <= b`` fails in the dual order by more than ``tol``.

    ``a`` and ``b`` are DualNumbers or ``(s, d)`` pairs. A standard-part
    excess of at most ``tol`` is treated as rounding; when the standard parts
    are exactly equal the dual parts decide, again with slack ``tol``.
    """
    a_s, a_d = (a.s, a.d) if isinstance(a, DualNumber) else a
    b_s, b_d = (b.s, b.d) if isinstance(b, DualNumber) else b
    if a_s != b_s:
        return a_s - b_s > tol
    return a_d - b_d > tol


def bracket_step(A: DualMatrix, x: DualVector) -> tuple[DualNumber, DualNumber]:
    """Dual-order min and max of the ratios ``(A x)_i / x_i``."""
    if A.n != x.n:
        raise ValueError(f"matrix is {A.n}x{A.n}, vector has length {x.n}")
    if np.any(x.s == 0.0):
        raise NonAppreciableError("every iterate component needs a nonzero standard part")
    ys, yd = kernels.dual_matvec(A.s, A.d, x.s, x.d)
    rs = ys / x.s
    rd = yd / x.s - ys * x.d / (x.s * x.s)
    order = np.lexsort((rd, rs))
    lo, hi = order[0], order[-1]
    return DualNumber(rs[lo], rd[lo]), DualNumber(rs[hi], rd[hi])


def _fit(values: np.ndarray) -> float:
    k = np.arange(values.shape[0], dtype=np.float64)
    keep = values >= UNDERFLOW
    if keep.sum() < 2:
        return math.nan
    slope = np.polyfit(k[keep], np.log(values[keep]), 1)[0]
    return float(math.exp(slope))


def estimate_rate(trace, window: int = 15) -> tuple[float, float]:
    """Per-iteration contraction factors of the bracket gap.

    Fits ``log(gap_s)`` and ``log|gap_d|`` against ``k`` by least squares over
    the trailing ``window`` iterations and returns ``exp(slope)`` for each.
    Entries below 1e-300 are left out of the fit; a component with fewer than
    two usable points gets NaN.

    ``trace`` may be a :class:`CollatzTrace` or an array of gaps with shape
    ``(K, 2)``.
    """
    gap = trace.gap if isinstance(trace, CollatzTrace) else np.asarray(trace, dtype=np.float64)
    if window < 2:
        raise ValueError("window must be at least 2")
    if gap.ndim != 2 or gap.shape[0] < window:
        raise InsufficientDataError(f"need at least {window} iterations, have {gap.shape[0] if gap.ndim else 0}")
    tail = gap[-window:]
    return _fit(np.abs(tail[:, 0])), _fit(np.abs(tail[:, 1]))


def collatz_solve(
    A: DualMatrix,
    x0=None,
    cfg: Optional[SolverConfig] = None,
    *,
    x0_dual=None,
    allow_dual_start: bool = False,
    compute_eta: bool = True,
) -> CollatzTrace:
    """Run the Collatz iteration until both bracket-gap parts are within tolerance.

    Parameters
    ----------
    A : DualMatrix
        Primitive dual matrix.
    x0 : array_like, optional
        Strictly positive real start vector (default: all ones). It is
        normalised before the first step, which leaves every bracket unchanged.
    cfg : SolverConfig, optional
    x0_dual : array_like, optional
        Dual part of the start vector; only accepted with
        ``allow_dual_start=True``. Convergence-rate guarantees assume a real
        start, so this mode is experimental.
    compute_eta : bool
        Whether to compute the theoretical rate ``sqrt(sigma)`` for the trace.

    Returns
    -------
    CollatzTrace
        ``converged`` is False when ``cfg.max_iter`` updates were not enough.
    """
    cfg = cfg or SolverConfig()
    n = A.n
    if not check_primitive(A).primitive:
        raise NotPrimitiveError("standard part is not primitive")
    x0 = np.ones(n) if x0 is None else np.asarray(x0, dtype=np.float64)
    if x0.shape != (n,):
        raise PreconditionError(f"start vector must have length {n}")
    if not np.all(x0 > 0):
        raise PreconditionError("start vector must be strictly positive")
    if x0_dual is not None and not allow_dual_start:
        raise PreconditionError("a dual start vector needs allow_dual_start=True")
    xd0 = np.zeros(n) if x0_dual is None else np.asarray(x0_dual, dtype=np.float64)
    start = normalize(DualVector(x0, xd0))

    lower, upper, its_s, its_d, count, code = kernels.collatz_loop(
        A.s, A.d, np.array(start.s), np.array(start.d), float(cfg.tol_s), float(cfg.tol_d), int(cfg.max_iter)
    )
    if code == status.NON_APPRECIABLE:
        raise NonAppreciableError(f"iterate {count} has a zero standard-part component")
    if code == status.BRACKET_INVERSION:
        raise BracketInversionError(f"lower bracket exceeded upper bracket at iteration {count - 1}")
    if code == status.DEGENERATE:
        raise ConvergenceError(f"iterate vanished or overflowed at iteration {count}")

    lower, upper = np.array(lower[:count]), np.array(upper[:count])
    final = DualNumber(0.5 * (lower[-1, 0] + upper[-1, 0]), 0.5 * (lower[-1, 1] + upper[-1, 1]))
    trace = CollatzTrace(
        lower=lower,
        upper=upper,
        iterates_s=np.array(its_s[:count]),
        iterates_d=np.array(its_d[:count]),
        converged=code == status.OK,
        final_lambda=final,
    )
    window = min(cfg.rate_window, count)
    if window >= 3:
        trace.fitted_rate_s, trace.fitted_rate_d = estimate_rate(trace, window)
    if compute_eta:
        rp = real_perron(A.s, tol=cfg.kernel_tol, max_iter=cfg.kernel_max_iter)
        trace.eta_theoretical = second_modulus(A.s, rp).eta
    return trace
