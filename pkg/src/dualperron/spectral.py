"""Real-matrix spectral helpers for primitive nonnegative matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConvergenceError, SingularMatrixError
from .kernels import status

__all__ = ["RealPerron", "SpectralGap", "real_perron", "second_modulus", "solve_bordered"]


@dataclass(frozen=True)
class RealPerron:
    """Perron root with unit right vector ``x`` and left vector ``y`` (``y @ x == 1``)."""

    rho: float
    x: np.ndarray
    y: np.ndarray
    iterations: int
    residual: float


@dataclass(frozen=True)
class SpectralGap:
    sigma: float
    eta: float


def _power(M, tol, max_iter, side):
    rho, x, its, res, code = kernels.power_iteration(np.ascontiguousarray(M, dtype=np.float64), tol, max_iter)
    if code != status.OK:
        raise ConvergenceError(
            f"{side} power iteration stopped after {its} iterations (residual {res:.3e}); "
            "the matrix may be imprimitive or nearly so"
        )
    x = np.array(x)
    if x.sum() < 0:
        x = -x
    return float(rho), x, int(its), float(res)


def real_perron(M, tol: float = 1e-12, max_iter: int = 100_000) -> RealPerron:
    """Perron eigenpair of a primitive matrix by power iteration from the ones vector.

    Iterates until both the Rayleigh-quotient change and the residual
    ``||M x - rho x||`` are at most ``tol``. The left vector is computed the
    same way on ``M.T`` and rescaled so that ``y @ x == 1``; the returned
    root is the two-sided quotient ``y @ M @ x``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    M = np.asarray(M, dtype=np.float64)
    rho, x, its, res = _power(M, tol, max_iter, "right")
    _, y, its_left, _ = _power(M.T, tol, max_iter, "left")
    y = y / (y @ x)
    if x.min() <= 0.0 or y.min() <= 0.0:
        raise ConvergenceError("Perron vectors are not strictly positive; the matrix is not primitive")
    # two-sided quotient: error is the product of the left and right vector errors
    rho = float(y @ M @ x)
    res = float(np.linalg.norm(M @ x - rho * x))
    return RealPerron(rho, x, y, max(its, its_left), res)


def second_modulus(M, perron: RealPerron, tol: float = 1e-12, max_squarings: int = 40) -> SpectralGap:
    """Largest modulus among the non-Perron eigenvalues of ``M / rho``.

    Deflates ``B = M - rho x y^T`` and estimates its spectral radius with the
    Gelfand limit ``||B^(2^m)||_F^(1/2^m)``, squaring repeatedly. Each square
    is rescaled to unit norm and the scale tracked in log space so the
    estimate neither underflows nor overflows.
    """
    M = np.asarray(M, dtype=np.float64)
    B = M - perron.rho * np.outer(perron.x, perron.y)
    nb = np.linalg.norm(B)
    if nb <= 1e-12 * max(np.linalg.norm(M), 1e-300):
        return SpectralGap(0.0, 0.0)
    C = B / nb
    log_norm = math.log(nb)  # log ||B^(2^m)||_F
    est = nb
    for m in range(1, max_squarings + 1):
        C = C @ C
        f = np.linalg.norm(C)
        if f == 0.0:
            return SpectralGap(0.0, 0.0)
        log_norm = 2.0 * log_norm + math.log(f)
        C = C / f
        new = math.exp(log_norm / 2.0 ** m)
        if abs(new - est) <= tol * new:
            est = new
            break
        est = new
    sigma = min(est / perron.rho, 1.0)
    return SpectralGap(sigma, math.sqrt(sigma))


def solve_bordered(M, x, b) -> np.ndarray:
    """Unique ``v`` with ``M v = b`` and ``x @ v = 0``.

    ``M`` is singular with one-dimensional null space spanned by ``x``; the
    bordered matrix ``[[M, x], [x^T, 0]]`` is then nonsingular and the system
    is solved by partial-pivoting elimination.
    """
    M = np.asarray(M, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    n = M.shape[0]
    K = np.zeros((n + 1, n + 1))
    K[:n, :n] = M
    K[:n, n] = x
    K[n, :n] = x
    rhs = np.zeros((n + 1, 1))
    rhs[:n, 0] = b
    sol, ok = kernels.gauss_solve(K, rhs)
    if not ok:
        raise SingularMatrixError("bordered system is singular; the eigenvalue is not simple")
    return sol[:n, 0].copy()
