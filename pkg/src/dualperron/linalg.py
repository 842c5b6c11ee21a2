"""Dense dual vectors and square dual matrices.

A dual vector ``x = x_s + x_d eps`` and a dual matrix ``A = A_s + A_d eps``
are stored as pairs of float64 arrays. All products follow from
``eps**2 == 0``: ``(A B)_s = A_s B_s`` and ``(A B)_d = A_s B_d + A_d B_s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import kernels
from .errors import DimensionMismatchError, DualOverflowError, SingularMatrixError, ZeroVectorError
from .scalar import DualNumber

__all__ = [
    "DualVector",
    "DualMatrix",
    "vec_norm2",
    "normalize",
    "matvec",
    "matmul",
    "matpow",
    "matpow_closed_form",
    "iter_powers",
    "inverse",
    "fr_norm",
    "entrywise_max_abs",
]


def _frozen(a, ndim, what):
    arr = np.array(a, dtype=np.float64, order="C", copy=True)
    if arr.ndim != ndim:
        raise DimensionMismatchError(f"{what} must be {ndim}-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} contains non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DualVector:
    s: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        s = _frozen(self.s, 1, "standard part")
        d = _frozen(self.d, 1, "dual part")
        if s.shape != d.shape or s.size == 0:
            raise DimensionMismatchError(f"vector parts must share a length >= 1, got {s.shape} and {d.shape}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "d", d)

    @classmethod
    def real(cls, s):
        s = np.asarray(s, dtype=np.float64)
        return cls(s, np.zeros_like(s))

    @property
    def n(self) -> int:
        return self.s.shape[0]

    @property
    def appreciable(self) -> bool:
        return bool(np.any(self.s != 0.0))

    def __len__(self):
        return self.n

    def __getitem__(self, i) -> DualNumber:
        return DualNumber(self.s[i], self.d[i])

    def __repr__(self):
        return f"DualVector(s={self.s.tolist()}, d={self.d.tolist()})"


@dataclass(frozen=True, eq=False)
class DualMatrix:
    s: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        s = _frozen(self.s, 2, "standard part")
        d = _frozen(self.d, 2, "dual part")
        if s.shape != d.shape or s.shape[0] != s.shape[1] or s.shape[0] == 0:
            raise DimensionMismatchError(f"matrix parts must be equal square shapes, got {s.shape} and {d.shape}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "d", d)

    @classmethod
    def real(cls, s):
        s = np.asarray(s, dtype=np.float64)
        return cls(s, np.zeros_like(s))

    @classmethod
    def identity(cls, n: int):
        return cls(np.eye(n), np.zeros((n, n)))

    @property
    def n(self) -> int:
        return self.s.shape[0]

    def __getitem__(self, ij) -> DualNumber:
        return DualNumber(self.s[ij], self.d[ij])

    def __matmul__(self, other):
        if isinstance(other, DualMatrix):
            return matmul(self, other)
        if isinstance(other, DualVector):
            return matvec(self, other)
        return NotImplemented

    def __repr__(self):
        return f"DualMatrix(s={self.s.tolist()}, d={self.d.tolist()})"


def _norm(a: np.ndarray) -> float:
    # scaled 2-norm: squaring tiny entries must not underflow to zero
    m = float(np.max(np.abs(a))) if a.size else 0.0
    return m * float(np.linalg.norm(a / m)) if m > 0.0 else 0.0


def vec_norm2(x: DualVector) -> DualNumber:
    ns = _norm(x.s)
    if ns != 0.0:
        return DualNumber(ns, float(x.s @ x.d) / ns)
    return DualNumber(_norm(x.d), 0.0)


def normalize(x: DualVector) -> DualVector:
    """Scale ``x`` to a unit dual vector.

    The result satisfies ``||y_s|| = 1`` and ``y_s . y_d = 0``. When ``x_s`` is
    zero the direction comes from ``x_d`` and the dual part is set to zero.
    """
    ns = _norm(x.s)
    if ns != 0.0:
        ys = x.s / ns
        with np.errstate(over="ignore", invalid="ignore"):
            yd = x.d / ns - ys * (ys @ x.d) / ns
        _check_finite(yd)
        return DualVector(ys, yd)
    nd = _norm(x.d)
    if nd == 0.0:
        raise ZeroVectorError("cannot normalize the zero dual vector")
    return DualVector(x.d / nd, np.zeros_like(x.d))


def _check_finite(*arrays):
    for a in arrays:
        if not np.all(np.isfinite(a)):
            raise DualOverflowError("non-finite entries in dual matrix product")


def matvec(A: DualMatrix, x: DualVector) -> DualVector:
    if A.n != x.n:
        raise DimensionMismatchError(f"matrix is {A.n}x{A.n}, vector has length {x.n}")
    ys, yd = kernels.dual_matvec(A.s, A.d, x.s, x.d)
    _check_finite(ys, yd)
    return DualVector(ys, yd)


def matmul(A: DualMatrix, B: DualMatrix) -> DualMatrix:
    if A.n != B.n:
        raise DimensionMismatchError(f"cannot multiply {A.n}x{A.n} by {B.n}x{B.n}")
    Cs, Cd = kernels.dual_matmul(A.s, A.d, B.s, B.d)
    _check_finite(Cs, Cd)
    return DualMatrix(Cs, Cd)


def iter_powers(A: DualMatrix, k_max: int) -> Iterator[DualMatrix]:
    """Yield ``A, A**2, ..., A**k_max`` by repeated dual multiplication."""
    P = A
    for k in range(1, k_max + 1):
        yield P
        if k < k_max:
            P = matmul(P, A)


def matpow(A: DualMatrix, k: int) -> DualMatrix:
    if k < 0:
        raise ValueError(f"power must be nonnegative, got {k}")
    P = DualMatrix.identity(A.n)
    for _ in range(k):
        P = matmul(P, A)
    return P


def matpow_closed_form(A: DualMatrix, k: int) -> DualMatrix:
    """``A**k`` from the expansion ``A_s^k + (sum_p A_s^p A_d A_s^(k-1-p)) eps``.

    Built from real matrix powers only; used to cross-check :func:`matpow`.
    """
    if k < 0:
        raise ValueError(f"power must be nonnegative, got {k}")
    n = A.n
    if k == 0:
        return DualMatrix.identity(n)
    pows = [np.eye(n)]
    for _ in range(k):
        pows.append(pows[-1] @ A.s)
    d = sum(pows[p] @ A.d @ pows[k - 1 - p] for p in range(k))
    _check_finite(pows[k], d)
    return DualMatrix(pows[k], d)


def inverse(A: DualMatrix) -> DualMatrix:
    """``A^{-1} = A_s^{-1} - A_s^{-1} A_d A_s^{-1} eps``.

    ``A_s^{-1}`` comes from partial-pivoting elimination; a pivot below
    ``1e-12`` times the largest entry of ``A_s`` counts as singular.
    """
    inv_s, ok = kernels.gauss_solve(A.s, np.eye(A.n))
    if not ok:
        raise SingularMatrixError("standard part is singular to working precision")
    inv_d = -inv_s @ A.d @ inv_s
    _check_finite(inv_s, inv_d)
    return DualMatrix(inv_s, inv_d)


def fr_norm(A: DualMatrix) -> float:
    """``sqrt(||A_s||_F**2 + ||A_d||_F**2)``; zero exactly when ``A`` is zero."""
    return float(np.hypot(_norm(A.s), _norm(A.d)))


def entrywise_max_abs(A: DualMatrix) -> tuple[float, float]:
    return float(np.max(np.abs(A.s))), float(np.max(np.abs(A.d)))
