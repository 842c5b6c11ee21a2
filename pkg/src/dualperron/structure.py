"""Sign-pattern classification of the standard part of a dual matrix."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .errors import NegativeEntryError, NotIrreducibleError
from .linalg import DualMatrix

__all__ = [
    "StructureReport",
    "wielandt_bound",
    "check_nonnegative",
    "check_irreducible",
    "check_primitive",
    "shift_to_primitive",
]


@dataclass(frozen=True)
class StructureReport:
    nonnegative: bool
    irreducible: bool
    primitive: bool
    wielandt_exponent_bound: int
    witness_k: Optional[int] = None

    def as_dict(self):
        return {
            "nonnegative": self.nonnegative,
            "irreducible": self.irreducible,
            "primitive": self.primitive,
            "wielandt_exponent_bound": self.wielandt_exponent_bound,
            "witness_k": self.witness_k,
        }


def wielandt_bound(n: int) -> int:
    return (n - 1) ** 2 + 1


def check_nonnegative(A: DualMatrix) -> bool:
    # the dual part is unconstrained
    return bool(np.all(A.s >= 0.0))


def _reaches_all(adj: np.ndarray) -> bool:
    n = adj.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in np.flatnonzero(adj[i] & ~seen):
            seen[j] = True
            queue.append(j)
    return bool(seen.all())


def check_irreducible(A: DualMatrix) -> bool:
    """Strong connectivity of the digraph with an edge ``i -> j`` iff ``A_s[i, j] > 0``.

    Two breadth-first passes from node 0, one on the graph and one on its
    reverse. A 1x1 matrix counts as irreducible only when its entry is positive.
    """
    if not check_nonnegative(A):
        raise NegativeEntryError("irreducibility is defined here for nonnegative standard parts only")
    adj = A.s > 0.0
    if A.n == 1:
        return bool(adj[0, 0])
    return _reaches_all(adj) and _reaches_all(adj.T.copy())


def check_primitive(A: DualMatrix) -> StructureReport:
    n = A.n
    bound = wielandt_bound(n)
    if not check_nonnegative(A):
        return StructureReport(False, False, False, bound, None)
    irreducible = check_irreducible(A)
    if not irreducible:
        return StructureReport(True, False, False, bound, None)
    k = int(kernels.primitive_witness(A.s, bound))
    if k == 0:
        return StructureReport(True, True, False, bound, None)
    return StructureReport(True, True, True, bound, k)


def shift_to_primitive(A: DualMatrix, beta: float = 1.0) -> DualMatrix:
    """Return ``(A_s + beta I) + A_d eps``, primitive for irreducible nonnegative ``A``."""
    if not beta > 0.0:
        raise ValueError(f"beta must be positive, got {beta}")
    if not check_nonnegative(A) or not check_irreducible(A):
        raise NotIrreducibleError("shift requires an irreducible nonnegative standard part")
    return DualMatrix(A.s + beta * np.eye(A.n), A.d)
