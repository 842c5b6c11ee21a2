"""Dual number matrix algebra and Perron eigenpairs of primitive dual matrices."""

__version__ = "0.1.0"

from .collatz import CollatzTrace, bracket_step, collatz_solve, estimate_rate
from .config import SolverConfig
from .experiments import generate_primitive, lemma_bound_check, power_decay
from .linalg import (
    DualMatrix,
    DualVector,
    entrywise_max_abs,
    fr_norm,
    inverse,
    matmul,
    matpow,
    matvec,
    normalize,
    vec_norm2,
)
from .perron import PerronResult, eigen_residual, lambda_d_fd_oracle, perron_eigenpair
from .scalar import DualNumber, Ordering, add, compare, conjugate, divide, magnitude, mul
from .spectral import real_perron, second_modulus, solve_bordered
from .structure import StructureReport, check_irreducible, check_nonnegative, check_primitive, shift_to_primitive

__all__ = [
    "CollatzTrace",
    "DualMatrix",
    "DualNumber",
    "DualVector",
    "Ordering",
    "PerronResult",
    "SolverConfig",
    "StructureReport",
    "add",
    "bracket_step",
    "check_irreducible",
    "check_nonnegative",
    "check_primitive",
    "collatz_solve",
    "compare",
    "conjugate",
    "divide",
    "eigen_residual",
    "entrywise_max_abs",
    "estimate_rate",
    "fr_norm",
    "generate_primitive",
    "inverse",
    "lambda_d_fd_oracle",
    "lemma_bound_check",
    "magnitude",
    "matmul",
    "matpow",
    "matvec",
    "mul",
    "normalize",
    "perron_eigenpair",
    "power_decay",
    "real_perron",
    "second_modulus",
    "shift_to_primitive",
    "solve_bordered",
    "vec_norm2",
]
