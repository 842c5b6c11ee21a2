"""Seeded matrix generators and the numerical experiments behind the acceptance suite."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

import numpy as np

from . import kernels
from .errors import PreconditionError
from .kernels import status
from .linalg import DualMatrix
from .scalar import DualNumber
from .spectral import real_perron
from .structure import check_primitive

__all__ = [
    "DUAL_MODES",
    "DecayReport",
    "LemmaCheck",
    "PanelCase",
    "generate_primitive",
    "spectral_radius",
    "power_decay",
    "lemma_bound",
    "lemma_bound_check",
    "primitive_panel",
    "decay_panel",
    "cycle_panel",
]

DUAL_MODES = ("nonnegative", "signed", "zero")


def generate_primitive(n: int, density: float = 0.5, dual_mode: str = "nonnegative", seed: int = 0) -> DualMatrix:
    """Random primitive dual matrix, deterministic in ``seed``.

    The standard part is a random directed Hamiltonian cycle plus
    Bernoulli(``density``) extra entries and one positive diagonal entry,
    with values uniform on [0.1, 1]; a cycle with a loop is primitive. The
    dual part is uniform on [0, 1], uniform on [-1, 1] or zero by mode.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 < density <= 1.0:
        raise ValueError("density must lie in (0, 1]")
    if dual_mode not in DUAL_MODES:
        raise ValueError(f"dual_mode must be one of {DUAL_MODES}")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    mask = rng.random((n, n)) < density
    mask[perm, np.roll(perm, -1)] = True
    j = rng.integers(n)
    mask[j, j] = True
    As = np.where(mask, rng.uniform(0.1, 1.0, (n, n)), 0.0)
    if dual_mode == "nonnegative":
        Ad = rng.uniform(0.0, 1.0, (n, n))
    elif dual_mode == "signed":
        Ad = rng.uniform(-1.0, 1.0, (n, n))
    else:
        Ad = np.zeros((n, n))
    A = DualMatrix(As, Ad)
    if not check_primitive(A).primitive:  # pragma: no cover - impossible by construction
        raise RuntimeError("generated matrix failed the primitivity check")
    return A


def spectral_radius(M) -> float:
    return float(np.max(np.abs(np.linalg.eigvals(np.asarray(M, dtype=np.float64)))))


@dataclass
class DecayReport:
    rho_s: float
    k_values: list = field(default_factory=list)
    s_maxabs: list = field(default_factory=list)
    d_maxabs: list = field(default_factory=list)
    verdict: str = "inconclusive"

    def as_dict(self):
        return {
            "rho_s": self.rho_s,
            "k_values": list(self.k_values),
            "s_maxabs": list(self.s_maxabs),
            "d_maxabs": list(self.d_maxabs),
            "verdict": self.verdict,
        }


def power_decay(A: DualMatrix, k_max: int, threshold: float = 1e-10) -> DecayReport:
    """Track the entrywise size of ``A**k`` for ``k = 1..k_max``.

    The verdict is ``converged`` when both parts end below ``threshold`` and
    ``rho(A_s) < 1``; ``diverged`` when either part ends above
    ``1/threshold`` or overflows; ``inconclusive`` otherwise.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must lie in (0, 1)")
    rho = spectral_radius(A.s)
    s_max, d_max, count, code = kernels.decay_loop(A.s, A.d, int(k_max))
    report = DecayReport(
        rho_s=rho,
        k_values=list(range(1, count + 1)),
        s_maxabs=[float(v) for v in s_max[:count]],
        d_maxabs=[float(v) for v in d_max[:count]],
    )
    if code == status.OVERFLOW:
        report.verdict = "diverged"
        return report
    last_s, last_d = report.s_maxabs[-1], report.d_maxabs[-1]
    if last_s < threshold and last_d < threshold and rho < 1.0:
        report.verdict = "converged"
    elif last_s > 1.0 / threshold or last_d > 1.0 / threshold:
        report.verdict = "diverged"
    return report


class LemmaCheck(NamedTuple):
    observed_s: float
    observed_d: float
    bound: float
    passed: bool


def lemma_bound(lam: DualNumber, gamma: float, L: float, eta: float, k: int) -> float:
    return 8.0 * L * (2.0 * lam.s + abs(lam.d)) * eta ** k / gamma


def lemma_bound_check(lam: DualNumber, gamma: float, L: float, eta: float, k: int, grid_m: int = 7) -> LemmaCheck:
    """Brute-force the spread of ``lam (g + t1 h + t2 h eps) / (g + t3 h + t4 h eps)``.

    ``h = eta**k`` and ``t1..t4`` run over a ``grid_m``-point grid on
    ``[-L, L]`` (endpoints included). The spreads (max minus min) of the
    standard and dual parts are compared with
    ``8 L (2 lam_s + |lam_d|) eta**k / gamma``.

    Raises
    ------
    PreconditionError
        If ``gamma + t3 eta**k > gamma/2`` can fail for some ``|t3| <= L``.
    """
    if not lam.s > 0:
        raise PreconditionError("lambda must have a positive standard part")
    if not (gamma > 0 and L > 0 and 0 < eta < 1):
        raise PreconditionError("need gamma > 0, L > 0 and 0 < eta < 1")
    if grid_m < 2:
        raise PreconditionError("grid_m must be at least 2")
    if k < 0 or not L * eta ** k < gamma / 2.0:
        raise PreconditionError(f"k = {k} is too small: L*eta^k must stay below gamma/2")
    min_s, max_s, min_d, max_d = kernels.lemma_grid(
        float(lam.s), float(lam.d), float(gamma), float(L), float(eta), int(k), int(grid_m)
    )
    obs_s, obs_d = max_s - min_s, max_d - min_d
    bound = lemma_bound(lam, gamma, L, eta, k)
    return LemmaCheck(obs_s, obs_d, bound, obs_s <= bound and obs_d <= bound)


class PanelCase(NamedTuple):
    seed: int
    n: int
    density: float
    dual_mode: str
    A: DualMatrix


def primitive_panel(count: int = 100, base_seed: int = 20240) -> Iterator[PanelCase]:
    """Deterministic sweep over n in 2..20, three densities and two dual modes."""
    densities = (0.3, 0.7, 1.0)
    modes = ("nonnegative", "signed")
    for i in range(count):
        n, dens, mode = 2 + i % 19, densities[i % 3], modes[i % 2]
        seed = base_seed + i
        yield PanelCase(seed, n, dens, mode, generate_primitive(n, dens, mode, seed))


DECAY_TARGETS = (0.3, 0.6, 0.9, 0.95, 1.05, 1.1, 1.5)


def decay_panel(count: int = 50, base_seed: int = 31337, targets=DECAY_TARGETS):
    """Generated matrices with the standard part rescaled to a target spectral radius.

    Yields ``(target, A)`` pairs; dual parts are signed.
    """
    for i in range(count):
        target = targets[i % len(targets)]
        n = 2 + i % 9
        A = generate_primitive(n, (0.3, 0.7, 1.0)[i % 3], "signed", base_seed + i)
        rho = real_perron(A.s).rho
        yield target, DualMatrix(A.s * (target / rho), A.d)


def cycle_panel(count: int = 20, base_seed: int = 4242):
    """Irreducible, imprimitive dual matrices: weighted cycles of even length.

    Yields ``(weights, perm, A)`` where ``A_s[perm[i], perm[i+1]] = weights[i]``.
    """
    for i in range(count):
        rng = np.random.default_rng(base_seed + i)
        n = 2 * (1 + i % 6)
        perm = rng.permutation(n)
        w = rng.uniform(0.1, 1.0, n)
        As = np.zeros((n, n))
        As[perm, np.roll(perm, -1)] = w
        Ad = rng.uniform(-1.0, 1.0, (n, n))
        yield w, perm, DualMatrix(As, Ad)
