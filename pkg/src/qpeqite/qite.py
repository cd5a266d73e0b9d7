"""Imaginary-time filtering of a phase-estimation register by ancilla post-selection.

The ancilla is rotated to ``cos(e^{-p tau})|0> + sin(e^{-p tau})|1>`` conditioned
on the register value ``p``; keeping the ``|1>`` branch reweights every register
bin by ``sin^2(e^{-p tau})``. The exact weight is used, not its small-angle form.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .hamiltonians import DiagonalHamiltonian
from .qpe import InitialState, QpeResult, RegisterConfig, run_qpe

__all__ = [
    "QiteOutcome",
    "MinTauResult",
    "ancilla_weights",
    "apply_qite",
    "overlap_without_qite",
    "qite_sweep",
    "min_tau",
    "normalize_tau",
]

BISECTION_RTOL = 1e-6


def ancilla_weights(n_register: int, tau: float) -> np.ndarray:
    """``sin^2(e^{-p tau})`` for ``p = 0..2^n_register - 1``."""
    p = np.arange(1 << n_register, dtype=np.float64)
    return np.sin(np.exp(-p * tau)) ** 2


def normalize_tau(tau: float, n_qubits: int) -> float:
    return tau / ((1 << n_qubits) - 1)


@dataclass
class QiteOutcome:
    tau: float
    success_probability: float
    ground_overlap: float
    excited_fraction: float
    postselected_register: np.ndarray
    register_weights: np.ndarray
    qpe: QpeResult

    @property
    def tau_normalized(self) -> float:
        return normalize_tau(self.tau, self.qpe.n_qubits)

    def postselected_weights(self) -> np.ndarray:
        """Dense post-selected ``(i, p)`` table, normalized to one."""
        joint = self.qpe.joint_weights() * self.register_weights[None, :]
        return joint / self.success_probability

    def reaches(self, threshold: float) -> bool:
        # complement form keeps threshold=1 unreachable unless excited mass is exactly zero
        return self.excited_fraction <= 1.0 - threshold


def _split_masses(qpe: QpeResult, ground_set) -> tuple[np.ndarray, np.ndarray]:
    mask = np.zeros(qpe.state_weights.size, dtype=bool)
    mask[np.fromiter(ground_set, dtype=np.int64)] = True
    nlev = qpe.level_energies.size
    w_in = np.bincount(qpe.state_level[mask], qpe.state_weights[mask], minlength=nlev)
    w_out = np.bincount(qpe.state_level[~mask], qpe.state_weights[~mask], minlength=nlev)
    return w_in @ qpe.level_register, w_out @ qpe.level_register


def _checked_ground_set(ground_set):
    ground_set = frozenset(int(i) for i in ground_set)
    if not ground_set:
        raise ValueError("ground_set must be non-empty")
    return ground_set


def apply_qite(qpe: QpeResult, ground_set, tau: float, *, _masses=None) -> QiteOutcome:
    if tau < 0:
        raise ValueError(f"tau must be non-negative, got {tau}")
    ground_set = _checked_ground_set(ground_set)
    ground_p, excited_p = _masses if _masses is not None else _split_masses(qpe, ground_set)
    f = ancilla_weights(qpe.cfg.n_register, tau)
    success = float(qpe.register_distribution @ f)
    ground = float(ground_p @ f)
    excited = float(excited_p @ f)
    if success > 0:
        post = qpe.register_distribution * f / success
        kept = ground + excited
        overlap, excited_frac = ground / kept, excited / kept
    else:
        post = np.zeros_like(f)
        overlap, excited_frac = float("nan"), float("nan")
    return QiteOutcome(float(tau), success, overlap, excited_frac, post, f, qpe)


def overlap_without_qite(qpe: QpeResult, ground_set) -> float:
    """Ground-state probability of the register-marginalized state before filtering."""
    ground_set = _checked_ground_set(ground_set)
    idx = np.fromiter(ground_set, dtype=np.int64)
    return float(qpe.state_weights[idx].sum())


def qite_sweep(qpe: QpeResult, ground_set, taus, jobs: int = 1) -> list[QiteOutcome]:
    """``apply_qite`` over many ``tau`` values, results in input order."""
    ground_set = _checked_ground_set(ground_set)
    masses = _split_masses(qpe, ground_set)
    taus = [float(t) for t in taus]
    if jobs <= 1:
        return [apply_qite(qpe, ground_set, t, _masses=masses) for t in taus]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda t: apply_qite(qpe, ground_set, t, _masses=masses), taus))


@dataclass
class MinTauResult:
    found: bool
    tau: float | None
    tau_normalized: float | None
    outcome: QiteOutcome | None
    max_overlap: float


def min_tau(
    h: DiagonalHamiltonian,
    b: InitialState,
    cfg: RegisterConfig,
    ground_set,
    threshold: float,
    grid,
    *,
    qpe: QpeResult | None = None,
) -> MinTauResult:
    """Smallest ``tau`` whose post-selected ground overlap reaches ``threshold``.

    The first grid point that reaches it is bracketed with its predecessor and
    refined by bisection to relative width ``1e-6``.
    """
    if not 0 < threshold <= 1:
        raise ValueError(f"threshold must lie in (0, 1], got {threshold}")
    grid = [float(t) for t in grid]
    if not grid or any(b2 < a for a, b2 in zip(grid, grid[1:])):
        raise ValueError("grid must be a non-empty ascending sequence")
    ground_set = _checked_ground_set(ground_set)
    if qpe is None:
        qpe = run_qpe(h, b, cfg)
    masses = _split_masses(qpe, ground_set)

    def at(t):
        return apply_qite(qpe, ground_set, t, _masses=masses)

    best = -1.0
    prev = None
    for i, t in enumerate(grid):
        out = at(t)
        if np.isfinite(out.ground_overlap):
            best = max(best, out.ground_overlap)
        if out.reaches(threshold):
            if i == 0:
                return MinTauResult(True, t, normalize_tau(t, qpe.n_qubits), out, best)
            lo, hi, hi_out = prev, t, out
            while hi - lo > BISECTION_RTOL * hi:
                mid = 0.5 * (lo + hi)
                mid_out = at(mid)
                if mid_out.reaches(threshold):
                    hi, hi_out = mid, mid_out
                else:
                    lo = mid
            return MinTauResult(True, hi, normalize_tau(hi, qpe.n_qubits), hi_out, best)
        prev = t
    return MinTauResult(False, None, None, None, best)
