"""T-count estimates for the QPE-QITE pipeline and the Solovay-Kitaev scaling fit."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import pi
from typing import TextIO

import numpy as np

from ..fitting import FitResult, fit_line
from ..gate import gate_matrix
from ..hamiltonians import DiagonalHamiltonian
from ..io import write_table
from ..qpe import RegisterConfig
from .clifford_t import SynthesisResult
from .multiplexor import decompose_multiplexed_ry, uar_taylor_order
from .solovay_kitaev import EpsilonNet, sk_synthesize

__all__ = [
    "StageCost",
    "ResourceReport",
    "RotationSynthesizer",
    "resource_report",
    "fit_sk_exponent",
]


@dataclass
class StageCost:
    stage: str
    rotations: int
    cnots: int
    t_count: int
    eps_used: float
    achieved_error: float
    reached: bool


@dataclass
class ResourceReport:
    qpe_rotations: int
    qft_rotations: int
    uar_rotations: int
    qft_hadamards: int
    stages: list[StageCost] = field(default_factory=list)

    @property
    def t_total(self) -> int:
        return sum(s.t_count for s in self.stages)

    @property
    def eps_reached(self) -> bool:
        return all(s.reached for s in self.stages)

    def rows(self):
        for s in self.stages:
            yield (s.stage, s.rotations, s.cnots, s.t_count, s.eps_used)
        yield ("total", sum(s.rotations for s in self.stages),
               sum(s.cnots for s in self.stages), self.t_total,
               max((s.eps_used for s in self.stages), default=0.0))

    def to_csv(self, out: TextIO, fmt_name: str = "csv") -> None:
        write_table(self.rows(), ("stage", "rotations", "cnots", "t_count", "eps_used"), out, fmt_name)


class RotationSynthesizer:
    """Synthesizes single-qubit rotations to a target error, increasing SK depth as needed.

    Results are cached per (kind, angle) since pipeline angles repeat heavily.
    """

    def __init__(self, net: EpsilonNet, eps: float, max_depth: int):
        if eps <= 0:
            raise ValueError(f"eps must be positive, got {eps}")
        self.net = net
        self.eps = eps
        self.max_depth = max_depth
        self._cache: dict[tuple[str, float], SynthesisResult] = {}

    def __call__(self, kind: str, angle: float) -> SynthesisResult:
        key = (kind, round(float(np.mod(angle, 4 * pi)), 12))
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        target = gate_matrix(kind, angle)
        best = None
        for depth in range(self.max_depth + 1):
            res = sk_synthesize(target, depth, self.net)
            if best is None or res.error < best.error:
                best = res
            if res.error <= self.eps:
                break
        self._cache[key] = best
        return best


def _stage(name: str, synth: RotationSynthesizer, rotations, cnots: int) -> StageCost:
    rotations = list(rotations)
    results = [synth(kind, angle) for kind, angle in rotations]
    worst = max((r.error for r in results), default=0.0)
    return StageCost(
        stage=name,
        rotations=len(rotations),
        cnots=cnots,
        t_count=sum(r.t_count for r in results),
        eps_used=synth.eps,
        achieved_error=worst,
        reached=worst <= synth.eps,
    )


def resource_report(
    h: DiagonalHamiltonian,
    cfg: RegisterConfig,
    tau: float,
    eps: float,
    net: EpsilonNet,
    depth: int,
    uar: str | int = "exact",
) -> ResourceReport:
    """Per-stage rotation, CNOT and T counts with every rotation synthesized at error <= ``eps``.

    Each (controlled) phase rotation costs one synthesis of its single-qubit
    core; CNOTs and Hadamards are Clifford and carry no T gates. ``uar`` selects
    the exact multiplexor (``"exact"``) or a Taylor truncation (``0`` or ``1``).
    """
    synth = RotationSynthesizer(net, eps, depth)
    nr = cfg.n_register
    m = cfg.size

    qpe_rot, qpe_cnots = [], 0
    offset_rot = []
    for r in range(nr):
        unit = 2 * pi * cfg.scale * (1 << r) / m
        offset = -h.alpha
        for term in h.terms:
            if not term.indices:
                offset += term.coeff
                continue
            qpe_rot.append(("RZ", -2.0 * unit * term.coeff))
            qpe_cnots += 2 * (len(term.indices) - 1) + 2
        if offset:
            offset_rot.append(("PHASE", unit * offset))

    qft_rot = [("PHASE", -pi / 2 ** (j - k)) for j in range(nr) for k in range(j)]
    qft_cnots = 2 * len(qft_rot) + 3 * (nr // 2)

    if uar == "exact":
        p = np.arange(m, dtype=np.float64)
        gates = decompose_multiplexed_ry(2.0 * np.exp(-p * tau))
    elif uar in (0, 1, "0", "1"):
        gates = uar_taylor_order(int(uar), nr, tau)
    else:
        raise ValueError(f"uar must be 'exact', 0 or 1, got {uar!r}")
    uar_rot = [("RY", g.angle) for g in gates if g.kind == "RY"]
    uar_cnots = sum(1 for g in gates if g.kind == "CNOT")

    report = ResourceReport(
        qpe_rotations=len(qpe_rot),
        qft_rotations=len(qft_rot),
        uar_rotations=len(uar_rot),
        qft_hadamards=nr,
    )
    report.stages.append(_stage("qpe", synth, qpe_rot, qpe_cnots))
    if offset_rot:
        report.stages.append(_stage("offset", synth, offset_rot, 0))
    report.stages.append(_stage("qft", synth, qft_rot, qft_cnots))
    report.stages.append(_stage("uar", synth, uar_rot, uar_cnots))
    return report


def fit_sk_exponent(points) -> FitResult:
    """Fit ``t_count ~ prefactor * log(1/eps)**exponent`` over ``(eps, t_count)`` pairs."""
    points = list(points)
    if len(points) < 4:
        raise ValueError(f"need at least 4 points, got {len(points)}")
    eps = np.array([p[0] for p in points], dtype=float)
    t = np.array([p[1] for p in points], dtype=float)
    if len(set(eps.tolist())) != len(eps):
        raise ValueError("eps values must be distinct")
    if np.any(eps <= 0) or np.any(eps >= 1) or np.any(t <= 0):
        raise ValueError("need 0 < eps < 1 and positive T counts")
    fit = fit_line(np.log(np.log(1.0 / eps)), np.log(t))
    return FitResult(fit.exponent, float(np.exp(fit.prefactor)), fit.residual)
