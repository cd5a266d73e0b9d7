"""End-to-end studies on LABS: overlap vs imaginary time, register scaling, synthesis tradeoff."""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil, log2

import numpy as np

from .fitting import FitResult, fit_line
from .hamiltonians import DiagonalHamiltonian, labs_constant, labs_hamiltonian, sidelobe_hamiltonian, with_offset
from .qite import MinTauResult, min_tau, overlap_without_qite
from .qpe import InitialState, QpeResult, RegisterConfig, run_qpe
from .spectrum import DEFAULT_CAP, ArchiveEntry, Spectrum, enumerate_spectrum
from .synthesis.clifford_t import distance
from .synthesis.multiplexor import decompose_multiplexed_ry
from .synthesis.solovay_kitaev import EpsilonNet, sk_synthesize
from .gate import gate_matrix

__all__ = [
    "LabsSetup",
    "labs_operator",
    "labs_setup",
    "resolve_alpha",
    "register_requirement",
    "fig2_register_size",
    "tau_grid",
    "NrScalingRow",
    "nr_scaling",
    "fit_nr_scaling",
    "uar_tradeoff",
]

FIG2_MAX_REGISTER = 5


def labs_operator(n: int, kind: str = "labs") -> DiagonalHamiltonian:
    """``"labs"``: the four/two-body Z form; ``"sidelobe"``: the sidelobe energy itself."""
    if kind == "labs":
        return labs_hamiltonian(n)
    if kind == "sidelobe":
        return sidelobe_hamiltonian(n)
    raise ValueError(f"unknown Hamiltonian kind {kind!r}")


def resolve_alpha(
    n: int,
    kind: str = "labs",
    archive: list[ArchiveEntry] | None = None,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> float:
    """Ground energy of the chosen LABS operator, by brute force or from an archive of optimal sidelobe energies."""
    if n <= cap:
        return enumerate_spectrum(labs_operator(n, kind), cap=cap, jobs=jobs).ground_energy
    for entry in archive or ():
        if entry.n == n:
            e = entry.optimal_energy
            return e if kind == "sidelobe" else (e - labs_constant(n)) / 2.0
    raise ValueError(f"alpha=auto needs brute force (N <= {cap}) or an archive entry for N={n}")


@dataclass
class LabsSetup:
    """A LABS instance shifted so that its ground energy sits at register value 0."""

    n: int
    hamiltonian: DiagonalHamiltonian
    spectrum: Spectrum

    @property
    def ground_set(self) -> frozenset[int]:
        return self.spectrum.ground_set

    def qpe(self, cfg: RegisterConfig, b: InitialState | None = None) -> QpeResult:
        b = b or InitialState.uniform(self.n)
        return run_qpe(self.hamiltonian, b, cfg, energies=self.spectrum.energies)


def labs_setup(n: int, kind: str = "labs", alpha: float | None = None, jobs: int = 1) -> LabsSetup:
    """Build the operator with ``alpha`` (default: its brute-force ground energy) and enumerate it."""
    h = labs_operator(n, kind)
    if alpha is None:
        base = enumerate_spectrum(h, jobs=jobs)
        alpha = base.ground_energy
    h = with_offset(h, alpha)
    return LabsSetup(n, h, enumerate_spectrum(h, jobs=jobs))


def register_requirement(energy_range: float, gap: float | None, scale: float = 1.0) -> int | None:
    """Fewest register qubits with ``2^N_R > scale*range`` and ``scale*gap >= 1``; ``None`` if unresolvable."""
    if gap is not None and scale * gap < 1:
        return None
    need = scale * energy_range + 1
    return max(1, ceil(log2(need))) if need > 1 else 1


def fig2_register_size(spectrum: Spectrum, cap: int = FIG2_MAX_REGISTER) -> int:
    """Register size used for the overlap-vs-tau study: the no-aliasing size, capped."""
    req = register_requirement(spectrum.energy_range, spectrum.gap)
    return min(cap, req if req is not None else cap)


def tau_grid(n: int, stop_normalized: float = 1.0, steps: int = 101, start_normalized: float = 0.0):
    """Raw tau values for an evenly spaced grid in ``tau / (2^N - 1)``."""
    return np.linspace(start_normalized, stop_normalized, steps) * ((1 << n) - 1)


def fig2_point(n: int, threshold: float = 0.999, steps: int = 101, stop_normalized: float = 1.0):
    """Minimal tau for one LABS size plus the pre-filter ground overlap."""
    setup = labs_setup(n)
    cfg = RegisterConfig(fig2_register_size(setup.spectrum))
    qpe = setup.qpe(cfg)
    res: MinTauResult = min_tau(
        setup.hamiltonian,
        InitialState.uniform(n),
        cfg,
        setup.ground_set,
        threshold,
        tau_grid(n, stop_normalized, steps),
        qpe=qpe,
    )
    return setup, cfg, qpe, res, overlap_without_qite(qpe, setup.ground_set)


@dataclass(frozen=True)
class NrScalingRow:
    n: int
    ground_energy: float
    max_energy: float
    gap: float | None
    n_register: int | None


def nr_scaling(n_values, scale: float = 1.0, kind: str = "labs", jobs: int = 1) -> list[NrScalingRow]:
    rows = []
    for n in n_values:
        spec = enumerate_spectrum(labs_operator(n, kind), jobs=jobs)
        req = register_requirement(spec.energy_range, spec.gap, scale)
        rows.append(NrScalingRow(n, spec.ground_energy, spec.max_energy, spec.gap, req))
    return rows


def fit_nr_scaling(rows) -> FitResult:
    """Least squares ``N_R ~ a + b ln N`` (``prefactor=a``, ``exponent=b``)."""
    pts = [(r.n, r.n_register) for r in rows if r.n_register is not None]
    return fit_line(np.log([p[0] for p in pts]), [p[1] for p in pts])


def uar_tradeoff(n_register: int, tau: float, depths, net: EpsilonNet):
    """``(depth, T count, error bound)`` for the multiplexed ancilla rotation.

    Every RY of the Gray-code circuit is synthesized at the same depth; the
    error bound is the sum of the per-rotation operator-norm errors.
    """
    p = np.arange(1 << n_register, dtype=np.float64)
    angles = [g.angle for g in decompose_multiplexed_ry(2.0 * np.exp(-p * tau)) if g.kind == "RY"]
    out = []
    for d in depths:
        t = 0
        err = 0.0
        for a in angles:
            res = sk_synthesize(gate_matrix("RY", a), d, net)
            t += res.t_count
            err += distance(res.realized, gate_matrix("RY", a))
        out.append((d, t, err))
    return out
