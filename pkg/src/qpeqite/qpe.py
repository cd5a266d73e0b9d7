"""Closed-form phase estimation for diagonal Hamiltonians.

For a basis state of (shifted) energy ``E`` the register amplitude after the
controlled evolution and the Fourier transform is the geometric sum

    a(E, p) = sum_{y=0}^{M-1} exp(2 pi i (l E - p) y / M),   M = 2**n_register.

Everything here depends on ``E`` only through ``l*E``, so results are stored per
distinct energy level instead of per basis state.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import TextIO

import numpy as np

from .hamiltonians import DiagonalHamiltonian
from .io import write_table

__all__ = [
    "RegisterConfig",
    "InitialState",
    "QpeResult",
    "register_amplitude",
    "amplitude_table",
    "run_qpe",
    "energy_estimates",
    "PROB_ATOL",
]

PROB_ATOL = 1e-10
MAX_REGISTER = 20


@dataclass(frozen=True)
class RegisterConfig:
    n_register: int
    scale: float = 1.0

    def __post_init__(self):
        if not 1 <= self.n_register <= MAX_REGISTER:
            raise ValueError(f"n_register must lie in [1, {MAX_REGISTER}], got {self.n_register}")
        if not (np.isfinite(self.scale) and self.scale > 0):
            raise ValueError(f"scale must be finite and positive, got {self.scale}")

    @property
    def size(self) -> int:
        return 1 << self.n_register


class InitialState:
    """Normalized amplitudes ``b_i`` over the computational basis of the state qubits."""

    def __init__(self, amplitudes, *, _weights: np.ndarray | None = None):
        amps = np.asarray(amplitudes, dtype=np.complex128).ravel()
        n = amps.size.bit_length() - 1
        if amps.size < 2 or 1 << n != amps.size:
            raise ValueError(f"amplitude count must be a power of two >= 2, got {amps.size}")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"initial state is not normalized (sum |b|^2 = {norm!r})")
        self.amplitudes = amps
        self.n_qubits = n
        self._weights = _weights

    @classmethod
    def uniform(cls, n: int) -> "InitialState":
        """``|+>^n``; weights are kept as the exact ``2^-n``."""
        size = 1 << n
        return cls(np.full(size, size ** -0.5), _weights=np.full(size, 2.0 ** -n))

    @classmethod
    def basis(cls, n: int, index: int) -> "InitialState":
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)

    @property
    def weights(self) -> np.ndarray:
        if self._weights is None:
            self._weights = np.abs(self.amplitudes) ** 2
        return self._weights


def amplitude_table(energies, cfg: RegisterConfig) -> np.ndarray:
    """``a(E, p)`` for every energy (rows) and register value (columns).

    With ``d = lE - p = M k + r`` and ``|r| <= M/2`` the geometric sum is
    ``e^{i pi (M-1) d/M} (-1)^k M sinc(r) / sinc(r/M)``; the denominator stays
    above ``2/pi`` so tiny offsets never divide underflowed sines, and integer
    ``r != 0`` gives an exact zero.
    """
    m = cfg.size
    e = np.asarray(energies, dtype=np.float64).reshape(-1, 1)
    d = cfg.scale * e - np.arange(m, dtype=np.float64)[None, :]
    k = np.round(d / m)
    r = d - m * k
    ratio = m * np.sinc(r) / np.sinc(r / m)
    ratio = np.where((r == np.round(r)) & (r != 0), 0.0, ratio)
    sign = 1.0 - 2.0 * np.mod(k, 2.0)
    phase = np.exp(1j * np.pi * (m - 1) * (d / m))
    return phase * sign * ratio


def register_amplitude(energy: float, p: int, cfg: RegisterConfig) -> complex:
    if not 0 <= p < cfg.size:
        raise ValueError(f"register value p={p} outside [0, {cfg.size})")
    return complex(amplitude_table([energy], cfg)[0, p])


@dataclass
class QpeResult:
    """Register statistics of a phase-estimation run.

    ``level_register[k, p]`` is ``|a(E_k, p)|^2 / M^2`` for distinct level ``k``
    (each row sums to one), and ``state_level[i]`` maps a basis state to its level.
    """

    cfg: RegisterConfig
    n_qubits: int
    state_weights: np.ndarray
    state_level: np.ndarray
    level_energies: np.ndarray
    level_register: np.ndarray
    register_distribution: np.ndarray
    aliased: bool = False
    offset_above_ground: bool = False
    flags: tuple[str, ...] = field(default=())

    @cached_property
    def level_weights(self) -> np.ndarray:
        return np.bincount(
            self.state_level, weights=self.state_weights, minlength=self.level_energies.size
        )

    def joint_weights(self) -> np.ndarray:
        """Dense ``(2^N, 2^N_R)`` table of ``|a_{i,p} b_i|^2`` normalized to one."""
        return self.state_weights[:, None] * self.level_register[self.state_level]

    def subset_register_mass(self, states) -> np.ndarray:
        """``sum_{i in states} joint(i, p)`` as a function of ``p``."""
        idx = np.fromiter(states, dtype=np.int64)
        w = np.bincount(
            self.state_level[idx],
            weights=self.state_weights[idx],
            minlength=self.level_energies.size,
        )
        return w @ self.level_register

    def to_csv(self, out: TextIO, fmt_name: str = "csv") -> None:
        rows = enumerate(self.register_distribution)
        write_table(rows, ("p", "probability"), out, fmt_name)


def run_qpe(
    h: DiagonalHamiltonian,
    b: InitialState,
    cfg: RegisterConfig,
    *,
    energies: np.ndarray | None = None,
) -> QpeResult:
    """Register distribution for initial state ``b`` evolved under ``h``.

    ``energies`` may be passed to reuse an already enumerated spectrum of ``h``.
    """
    if b.n_qubits != h.n_qubits:
        raise ValueError(f"initial state has {b.n_qubits} qubits, Hamiltonian has {h.n_qubits}")
    if energies is None:
        energies = h.energies()
    energies = np.asarray(energies, dtype=np.float64)
    if energies.size != 1 << h.n_qubits:
        raise ValueError("energies do not match the Hamiltonian dimension")

    levels, state_level = np.unique(energies, return_inverse=True)
    amps = amplitude_table(levels, cfg)
    m = cfg.size
    level_register = (amps.real**2 + amps.imag**2) / float(m * m)

    weights = b.weights
    level_w = np.bincount(state_level, weights=weights, minlength=levels.size)
    distribution = level_w @ level_register

    flags = []
    aliased = bool(cfg.scale * levels[-1] >= m or cfg.scale * levels[0] < 0)
    below = bool(levels[0] < 0)
    if cfg.scale * levels[-1] >= m:
        flags.append(
            f"aliasing: scaled maximum energy {cfg.scale * levels[-1]:g} >= 2^N_R = {m}"
        )
    if below:
        flags.append(f"offset above ground energy: lowest shifted energy {levels[0]:g} < 0")
    result = QpeResult(
        cfg=cfg,
        n_qubits=h.n_qubits,
        state_weights=weights,
        state_level=state_level.astype(np.int64),
        level_energies=levels,
        level_register=level_register,
        register_distribution=distribution,
        aliased=aliased,
        offset_above_ground=below,
        flags=tuple(flags),
    )
    result.level_weights = level_w
    return result


def energy_estimates(result: QpeResult, cfg: RegisterConfig | None = None):
    """Non-negligible bins as ``(p, P(p), p/l)``, most probable first, ties by ascending ``p``."""
    cfg = cfg or result.cfg
    dist = result.register_distribution
    bins = [p for p in range(dist.size) if dist[p] > PROB_ATOL]
    bins.sort(key=lambda p: (-round(float(dist[p]), 10), p))
    return [(p, float(dist[p]), p / cfg.scale) for p in bins]
