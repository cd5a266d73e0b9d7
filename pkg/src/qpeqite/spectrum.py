"""Brute-force spectra of diagonal Hamiltonians and the LABS optimum archive."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .fitting import FitResult, fit_power_law
from .hamiltonians import DiagonalHamiltonian, index_to_bits
from .io import write_table

__all__ = [
    "Spectrum",
    "ArchiveEntry",
    "ArchiveError",
    "enumerate_spectrum",
    "load_archive",
    "fit_gap_exponent",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 24
LEVEL_ATOL = 1e-9


class ArchiveError(ValueError):
    pass


@dataclass(frozen=True)
class Spectrum:
    """Energies of all ``2^N`` basis states, indexed by basis index.

    ``gap`` is the distance between the two lowest distinct levels, or
    ``None`` when the spectrum is flat.
    """

    energies: np.ndarray
    ground_energy: float
    ground_set: frozenset[int]
    gap: float | None
    max_energy: float

    @property
    def n_qubits(self) -> int:
        return int(self.energies.size).bit_length() - 1

    @property
    def has_gap(self) -> bool:
        return self.gap is not None

    @property
    def energy_range(self) -> float:
        return self.max_energy - self.ground_energy

    def levels(self) -> tuple[np.ndarray, np.ndarray]:
        """Distinct energy levels (ascending) and their degeneracies."""
        levels, counts = np.unique(self.energies, return_counts=True)
        return levels, counts

    def to_csv(self, out: TextIO) -> None:
        n = self.n_qubits
        rows = ((index_to_bits(x, n), e) for x, e in enumerate(self.energies))
        write_table(rows, ("bitstring", "energy"), out)


def enumerate_spectrum(
    h: DiagonalHamiltonian, cap: int = DEFAULT_CAP, jobs: int = 1
) -> Spectrum:
    """Evaluate every basis state of ``h``; chunks may run on ``jobs`` threads."""
    n = h.n_qubits
    if n > cap:
        raise ValueError(f"{n} qubits exceeds the enumeration cap of {cap}")
    size = 1 << n
    if jobs <= 1 or size < 1 << 14:
        energies = h.energies()
    else:
        bounds = np.linspace(0, size, jobs + 1).astype(np.int64)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(lambda ab: h.energies(*ab), zip(bounds[:-1], bounds[1:])))
        energies = np.concatenate(parts)
    e0 = float(energies.min())
    emax = float(energies.max())
    ground = frozenset(np.flatnonzero(energies <= e0 + LEVEL_ATOL).tolist())
    above = energies[energies > e0 + LEVEL_ATOL]
    gap = float(above.min() - e0) if above.size else None
    return Spectrum(energies, e0, ground, gap, emax)


@dataclass(frozen=True, order=True)
class ArchiveEntry:
    n: int
    optimal_energy: float

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"archive entry needs n >= 2, got {self.n}")
        if self.optimal_energy < 0:
            raise ValueError(f"optimal energy must be non-negative, got {self.optimal_energy}")


def load_archive(path: str | os.PathLike) -> list[ArchiveEntry]:
    """Parse ``N E_opt`` lines; ``#`` starts a comment. Sorted by N."""
    entries: dict[int, ArchiveEntry] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) != 2:
                raise ArchiveError(f"{path}:{lineno}: expected 'N energy', got {raw.strip()!r}")
            try:
                n = int(fields[0])
                energy = float(fields[1])
                entry = ArchiveEntry(n, energy)
            except ValueError as exc:
                raise ArchiveError(f"{path}:{lineno}: {exc}") from exc
            if n in entries:
                raise ArchiveError(f"{path}:{lineno}: duplicate entry for N={n}")
            entries[n] = entry
    return sorted(entries.values())


def fit_gap_exponent(points) -> FitResult:
    """Power-law fit ``gap ~ prefactor * N**exponent`` over ``(N, gap)`` pairs."""
    points = list(points)
    ns = [p[0] for p in points]
    gaps = [p[1] for p in points]
    return fit_power_law(ns, gaps, min_points=3)
