"""LABS objective and diagonal Pauli-Z Hamiltonians.

Conventions used throughout the package:

* qubit ``j`` of a basis-state index ``x`` is bit ``(x >> j) & 1``;
* a bit ``b`` maps to the spin ``sigma = 1 - 2*b`` (``Z|0> = +|0>``);
* bitstring strings are written qubit 0 first, so ``"011"`` is ``x = 6``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SpinSequence",
    "ZMonomial",
    "DiagonalHamiltonian",
    "sidelobe_energy",
    "autocorrelation",
    "labs_constant",
    "labs_hamiltonian",
    "sidelobe_hamiltonian",
    "evaluate",
    "with_offset",
    "bits_to_index",
    "index_to_bits",
    "spins_from_bits",
]


@dataclass(frozen=True)
class SpinSequence:
    """A LABS configuration: ``N >= 2`` spins, each exactly +1 or -1."""

    spins: tuple[int, ...]

    def __post_init__(self):
        spins = tuple(int(s) for s in self.spins)
        if len(spins) < 2:
            raise ValueError(f"a spin sequence needs N >= 2, got N={len(spins)}")
        if any(s not in (1, -1) for s in spins):
            raise ValueError(f"spins must be +1 or -1, got {self.spins!r}")
        object.__setattr__(self, "spins", spins)

    def __len__(self) -> int:
        return len(self.spins)

    @classmethod
    def from_bits(cls, bits) -> "SpinSequence":
        return cls(tuple(1 - 2 * b for b in _as_bits(bits)))

    @classmethod
    def parse(cls, text: str) -> "SpinSequence":
        """Parse ``"++-+"`` or ``"1,1,-1,1"``."""
        text = text.strip()
        if "," in text or " " in text:
            return cls(tuple(int(v) for v in text.replace(",", " ").split()))
        table = {"+": 1, "-": -1}
        try:
            return cls(tuple(table[c] for c in text))
        except KeyError as exc:
            raise ValueError(f"cannot parse spin sequence {text!r}") from exc

    def flipped(self) -> "SpinSequence":
        return SpinSequence(tuple(-s for s in self.spins))

    def reversed(self) -> "SpinSequence":
        return SpinSequence(self.spins[::-1])


def _as_spins(seq) -> np.ndarray:
    if not isinstance(seq, SpinSequence):
        seq = SpinSequence(tuple(seq))
    return np.asarray(seq.spins, dtype=np.int64)


def autocorrelation(seq, k: int) -> int:
    """Aperiodic autocorrelation ``A_k = sum_i s_i s_{i+k}`` at lag ``k``."""
    s = _as_spins(seq)
    n = len(s)
    if not 1 <= k <= n - 1:
        raise ValueError(f"lag k must lie in [1, {n - 1}], got {k}")
    return int(np.dot(s[:-k], s[k:]))


def sidelobe_energy(seq) -> int:
    """Sum of squared autocorrelations over lags ``1..N-1``."""
    s = _as_spins(seq)
    return int(sum(int(np.dot(s[:-k], s[k:])) ** 2 for k in range(1, len(s))))


def labs_constant(n: int) -> int:
    """``sum_{k=1}^{N-1} (N-k)``, the lag-diagonal part of the sidelobe energy."""
    return n * (n - 1) // 2


@dataclass(frozen=True)
class ZMonomial:
    indices: tuple[int, ...]
    coeff: float

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"indices must be strictly increasing, got {idx}")
        if idx and idx[0] < 0:
            raise ValueError(f"negative qubit index in {idx}")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "coeff", float(self.coeff))

    @property
    def mask(self) -> int:
        m = 0
        for i in self.indices:
            m |= 1 << i
        return m

    def label(self) -> str:
        if not self.indices:
            return "I"
        return "".join(f"Z{i}" for i in self.indices)


@dataclass(frozen=True)
class DiagonalHamiltonian:
    """``sum_t c_t prod_{j in t} Z_j  -  alpha * I`` on ``n_qubits`` qubits.

    Build through :meth:`from_terms`, which merges duplicate index sets and
    drops terms whose merged coefficient is zero.
    """

    n_qubits: int
    terms: tuple[ZMonomial, ...] = field(default=())
    alpha: float = 0.0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        seen = set()
        for t in self.terms:
            if t.indices and t.indices[-1] >= self.n_qubits:
                raise ValueError(f"term {t.label()} exceeds n_qubits={self.n_qubits}")
            if t.indices in seen:
                raise ValueError(f"duplicate term {t.label()}; use from_terms to merge")
            seen.add(t.indices)
        object.__setattr__(self, "alpha", float(self.alpha))

    @classmethod
    def from_terms(
        cls,
        n_qubits: int,
        terms: Iterable[tuple[Sequence[int], float]],
        alpha: float = 0.0,
    ) -> "DiagonalHamiltonian":
        """Merge ``(indices, coeff)`` pairs. Repeated qubits cancel (``Z^2 = I``)."""
        acc: dict[tuple[int, ...], float] = defaultdict(float)
        for indices, coeff in terms:
            odd = set()
            for i in indices:
                odd ^= {int(i)}
            acc[tuple(sorted(odd))] += float(coeff)
        merged = tuple(
            ZMonomial(idx, c)
            for idx, c in sorted(acc.items(), key=lambda kv: (len(kv[0]), kv[0]))
            if c != 0.0
        )
        return cls(n_qubits, merged, alpha)

    @property
    def num_terms(self) -> int:
        """``|H|``: number of non-constant Z monomials."""
        return sum(1 for t in self.terms if t.indices)

    def coefficient(self, indices: Sequence[int]) -> float:
        key = tuple(sorted(indices))
        for t in self.terms:
            if t.indices == key:
                return t.coeff
        return 0.0

    def energies(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        """Energies of basis states ``start..stop-1`` (default: all ``2^n``)."""
        if stop is None:
            stop = 1 << self.n_qubits
        x = np.arange(start, stop, dtype=np.int64)
        out = np.full(x.shape, -self.alpha, dtype=np.float64)
        for t in self.terms:
            if not t.indices:
                out += t.coeff
                continue
            parity = np.bitwise_count(x & t.mask) & 1
            out += t.coeff * (1 - 2 * parity.astype(np.float64))
        return out

    def __str__(self) -> str:
        parts = [f"{t.coeff:+g}*{t.label()}" for t in self.terms]
        if self.alpha:
            parts.append(f"{-self.alpha:+g}*I")
        return " ".join(parts) if parts else "0"


def _as_bits(bits) -> list[int]:
    if isinstance(bits, str):
        out = [int(c) for c in bits]
    else:
        out = [int(b) for b in bits]
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"bits must be 0/1, got {bits!r}")
    return out


def bits_to_index(bits) -> int:
    """Basis index of a bitstring written qubit 0 first."""
    return sum(b << j for j, b in enumerate(_as_bits(bits)))


def index_to_bits(x: int, n: int) -> str:
    return "".join(str((x >> j) & 1) for j in range(n))


def spins_from_bits(bits) -> SpinSequence:
    return SpinSequence.from_bits(bits)


def evaluate(h: DiagonalHamiltonian, bits) -> float:
    """Energy of one basis state; ``bits`` is a 0/1 string or sequence, or an int index."""
    if isinstance(bits, (int, np.integer)):
        x = int(bits)
        if not 0 <= x < 1 << h.n_qubits:
            raise ValueError(f"basis index {x} out of range for {h.n_qubits} qubits")
        b = [(x >> j) & 1 for j in range(h.n_qubits)]
    else:
        b = _as_bits(bits)
        if len(b) != h.n_qubits:
            raise ValueError(f"expected {h.n_qubits} bits, got {len(b)}")
    sigma = [1 - 2 * v for v in b]
    total = 0.0
    for t in h.terms:
        prod = 1
        for j in t.indices:
            prod *= sigma[j]
        total += t.coeff * prod
    return total - h.alpha


def with_offset(h: DiagonalHamiltonian, alpha: float) -> DiagonalHamiltonian:
    return replace(h, alpha=float(alpha))


def labs_hamiltonian(n: int) -> DiagonalHamiltonian:
    """Four-body plus two-body Z form of LABS.

    ``2 * sum_{i,t,k} Z_i Z_{i+t} Z_{i+k} Z_{i+t+k} + sum_{i,k} Z_i Z_{i+2k}``
    with ``t <= floor((N-i-1)/2)``, ``t < k <= N-i-t`` and ``k <= floor((N-i)/2)``
    in the two-body sum (1-based ``i``). Its energies satisfy
    ``sidelobe = 2 * H + labs_constant(N)`` on every basis state.
    """
    if n < 2:
        raise ValueError(f"LABS needs n >= 2, got {n}")
    terms = []
    for i in range(1, n - 2):
        for t in range(1, (n - i - 1) // 2 + 1):
            for k in range(t + 1, n - i - t + 1):
                terms.append(((i - 1, i + t - 1, i + k - 1, i + t + k - 1), 2.0))
    for i in range(1, n - 1):
        for k in range(1, (n - i) // 2 + 1):
            terms.append(((i - 1, i + 2 * k - 1), 1.0))
    return DiagonalHamiltonian.from_terms(n, terms)


def sidelobe_hamiltonian(n: int) -> DiagonalHamiltonian:
    """Diagonal operator whose basis-state energies equal the sidelobe energy."""
    h = labs_hamiltonian(n)
    terms = [(t.indices, 2.0 * t.coeff) for t in h.terms]
    terms.append(((), float(labs_constant(n))))
    return DiagonalHamiltonian.from_terms(n, terms)
