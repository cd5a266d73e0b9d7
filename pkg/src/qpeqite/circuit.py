"""Dense statevector simulation of the full QPE-QITE circuit.

Qubit layout for a problem on ``N`` state qubits with an ``N_R``-qubit register:

    state qubits     0 .. N-1
    register qubits  N .. N+N_R-1   (register qubit r contributes 2^r to p)
    ancilla          N+N_R

Qubit ``q`` is bit ``q`` of the amplitude index. This path shares no numerics
with :mod:`qpeqite.qpe` / :mod:`qpeqite.qite` and serves as their oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import pi

import numpy as np

from .gate import Gate
from .hamiltonians import DiagonalHamiltonian
from .qpe import RegisterConfig
from .synthesis.multiplexor import decompose_multiplexed_ry

__all__ = [
    "Statevector",
    "Layout",
    "ZeroBranchError",
    "apply_gate",
    "apply_circuit",
    "qft_gates",
    "evolution_gates",
    "ancilla_angles",
    "build_qpe_qite_circuit",
    "project_ancilla",
    "marginal_distribution",
    "simulate",
    "SimulationResult",
    "MAX_QUBITS",
]

MAX_QUBITS = 22
ZERO_BRANCH = 1e-300


class ZeroBranchError(RuntimeError):
    pass


class Statevector:
    def __init__(self, amplitudes, n_qubits: int | None = None):
        amps = np.asarray(amplitudes, dtype=np.complex128).ravel()
        n = amps.size.bit_length() - 1
        if 1 << n != amps.size:
            raise ValueError("amplitude count must be a power of two")
        if n_qubits is not None and n_qubits != n:
            raise ValueError(f"{amps.size} amplitudes do not describe {n_qubits} qubits")
        self.amplitudes = amps
        self.n_qubits = n

    @classmethod
    def zero(cls, n_qubits: int) -> "Statevector":
        if n_qubits > MAX_QUBITS:
            raise ValueError(f"{n_qubits} qubits exceeds the dense-simulation cap of {MAX_QUBITS}")
        amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        amps[0] = 1.0
        return cls(amps)

    @classmethod
    def basis(cls, n_qubits: int, index: int) -> "Statevector":
        amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        a = self.amplitudes
        return a.real**2 + a.imag**2


def apply_gate(state: Statevector, g: Gate) -> Statevector:
    n = state.n_qubits
    if max(g.qubits) >= n:
        raise ValueError(f"{g.kind} on {g.qubits} out of range for {n} qubits")
    psi = state.amplitudes.reshape((2,) * n).copy()
    axis = lambda q: n - 1 - q  # noqa: E731
    index = [slice(None)] * n
    for c in g.controls:
        index[axis(c)] = 1
    index = tuple(index)
    sub = psi[index]
    t_axis = axis(g.target) - sum(1 for c in g.controls if axis(c) < axis(g.target))
    u = g.base_matrix()
    new = np.moveaxis(np.tensordot(u, sub, axes=([1], [t_axis])), 0, t_axis)
    psi[index] = new
    return Statevector(psi.reshape(-1))


def apply_circuit(state: Statevector, gates) -> Statevector:
    for g in gates:
        state = apply_gate(state, g)
    return state


@dataclass(frozen=True)
class Layout:
    n_state: int
    n_register: int

    @property
    def state_qubits(self) -> tuple[int, ...]:
        return tuple(range(self.n_state))

    @property
    def register_qubits(self) -> tuple[int, ...]:
        return tuple(range(self.n_state, self.n_state + self.n_register))

    @property
    def ancilla(self) -> int:
        return self.n_state + self.n_register

    @property
    def n_qubits(self) -> int:
        return self.n_state + self.n_register + 1


def qft_gates(qubits) -> list[Gate]:
    """``|y> -> 2^{-n/2} sum_p exp(-2 pi i p y / 2^n) |p>`` with ``qubits[r]`` of weight ``2^r``."""
    qubits = tuple(qubits)
    n = len(qubits)
    gates = []
    for j in reversed(range(n)):
        gates.append(Gate("H", (qubits[j],)))
        for k in reversed(range(j)):
            gates.append(Gate("CPHASE", (qubits[k], qubits[j]), -pi / 2 ** (j - k)))
    for j in range(n // 2):
        a, b = qubits[j], qubits[n - 1 - j]
        gates += [Gate("CNOT", (a, b)), Gate("CNOT", (b, a)), Gate("CNOT", (a, b))]
    return gates


def evolution_gates(h: DiagonalHamiltonian, cfg: RegisterConfig, layout: Layout) -> list[Gate]:
    """Register-controlled ``exp(2 pi i l y H / 2^N_R)``, one block per register qubit and term.

    A Z monomial is folded onto its last qubit with a CNOT parity ladder, then
    ``exp(i theta Z)`` controlled on register qubit ``r`` becomes
    ``PHASE(theta)`` on ``r`` followed by ``CPHASE(-2 theta)``.
    """
    m = cfg.size
    gates: list[Gate] = []
    for r, reg in enumerate(layout.register_qubits):
        unit = 2 * pi * cfg.scale * (1 << r) / m
        offset = -h.alpha
        for term in h.terms:
            if not term.indices:
                offset += term.coeff
                continue
            theta = unit * term.coeff
            *rest, last = term.indices
            ladder = [Gate("CNOT", (q, last)) for q in rest]
            gates += ladder
            gates.append(Gate("PHASE", (reg,), theta))
            gates.append(Gate("CPHASE", (reg, last), -2 * theta))
            gates += ladder[::-1]
        if offset:
            gates.append(Gate("PHASE", (reg,), unit * offset))
    return gates


def ancilla_angles(n_register: int, tau: float) -> np.ndarray:
    """``RY`` angles ``2 e^{-p tau}`` putting ``sin(e^{-p tau})`` on ancilla ``|1>``."""
    p = np.arange(1 << n_register, dtype=np.float64)
    return 2.0 * np.exp(-p * tau)


def build_qpe_qite_circuit(h: DiagonalHamiltonian, cfg: RegisterConfig, tau: float) -> list[Gate]:
    layout = Layout(h.n_qubits, cfg.n_register)
    if layout.n_qubits > MAX_QUBITS:
        raise ValueError(
            f"circuit needs {layout.n_qubits} qubits, above the dense-simulation cap of {MAX_QUBITS}"
        )
    gates = [Gate("H", (q,)) for q in layout.state_qubits + layout.register_qubits]
    gates += evolution_gates(h, cfg, layout)
    gates += qft_gates(layout.register_qubits)
    gates += decompose_multiplexed_ry(
        ancilla_angles(cfg.n_register, tau), layout.register_qubits, layout.ancilla
    )
    return gates


def project_ancilla(state: Statevector, outcome: int, ancilla: int | None = None):
    """Project one qubit (default: the highest) onto ``outcome``.

    Returns the renormalized post-measurement state and the branch probability.
    """
    n = state.n_qubits
    if ancilla is None:
        ancilla = n - 1
    if not 0 <= ancilla < n:
        raise ValueError(f"ancilla index {ancilla} out of range")
    if outcome not in (0, 1):
        raise ValueError("outcome must be 0 or 1")
    idx = np.arange(1 << n)
    keep = ((idx >> ancilla) & 1) == outcome
    amps = np.where(keep, state.amplitudes, 0.0)
    prob = float(np.sum(amps.real**2 + amps.imag**2))
    if prob < ZERO_BRANCH:
        raise ZeroBranchError(f"branch {outcome} of qubit {ancilla} has probability {prob:g}")
    return Statevector(amps / np.sqrt(prob)), prob


def marginal_distribution(state: Statevector, qubits) -> np.ndarray:
    """Distribution over ``qubits``; ``qubits[k]`` contributes ``2^k`` to the outcome."""
    qubits = tuple(qubits)
    n = state.n_qubits
    if len(set(qubits)) != len(qubits) or any(not 0 <= q < n for q in qubits):
        raise ValueError(f"invalid qubit subset {qubits}")
    idx = np.arange(1 << n)
    key = np.zeros(1 << n, dtype=np.int64)
    for k, q in enumerate(qubits):
        key |= ((idx >> q) & 1) << k
    return np.bincount(key, weights=state.probabilities(), minlength=1 << len(qubits))


@dataclass
class SimulationResult:
    register_distribution: np.ndarray
    success_probability: float
    postselected_register: np.ndarray | None
    postselected_state_distribution: np.ndarray | None


def simulate(h: DiagonalHamiltonian, cfg: RegisterConfig, tau: float) -> SimulationResult:
    """Run the full circuit from ``|0...0>`` and read off the closed-form observables."""
    layout = Layout(h.n_qubits, cfg.n_register)
    gates = build_qpe_qite_circuit(h, cfg, tau)
    final = apply_circuit(Statevector.zero(layout.n_qubits), gates)
    reg = marginal_distribution(final, layout.register_qubits)
    try:
        post, prob = project_ancilla(final, 1, layout.ancilla)
    except ZeroBranchError:
        return SimulationResult(reg, 0.0, None, None)
    return SimulationResult(
        reg,
        prob,
        marginal_distribution(post, layout.register_qubits),
        marginal_distribution(post, layout.state_qubits),
    )
