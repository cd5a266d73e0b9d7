"""Gate records shared by the circuit simulator and the synthesis routines."""
from __future__ import annotations

from dataclasses import dataclass
from math import cos, sin

import numpy as np

__all__ = ["Gate", "gate_matrix", "ONE_QUBIT", "PARAMETRIC", "CONTROLLED", "to_netlist", "parse_netlist"]

_R2 = 2 ** -0.5
_T = np.exp(1j * np.pi / 4)

ONE_QUBIT = {
    "I": np.eye(2, dtype=complex),
    "H": np.array([[_R2, _R2], [_R2, -_R2]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "SDG": np.array([[1, 0], [0, -1j]], dtype=complex),
    "T": np.array([[1, 0], [0, _T]], dtype=complex),
    "TDG": np.array([[1, 0], [0, np.conj(_T)]], dtype=complex),
}


def _ry(t):
    return np.array([[cos(t / 2), -sin(t / 2)], [sin(t / 2), cos(t / 2)]], dtype=complex)


def _rz(t):
    return np.array([[np.exp(-0.5j * t), 0], [0, np.exp(0.5j * t)]], dtype=complex)


def _phase(t):
    return np.array([[1, 0], [0, np.exp(1j * t)]], dtype=complex)


PARAMETRIC = {"RY": _ry, "RZ": _rz, "PHASE": _phase}

# kind -> (number of controls or None for "any >= 1", target kind)
CONTROLLED = {
    "CNOT": (1, "X"),
    "CZ": (1, "Z"),
    "CPHASE": (1, "PHASE"),
    "MCPHASE": (None, "PHASE"),
}


@dataclass(frozen=True)
class Gate:
    """A gate acting on ``qubits``; for controlled kinds the target is last.

    >>> Gate("CNOT", (0, 3))   # control 0, target 3
    Gate(kind='CNOT', qubits=(0, 3), angle=None)
    """

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        kind = self.kind.upper()
        qubits = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "qubits", qubits)
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"{kind}: repeated qubit in {qubits}")
        if any(q < 0 for q in qubits):
            raise ValueError(f"{kind}: negative qubit index in {qubits}")
        parametric = kind in PARAMETRIC or kind in ("CPHASE", "MCPHASE")
        if parametric and self.angle is None:
            raise ValueError(f"{kind} needs an angle")
        if not parametric and self.angle is not None:
            raise ValueError(f"{kind} takes no angle")
        if parametric:
            object.__setattr__(self, "angle", float(self.angle))
        if kind in ONE_QUBIT or kind in PARAMETRIC:
            if len(qubits) != 1:
                raise ValueError(f"{kind} acts on exactly one qubit")
        elif kind in CONTROLLED:
            nctrl = CONTROLLED[kind][0]
            if nctrl is None:
                if len(qubits) < 2:
                    raise ValueError(f"{kind} needs at least one control")
            elif len(qubits) != nctrl + 1:
                raise ValueError(f"{kind} acts on exactly {nctrl + 1} qubits")
        else:
            raise ValueError(f"unknown gate kind {kind!r}")

    @property
    def controls(self) -> tuple[int, ...]:
        return self.qubits[:-1] if self.kind in CONTROLLED else ()

    @property
    def target(self) -> int:
        return self.qubits[-1]

    def base_matrix(self) -> np.ndarray:
        """2x2 matrix applied to the target (when all controls are 1)."""
        kind = self.kind
        if kind in CONTROLLED:
            kind = CONTROLLED[kind][1]
        return gate_matrix(kind, self.angle)

    def netlist(self) -> str:
        parts = [self.kind, *map(str, self.qubits)]
        if self.angle is not None:
            parts.append(repr(self.angle))
        return " ".join(parts)


def gate_matrix(kind: str, angle: float | None = None) -> np.ndarray:
    kind = kind.upper()
    if kind in ONE_QUBIT:
        return ONE_QUBIT[kind]
    if kind in PARAMETRIC:
        return PARAMETRIC[kind](angle)
    raise ValueError(f"no 2x2 matrix for {kind!r}")


def to_netlist(gates) -> str:
    return "".join(g.netlist() + "\n" for g in gates)


def parse_netlist(text: str) -> list[Gate]:
    gates = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        kind, *rest = line.split()
        kind = kind.upper()
        takes_angle = kind in PARAMETRIC or kind in ("CPHASE", "MCPHASE")
        try:
            if takes_angle:
                gates.append(Gate(kind, tuple(map(int, rest[:-1])), float(rest[-1])))
            else:
                gates.append(Gate(kind, tuple(map(int, rest))))
        except (ValueError, IndexError) as exc:
            raise ValueError(f"netlist line {lineno}: {exc}") from exc
    return gates
