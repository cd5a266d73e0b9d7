"""Multiplexed RY rotations and Taylor-truncated controlled-QITE circuits."""
from __future__ import annotations

from collections import Counter

import numpy as np

from ..gate import Gate

__all__ = [
    "decompose_multiplexed_ry",
    "multiplexed_ry_matrix",
    "canonicalize_gates",
    "uar_taylor_order",
    "gate_counts",
]


def _gray(i: int) -> int:
    return i ^ (i >> 1)


def decompose_multiplexed_ry(angles, controls=None, target=None) -> list[Gate]:
    """Gray-code circuit applying ``RY(angles[p])`` to ``target`` when the controls read ``p``.

    ``controls[r]`` carries weight ``2^r``. Defaults: controls ``0..k-1``, target ``k``.
    The circuit has exactly ``2^k`` RY gates and, for ``k >= 1``, ``2^k`` CNOTs.
    """
    angles = np.asarray(angles, dtype=np.float64).ravel()
    size = angles.size
    k = size.bit_length() - 1
    if size == 0 or 1 << k != size:
        raise ValueError(f"angle count must be a power of two, got {size}")
    if controls is None:
        controls = tuple(range(k))
        target = k if target is None else target
    controls = tuple(controls)
    if len(controls) != k:
        raise ValueError(f"{size} angles need {k} controls, got {len(controls)}")
    if target is None:
        raise ValueError("target qubit required when controls are given")
    if k == 0:
        return [Gate("RY", (target,), angles[0])]

    p = np.arange(size)
    signs = np.array(
        [1.0 - 2.0 * (np.bitwise_count(p & _gray(i)) & 1) for i in range(size)]
    )
    thetas = signs @ angles / size
    gates = []
    for i in range(size):
        gates.append(Gate("RY", (target,), thetas[i]))
        flip = _gray(i) ^ _gray((i + 1) % size)
        gates.append(Gate("CNOT", (controls[flip.bit_length() - 1], target)))
    return gates


def multiplexed_ry_matrix(angles) -> np.ndarray:
    """Block-diagonal ``sum_p |p><p| (x) RY(angles[p])``; controls are the low bits, target the top bit."""
    angles = np.asarray(angles, dtype=np.float64).ravel()
    size = angles.size
    u = np.zeros((2 * size, 2 * size), dtype=complex)
    for p, a in enumerate(angles):
        c, s = np.cos(a / 2), np.sin(a / 2)
        u[p, p], u[p, p + size] = c, -s
        u[p + size, p], u[p + size, p + size] = s, c
    return u


def canonicalize_gates(gates, atol: float = 1e-12) -> list[Gate]:
    """Merge adjacent RY on one qubit, drop zero rotations, cancel commuting CNOT runs."""
    out = list(gates)
    changed = True
    while changed:
        changed = False
        merged: list[Gate] = []
        for g in out:
            if g.kind == "RY" and abs(g.angle) <= atol:
                changed = True
                continue
            prev = merged[-1] if merged else None
            if prev is not None and g.kind == "RY" and prev.kind == "RY" and prev.qubits == g.qubits:
                merged[-1] = Gate("RY", g.qubits, prev.angle + g.angle)
                changed = True
                continue
            merged.append(g)
        out = []
        i = 0
        while i < len(merged):
            g = merged[i]
            if g.kind != "CNOT":
                out.append(g)
                i += 1
                continue
            j = i
            while j < len(merged) and merged[j].kind == "CNOT" and merged[j].target == g.target:
                j += 1
            parity = Counter(merged[m].qubits[0] for m in range(i, j))
            order = list(dict.fromkeys(merged[m].qubits[0] for m in range(i, j)))
            kept = [Gate("CNOT", (c, g.target)) for c in order if parity[c] % 2]
            if len(kept) != j - i:
                changed = True
            out += kept
            i = j
    return out


def uar_taylor_order(order: int, n_register: int, tau: float, controls=None, target=None) -> list[Gate]:
    """Truncated ``exp(i e^{-p tau} Y)`` ancilla stage (in the RY(2 x) convention).

    Order 0 keeps ``e^{-p tau} ~ 1``: one RY(2). Order 1 keeps ``1 - p tau``: RY(2)
    then, per register qubit of weight ``2^r``, a controlled RY(-2 tau 2^r) built
    from two RY and two CNOT.
    """
    if order not in (0, 1):
        raise ValueError(f"only Taylor orders 0 and 1 have closed-form circuits, got {order}")
    if controls is None:
        controls = tuple(range(n_register))
        target = n_register if target is None else target
    controls = tuple(controls)
    if len(controls) != n_register or target is None:
        raise ValueError("need one control per register qubit and a target")
    gates = [Gate("RY", (target,), 2.0)]
    if order == 1:
        for r, c in enumerate(controls):
            half = -tau * (1 << r)
            gates += [
                Gate("RY", (target,), half),
                Gate("CNOT", (c, target)),
                Gate("RY", (target,), -half),
                Gate("CNOT", (c, target)),
            ]
    return gates


def gate_counts(gates) -> dict[str, int]:
    counts = Counter(g.kind for g in gates)
    rotations = sum(counts[k] for k in ("RY", "RZ", "PHASE", "CPHASE", "MCPHASE"))
    return {"cnots": counts["CNOT"], "rotations": rotations, **counts}
