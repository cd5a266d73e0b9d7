"""Clifford+T words, SU(2) helpers and the projective operator-norm distance.

A word ``(g1, g2, ..., gk)`` denotes the operator product ``g1 @ g2 @ ... @ gk``;
as a circuit it is applied right to left.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from ..gate import ONE_QUBIT, gate_matrix

__all__ = [
    "GENERATORS",
    "INVERSE",
    "SynthesisResult",
    "word_matrix",
    "inverse_word",
    "canonicalize",
    "t_count",
    "distance",
    "to_su2",
    "quaternion",
    "from_quaternion",
    "is_unitary",
    "rz",
    "ry",
]

GENERATORS = ("H", "S", "SDG", "T", "TDG", "X", "Y", "Z")
INVERSE = {"H": "H", "S": "SDG", "SDG": "S", "T": "TDG", "TDG": "T", "X": "X", "Y": "Y", "Z": "Z"}

# pairwise rewrites, valid modulo global phase
_REWRITE: dict[tuple[str, str], tuple[str, ...]] = {
    ("T", "T"): ("S",),
    ("TDG", "TDG"): ("SDG",),
    ("S", "S"): ("Z",),
    ("SDG", "SDG"): ("Z",),
    ("S", "Z"): ("SDG",),
    ("Z", "S"): ("SDG",),
    ("SDG", "Z"): ("S",),
    ("Z", "SDG"): ("S",),
    ("X", "Y"): ("Z",),
    ("Y", "X"): ("Z",),
    ("Y", "Z"): ("X",),
    ("Z", "Y"): ("X",),
    ("Z", "X"): ("Y",),
    ("X", "Z"): ("Y",),
}
for _g, _inv in INVERSE.items():
    _REWRITE[(_g, _inv)] = ()


def word_matrix(word) -> np.ndarray:
    if not word:
        return np.eye(2, dtype=complex)
    return reduce(np.matmul, (ONE_QUBIT[g] for g in word))


def inverse_word(word) -> tuple[str, ...]:
    return tuple(INVERSE[g] for g in reversed(word))


def canonicalize(word) -> tuple[str, ...]:
    """Apply the pair rewrites until none matches."""
    stack: list[str] = []
    for g in word:
        if g not in INVERSE:
            raise ValueError(f"{g!r} is not a Clifford+T generator")
        pending = [g]
        while pending:
            s = pending.pop()
            if stack and (stack[-1], s) in _REWRITE:
                top = stack.pop()
                pending.extend(reversed(_REWRITE[(top, s)]))
            else:
                stack.append(s)
    return tuple(stack)


def t_count(word) -> int:
    return sum(1 for g in word if g in ("T", "TDG"))


def is_unitary(u: np.ndarray, atol: float = 1e-12) -> bool:
    u = np.asarray(u)
    return u.shape == (2, 2) and np.allclose(u.conj().T @ u, np.eye(2), atol=atol)


def to_su2(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    return u / np.sqrt(np.linalg.det(u) + 0j)


def quaternion(u: np.ndarray) -> np.ndarray:
    """``(w0, w1, w2, w3)`` with ``u ~ w0 I - i (w1 X + w2 Y + w3 Z)`` (sign-ambiguous)."""
    s = to_su2(u)
    a = 0.5 * (s[0, 0] + np.conj(s[1, 1]))
    b = 0.5 * (s[1, 0] - np.conj(s[0, 1]))
    return np.array([a.real, -b.imag, b.real, -a.imag])


def from_quaternion(q) -> np.ndarray:
    w0, w1, w2, w3 = q
    return np.array([[w0 - 1j * w3, -w2 - 1j * w1], [w2 - 1j * w1, w0 + 1j * w3]], dtype=complex)


def distance(u: np.ndarray, v: np.ndarray) -> float:
    """``min_phi ||u - e^{i phi} v||_2`` for 2x2 unitaries.

    With ``v^dag u`` having eigenphases separated by ``delta`` (short arc) the
    minimum is ``2 sin(delta/4)``; ``delta/2`` is read off the SU(2) form of
    ``v^dag u`` through ``atan2`` so small distances keep full precision.
    """
    q = quaternion(np.conj(np.asarray(v)).T @ np.asarray(u))
    half = np.arctan2(np.linalg.norm(q[1:]), abs(q[0]))
    return float(2.0 * np.sin(half / 2.0))


def rz(theta: float) -> np.ndarray:
    return gate_matrix("RZ", theta)


def ry(theta: float) -> np.ndarray:
    return gate_matrix("RY", theta)


@dataclass(frozen=True)
class SynthesisResult:
    word: tuple[str, ...]
    realized: np.ndarray
    target: np.ndarray
    error: float
    t_count: int

    def to_text(self) -> str:
        body = " ".join(self.word) if self.word else "I"
        return f"{body}\nerror={self.error!r}, t_count={self.t_count}\n"
