"""Solovay-Kitaev approximation of single-qubit unitaries over Clifford+T.

Base approximations come from a breadth-first epsilon-net of short words; the
recursion corrects the residual with a balanced group commutator.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..gate import ONE_QUBIT
from .clifford_t import (
    GENERATORS,
    SynthesisResult,
    canonicalize,
    distance,
    from_quaternion,
    inverse_word,
    quaternion,
    t_count,
    word_matrix,
)

__all__ = ["EpsilonNet", "build_epsilon_net", "sk_synthesize", "group_commutator_decompose"]

MAX_NET_LENGTH = 16
MAX_DEPTH = 8
KEY_RESOLUTION = 1e-6
DEFAULT_NET_LENGTH = 10


def _key(q: np.ndarray) -> tuple[int, ...]:
    r = np.round(q / KEY_RESOLUTION).astype(np.int64)
    nz = np.flatnonzero(r)
    if nz.size and r[nz[0]] < 0:
        r = -r
    return tuple(r.tolist())


@dataclass(frozen=True)
class EpsilonNet:
    """Words in breadth-first (length, then lexicographic generator) order."""

    words: tuple[tuple[str, ...], ...]
    matrices: np.ndarray
    quaternions: np.ndarray
    max_length: int

    def __len__(self) -> int:
        return len(self.words)

    def nearest(self, u: np.ndarray) -> int:
        q = quaternion(u)
        score = np.abs(self.quaternions @ q)
        best = score.max()
        return int(np.flatnonzero(score >= best - 1e-12)[0])


def build_epsilon_net(max_length: int = DEFAULT_NET_LENGTH) -> EpsilonNet:
    """All distinct unitaries (modulo global phase) reachable by words of length <= max_length."""
    if not 1 <= max_length <= MAX_NET_LENGTH:
        raise ValueError(f"max_length must lie in [1, {MAX_NET_LENGTH}], got {max_length}")
    ident = np.eye(2, dtype=complex)
    words = [()]
    mats = [ident]
    seen = {_key(quaternion(ident))}
    frontier = [((), ident)]
    for _ in range(max_length):
        nxt = []
        for word, mat in frontier:
            for g in GENERATORS:
                w = word + (g,)
                if canonicalize(w) != w:
                    continue
                m = mat @ ONE_QUBIT[g]
                k = _key(quaternion(m))
                if k in seen:
                    continue
                seen.add(k)
                words.append(w)
                mats.append(m)
                nxt.append((w, m))
        frontier = nxt
    mats = np.array(mats)
    quats = np.array([quaternion(m) for m in mats])
    return EpsilonNet(tuple(words), mats, quats, max_length)


def _rotation(axis, angle) -> np.ndarray:
    axis = np.asarray(axis, dtype=float)
    return from_quaternion(np.concatenate([[np.cos(angle / 2)], np.sin(angle / 2) * axis]))


def _axis_angle(u: np.ndarray) -> tuple[np.ndarray, float]:
    q = quaternion(u)
    if q[0] < 0:
        q = -q
    vec = q[1:]
    s = np.linalg.norm(vec)
    if s == 0.0:
        return np.array([0.0, 0.0, 1.0]), 0.0
    return vec / s, float(2.0 * np.arctan2(s, q[0]))


def _align(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """SU(2) element whose Bloch rotation takes unit vector ``a`` to ``b``."""
    cross = np.cross(a, b)
    s = np.linalg.norm(cross)
    c = float(np.dot(a, b))
    if s < 1e-15:
        if c > 0:
            return np.eye(2, dtype=complex)
        perp = np.cross(a, [1.0, 0.0, 0.0])
        if np.linalg.norm(perp) < 1e-8:
            perp = np.cross(a, [0.0, 1.0, 0.0])
        return _rotation(perp / np.linalg.norm(perp), np.pi)
    return _rotation(cross / s, float(np.arctan2(s, c)))


def group_commutator_decompose(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``(V, W)`` with ``V W V^dag W^dag = u`` modulo phase, both rotations by the same small angle."""
    axis, theta = _axis_angle(u)
    if theta == 0.0:
        ident = np.eye(2, dtype=complex)
        return ident, ident
    z = np.sqrt(max(0.0, (1.0 - np.cos(theta / 2.0)) / 2.0))
    phi = 2.0 * np.arcsin(np.sqrt(z))
    v = _rotation([1.0, 0.0, 0.0], phi)
    w = _rotation([0.0, 1.0, 0.0], phi)
    comm = v @ w @ v.conj().T @ w.conj().T
    comm_axis, _ = _axis_angle(comm)
    s = _align(comm_axis, axis)
    sd = s.conj().T
    return s @ v @ sd, s @ w @ sd


def _sk(u: np.ndarray, depth: int, net: EpsilonNet):
    if depth == 0:
        i = net.nearest(u)
        return net.words[i], net.matrices[i]
    word, mat = _sk(u, depth - 1, net)
    v, w = group_commutator_decompose(u @ mat.conj().T)
    vw, vm = _sk(v, depth - 1, net)
    ww, wm = _sk(w, depth - 1, net)
    cand_word = canonicalize(vw + ww + inverse_word(vw) + inverse_word(ww) + word)
    cand_mat = vm @ wm @ vm.conj().T @ wm.conj().T @ mat
    # a refinement step never replaces a better approximation
    if distance(cand_mat, u) < distance(mat, u):
        return cand_word, cand_mat
    return word, mat


def sk_synthesize(target: np.ndarray, depth: int, net: EpsilonNet) -> SynthesisResult:
    """Approximate ``target`` with recursion depth ``depth`` (0 = nearest net word)."""
    if not 0 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must lie in [0, {MAX_DEPTH}], got {depth}")
    target = np.asarray(target, dtype=complex)
    word, _ = _sk(target, depth, net)
    realized = word_matrix(word)
    return SynthesisResult(word, realized, target, distance(realized, target), t_count(word))
