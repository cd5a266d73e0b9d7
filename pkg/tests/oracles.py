"""Independent reference computations shared by the tests."""
import numpy as np

from qpeqite.circuit import Statevector, apply_circuit


def all_spin_sequences(n):
    """Every +-1 sequence of length n, row x matching basis index x (qubit j = bit j)."""
    x = np.arange(1 << n)[:, None]
    bits = (x >> np.arange(n)[None, :]) & 1
    return 1 - 2 * bits


def brute_sidelobe(n):
    """Sidelobe energies of all 2^n sequences via numpy.correlate, one row at a time for small n."""
    seqs = all_spin_sequences(n)
    if n <= 10:
        out = []
        for s in seqs:
            full = np.correlate(s, s, mode="full")
            out.append(int(np.sum(full[n:] ** 2)))
        return np.array(out)
    e = np.zeros(len(seqs), dtype=np.int64)
    for k in range(1, n):
        a = np.sum(seqs[:, :-k] * seqs[:, k:], axis=1)
        e += a * a
    return e


def circuit_unitary(gates, n_qubits):
    cols = [apply_circuit(Statevector.basis(n_qubits, i), gates).amplitudes for i in range(1 << n_qubits)]
    return np.array(cols).T


def equal_up_to_phase(a, b, atol):
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    phase = a[idx] / b[idx]
    return abs(abs(phase) - 1) < atol and np.allclose(a, phase * b, atol=atol)


def expanded_sidelobe_monomials(n):
    """Expand sum_k A_k^2 pair by pair; returns {sorted odd-index tuple: coefficient}.

    Shares nothing with the loop bounds of the Z-monomial construction.
    """
    acc = {}
    for k in range(1, n):
        pairs = [(i, i + k) for i in range(n - k)]
        for a in pairs:
            for b in pairs:
                odd = set()
                for q in a + b:
                    odd ^= {q}
                key = tuple(sorted(odd))
                acc[key] = acc.get(key, 0) + 1
    return {k: v for k, v in acc.items() if v}


def direct_amplitude(scaled_energy, p, m):
    y = np.arange(m)
    return np.sum(np.exp(2j * np.pi * (scaled_energy - p) * y / m))
