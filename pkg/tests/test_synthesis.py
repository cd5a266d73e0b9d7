import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qpeqite.gate import gate_matrix
from qpeqite.hamiltonians import DiagonalHamiltonian, labs_hamiltonian
from qpeqite.qpe import RegisterConfig
from qpeqite.synthesis import (
    GENERATORS,
    build_epsilon_net,
    canonicalize,
    canonicalize_gates,
    decompose_multiplexed_ry,
    distance,
    fit_sk_exponent,
    gate_counts,
    group_commutator_decompose,
    inverse_word,
    multiplexed_ry_matrix,
    resource_report,
    sk_synthesize,
    t_count,
    uar_taylor_order,
    word_matrix,
)
from qpeqite.synthesis.resources import RotationSynthesizer

from oracles import circuit_unitary, equal_up_to_phase

words = st.lists(st.sampled_from(GENERATORS), max_size=30)

# (error, t_count) for Rz(0.1) with the default net, frozen on first derivation
RZ01_GOLDEN = [
    (0.0499947918294, 0),
    (0.0499947918294, 0),
    (0.0239211310864, 58),
    (0.0053981450782, 340),
    (0.000707136371104, 1536),
]


def _svd_distance(u, v):
    """Grid-free reference: minimize ||u - e^{i phi} v|| over phi analytically via eigenphases."""
    ph = np.angle(np.linalg.eigvals(np.conj(v).T @ u))
    mid = np.angle(np.exp(1j * ph[0]) + np.exp(1j * ph[1]))
    return float(np.linalg.svd(u - np.exp(1j * mid) * v, compute_uv=False)[0])


@given(words)
def test_canonicalize_preserves_unitary(word):
    w = canonicalize(word)
    assert equal_up_to_phase(word_matrix(w), word_matrix(word), 1e-10)
    assert canonicalize(w) == w
    for a, b in zip(w, w[1:]):
        assert inverse_word((a,)) != (b,)


@given(words)
def test_inverse_word(word):
    assert equal_up_to_phase(word_matrix(word) @ word_matrix(inverse_word(word)), np.eye(2, dtype=complex), 1e-10)


def test_canonicalize_examples():
    assert canonicalize(("T", "T")) == ("S",)
    assert canonicalize(("S", "S")) == ("Z",)
    assert canonicalize(("T", "TDG", "H", "H")) == ()
    assert t_count(("T", "H", "TDG", "S")) == 2
    with pytest.raises(ValueError):
        canonicalize(("Q",))


@settings(max_examples=50)
@given(st.floats(-7, 7), st.floats(-7, 7), st.floats(-3, 3))
def test_distance_matches_eig_svd(a, b, c):
    u = gate_matrix("RZ", a) @ gate_matrix("RY", b)
    v = gate_matrix("RY", c) @ gate_matrix("RZ", a + 0.01)
    assert abs(distance(u, v) - _svd_distance(u, v)) < 1e-12
    assert distance(u, np.exp(0.3j) * u) < 1e-7


def test_net_examples(net):
    small = build_epsilon_net(1)
    assert len(small) == 9
    assert set(small.words) == {()} | {(g,) for g in GENERATORS}
    sizes = [len(build_epsilon_net(k)) for k in range(1, 6)]
    assert sizes == sorted(sizes) and len(set(sizes)) == len(sizes)
    assert ("T",) in net.words
    for bad in (0, 17):
        with pytest.raises(ValueError):
            build_epsilon_net(bad)


def test_net_entries_distinct_modulo_phase(net):
    q = net.quaternions
    overlap = np.abs(q @ q.T)
    np.fill_diagonal(overlap, 0)
    assert overlap.max() < 1 - 1e-12


def test_exact_targets(net):
    res = sk_synthesize(gate_matrix("H"), 3, net)
    assert res.error < 1e-12 and res.t_count == 0
    tht = gate_matrix("T") @ gate_matrix("H") @ gate_matrix("T")
    res = sk_synthesize(np.exp(0.7j) * tht, 0, net)
    assert res.error < 1e-7
    res = sk_synthesize(gate_matrix("T"), 0, net)
    assert res.error < 1e-7 and res.t_count == 1


def test_rz01_golden(net):
    for depth, (err, tc) in enumerate(RZ01_GOLDEN):
        res = sk_synthesize(gate_matrix("RZ", 0.1), depth, net)
        assert res.error == pytest.approx(err, rel=1e-9)
        assert res.t_count == tc
        assert res.error > 0
    with pytest.raises(ValueError):
        sk_synthesize(gate_matrix("RZ", 0.1), 9, net)


def test_group_commutator():
    rng = np.random.default_rng(5)
    for _ in range(20):
        u = gate_matrix("RZ", rng.uniform(-0.3, 0.3)) @ gate_matrix("RY", rng.uniform(-0.3, 0.3))
        v, w = group_commutator_decompose(u)
        comm = v @ w @ v.conj().T @ w.conj().T
        assert equal_up_to_phase(comm, u, 1e-10)
        assert abs(distance(v, np.eye(2)) - distance(w, np.eye(2))) < 1e-10


_NETS = {}


def _small_net():
    if "n" not in _NETS:
        _NETS["n"] = build_epsilon_net(6)
    return _NETS["n"]


@settings(max_examples=15, deadline=None)
@given(st.floats(-np.pi, np.pi), st.floats(-np.pi, np.pi))
def test_results_rederivable(a, b):
    net = _small_net()
    u = gate_matrix("RZ", a) @ gate_matrix("RY", b)
    prev = np.inf
    for depth in range(3):
        res = sk_synthesize(u, depth, net)
        assert np.allclose(res.realized, word_matrix(res.word), atol=1e-12)
        assert abs(res.error - _svd_distance(res.realized, u)) < 1e-12
        assert res.t_count == t_count(res.word)
        assert res.error <= prev
        prev = res.error


def test_result_text(net):
    text = sk_synthesize(gate_matrix("T"), 0, net).to_text()
    assert text.startswith("T\nerror=") and "t_count=1" in text


def test_multiplexor_two_block_example():
    g = decompose_multiplexed_ry([0.4, 1.0])
    assert [x.kind for x in g] == ["RY", "CNOT", "RY", "CNOT"]
    assert g[0].angle == pytest.approx(0.7) and g[2].angle == pytest.approx(-0.3)


@pytest.mark.parametrize("k", range(0, 6))
def test_multiplexor_counts_and_equal_angles(k):
    gates = decompose_multiplexed_ry(np.full(1 << k, 0.9))
    counts = gate_counts(gates)
    assert counts["RY"] == 1 << k
    assert counts["cnots"] == (1 << k if k else 0)
    simplified = canonicalize_gates(gates)
    assert [(x.kind, x.angle) for x in simplified] == [("RY", pytest.approx(0.9))]


def test_multiplexor_custom_qubits_and_errors():
    angles = [0.1, 0.2, 0.3, 0.4]
    gates = decompose_multiplexed_ry(angles, controls=(2, 0), target=1)
    u = circuit_unitary(gates, 3)
    for reg in range(4):
        x = ((reg & 1) << 2) | ((reg >> 1) & 1)
        blk = u[np.ix_([x, x | 2], [x, x | 2])]
        assert np.allclose(blk, gate_matrix("RY", angles[reg]))
    with pytest.raises(ValueError):
        decompose_multiplexed_ry([0.1, 0.2, 0.3])
    with pytest.raises(ValueError):
        decompose_multiplexed_ry(angles, controls=(0,), target=2)


def test_canonicalize_gates_keeps_unitary():
    rng = np.random.default_rng(9)
    gates = decompose_multiplexed_ry(rng.uniform(-3, 3, 8)) + decompose_multiplexed_ry(rng.uniform(-3, 3, 8))
    assert np.allclose(circuit_unitary(canonicalize_gates(gates), 4), circuit_unitary(gates, 4), atol=1e-12)


def test_taylor_orders():
    g0 = uar_taylor_order(0, 3, 0.7)
    assert gate_counts(g0)["rotations"] == 1 and gate_counts(g0)["cnots"] == 0
    assert gate_counts(uar_taylor_order(1, 4, 0.2))["cnots"] == 8
    u0 = circuit_unitary(uar_taylor_order(0, 3, 0.0), 4)
    u1 = circuit_unitary(uar_taylor_order(1, 3, 0.0), 4)
    assert np.allclose(u0, u1)
    # order 1 realizes RY(2 (1 - p tau)) exactly
    tau = 0.05
    target = multiplexed_ry_matrix(2 * (1 - np.arange(8) * tau))
    assert np.allclose(circuit_unitary(uar_taylor_order(1, 3, tau), 4), target, atol=1e-12)
    with pytest.raises(ValueError):
        uar_taylor_order(2, 3, 0.1)


def test_resource_report_formulas(net):
    h8 = labs_hamiltonian(8)
    n_terms = len(h8.terms)
    r5 = resource_report(h8, RegisterConfig(5), 1.0, 0.05, net, 3)
    assert r5.qpe_rotations == 5 * n_terms and r5.qft_rotations == 10 and r5.uar_rotations == 32
    r10 = resource_report(h8, RegisterConfig(10), 1.0, 0.05, net, 3)
    assert r10.qpe_rotations == 2 * r5.qpe_rotations
    assert r5.t_total == sum(s.t_count for s in r5.stages)
    assert r10.t_total >= r5.t_total
    r_small = resource_report(labs_hamiltonian(5), RegisterConfig(5), 1.0, 0.05, net, 3)
    assert r_small.t_total <= r5.t_total
    zero = resource_report(DiagonalHamiltonian(3, ()), RegisterConfig(2), 1.0, 0.05, net, 2)
    assert zero.qpe_rotations == 0


def test_resource_report_flags_and_csv(net):
    rep = resource_report(labs_hamiltonian(4), RegisterConfig(2), 1.0, 1e-9, net, 1, uar=0)
    assert not rep.eps_reached
    buf = io.StringIO()
    rep.to_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "stage,rotations,cnots,t_count,eps_used"
    assert lines[-1].startswith("total,")
    with pytest.raises(ValueError):
        resource_report(labs_hamiltonian(4), RegisterConfig(2), 1.0, 0.0, net, 1)
    with pytest.raises(ValueError):
        resource_report(labs_hamiltonian(4), RegisterConfig(2), 1.0, 0.1, net, 1, uar=2)


def test_rotation_synthesizer_reaches_eps(net):
    synth = RotationSynthesizer(net, 1e-3, 6)
    res = synth("RZ", 0.1)
    assert res.error <= 1e-3
    assert synth("RZ", 0.1 + 4 * np.pi) is res


def test_fit_sk_exponent():
    eps = np.array([1e-2, 1e-3, 1e-4, 1e-5, 1e-6])
    fit = fit_sk_exponent(zip(eps, np.log(1 / eps) ** 4))
    assert abs(fit.exponent - 4.0) < 1e-6
    assert abs(fit_sk_exponent([(e, 7.0) for e in eps]).exponent) < 1e-12
    with pytest.raises(ValueError):
        fit_sk_exponent([(1e-2, 3), (1e-3, 4), (1e-4, 5)])
    with pytest.raises(ValueError):
        fit_sk_exponent([(1e-2, 3), (1e-2, 4), (1e-4, 5), (1e-5, 6)])
    with pytest.raises(ValueError):
        fit_sk_exponent([(1e-2, 3), (1e-3, 0), (1e-4, 5), (1e-5, 6)])
