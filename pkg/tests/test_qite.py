import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qpeqite.experiments import labs_setup, tau_grid
from qpeqite.hamiltonians import DiagonalHamiltonian, labs_hamiltonian, with_offset
from qpeqite.qite import ancilla_weights, apply_qite, min_tau, normalize_tau, overlap_without_qite, qite_sweep
from qpeqite.qpe import InitialState, RegisterConfig, run_qpe


@pytest.fixture(scope="module")
def labs3():
    setup = labs_setup(3)
    cfg = RegisterConfig(4)
    return setup, cfg, setup.qpe(cfg)


def test_tau_zero_is_identity(labs3):
    setup, _, qpe = labs3
    out = apply_qite(qpe, setup.ground_set, 0.0)
    assert abs(out.success_probability - np.sin(1.0) ** 2) < 1e-15
    assert np.allclose(out.postselected_weights(), qpe.joint_weights(), atol=1e-15)
    assert out.ground_overlap == pytest.approx(overlap_without_qite(qpe, setup.ground_set), abs=1e-15)


def test_large_tau_projects_to_ground(labs3):
    setup, _, qpe = labs3
    out = apply_qite(qpe, setup.ground_set, 800.0)
    assert np.array_equal(out.postselected_register, np.eye(16)[0])
    assert out.ground_overlap == 1.0


def test_invariants_against_dense_sum(labs3):
    setup, cfg, qpe = labs3
    for tau in (0.3, 2.0):
        out = apply_qite(qpe, setup.ground_set, tau)
        f = np.sin(np.exp(-np.arange(16) * tau)) ** 2
        joint = qpe.joint_weights()
        assert out.success_probability == pytest.approx(float((joint * f).sum()), abs=1e-14)
        post = out.postselected_weights()
        assert post.sum() == pytest.approx(1.0, abs=1e-10)
        ground = sorted(setup.ground_set)
        assert out.ground_overlap == pytest.approx(post[ground].sum(), abs=1e-12)
        # relative weights inside each register bin are untouched
        i, j = ground[0], next(k for k in range(8) if k not in setup.ground_set)
        mask = joint[j] > 1e-12
        assert np.allclose(post[i, mask] / post[j, mask], joint[i, mask] / joint[j, mask])


def test_sweep_monotone_and_crosses(labs3):
    setup, _, qpe = labs3
    outs = qite_sweep(qpe, setup.ground_set, tau_grid(3, 1.0, 101), jobs=3)
    overlap = [o.ground_overlap for o in outs]
    success = [o.success_probability for o in outs]
    assert all(b >= a for a, b in zip(overlap, overlap[1:]))
    assert all(b <= a for a, b in zip(success, success[1:]))
    p0 = qpe.register_distribution[0] * np.sin(1.0) ** 2
    assert all(s >= p0 - 1e-15 for s in success)
    assert any(o >= 0.999 for o in overlap)
    assert [o.tau for o in outs] == list(tau_grid(3, 1.0, 101))


def test_overlap_without_qite_examples():
    setup = labs_setup(4)
    qpe = setup.qpe(RegisterConfig(3))
    assert overlap_without_qite(qpe, setup.ground_set) == len(setup.ground_set) / 16
    g = min(setup.ground_set)
    qpe_b = run_qpe(setup.hamiltonian, InitialState.basis(4, g), RegisterConfig(3))
    assert overlap_without_qite(qpe_b, setup.ground_set) == 1.0
    h = DiagonalHamiltonian.from_terms(3, [((0,), 1.0)])
    q = run_qpe(h, InitialState.uniform(3), RegisterConfig(2))
    assert overlap_without_qite(q, {0, 2, 4, 6}) == 0.5


def test_errors(labs3):
    _, _, qpe = labs3
    with pytest.raises(ValueError):
        apply_qite(qpe, set(), 1.0)
    with pytest.raises(ValueError):
        apply_qite(qpe, {0}, -1.0)


def test_min_tau_trivial_zero():
    h = DiagonalHamiltonian(1, ())
    res = min_tau(h, InitialState.uniform(1), RegisterConfig(1), {0, 1}, 0.999, [0.0, 1.0])
    assert res.found and res.tau == 0.0


def test_min_tau_threshold_one_not_found():
    setup = labs_setup(4)
    cfg = RegisterConfig(3)
    res = min_tau(setup.hamiltonian, InitialState.uniform(4), cfg, setup.ground_set, 1.0, tau_grid(4, 1.0, 11))
    assert not res.found and res.tau is None
    # the overlap may round to 1.0 while the excited fraction stays positive
    assert res.max_overlap > 0.999


def test_min_tau_bisection_brackets(labs3):
    setup, cfg, qpe = labs3
    grid = tau_grid(3, 1.0, 101)
    res = min_tau(setup.hamiltonian, InitialState.uniform(3), cfg, setup.ground_set, 0.999, grid, qpe=qpe)
    assert res.found and res.outcome.ground_overlap >= 0.999
    below = apply_qite(qpe, setup.ground_set, res.tau * (1 - 2e-6))
    assert below.ground_overlap < 0.999
    assert res.tau_normalized == normalize_tau(res.tau, 3) == res.tau / 7


def test_min_tau_validation(labs3):
    setup, cfg, qpe = labs3
    b = InitialState.uniform(3)
    for thr in (0.0, 1.5):
        with pytest.raises(ValueError):
            min_tau(setup.hamiltonian, b, cfg, setup.ground_set, thr, [0.0])
    with pytest.raises(ValueError):
        min_tau(setup.hamiltonian, b, cfg, setup.ground_set, 0.9, [1.0, 0.5])


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 6), st.integers(1, 5), st.floats(0, 10), st.floats(0, 10))
def test_overlap_monotone_property(n, nr, t1, t2):
    setup = labs_setup(n)
    qpe = setup.qpe(RegisterConfig(nr))
    lo, hi = sorted((t1, t2))
    a = apply_qite(qpe, setup.ground_set, lo).ground_overlap
    b = apply_qite(qpe, setup.ground_set, hi).ground_overlap
    assert b >= a - 1e-12


def test_ancilla_weights_exact():
    w = ancilla_weights(3, 0.5)
    assert np.array_equal(w, np.sin(np.exp(-np.arange(8) * 0.5)) ** 2)
