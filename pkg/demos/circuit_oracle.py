"""
The circuit against the closed form
===================================

Build the full gate list (Hadamards, register-controlled phases, QFT,
multiplexed ancilla rotation), simulate it, and compare with the
closed-form register statistics.
"""
import numpy as np

from qpeqite.circuit import build_qpe_qite_circuit, simulate
from qpeqite.experiments import labs_setup
from qpeqite.gate import to_netlist
from qpeqite.qite import apply_qite
from qpeqite.qpe import RegisterConfig
from qpeqite.synthesis import gate_counts

setup = labs_setup(3)
cfg = RegisterConfig(4)
gates = build_qpe_qite_circuit(setup.hamiltonian, cfg, 1.0)
print(len(gates), "gates:", gate_counts(gates))
print(to_netlist(gates[:12]), "...")

qpe = setup.qpe(cfg)
for tau in (0.0, 1.0, 5.0, 25.0):
    sim = simulate(setup.hamiltonian, cfg, tau)
    ref = apply_qite(qpe, setup.ground_set, tau)
    tv = 0.5 * np.abs(sim.register_distribution - qpe.register_distribution).sum()
    print(f"tau={tau:5.1f}  TV={tv:.2e}  success sim/closed = "
          f"{sim.success_probability:.12f} / {ref.success_probability:.12f}")
