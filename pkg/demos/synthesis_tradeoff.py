"""
Clifford+T cost of the pipeline
===============================

Solovay-Kitaev error against T count for a small rotation, the same
tradeoff for the multiplexed ancilla rotation, and a per-stage budget.
"""
import numpy as np

from qpeqite.experiments import labs_setup, uar_tradeoff
from qpeqite.gate import gate_matrix
from qpeqite.qpe import RegisterConfig
from qpeqite.synthesis import build_epsilon_net, fit_sk_exponent, resource_report, sk_synthesize

net = build_epsilon_net(10)
print("net size:", len(net))

pts = []
for depth in range(7):
    res = sk_synthesize(gate_matrix("RZ", 0.1), depth, net)
    print(f"depth {depth}: error {res.error:.3e}  T count {res.t_count}")
    if res.t_count:
        pts.append((res.error, res.t_count))
fit = fit_sk_exponent(pts)
print(f"T ~ {fit.prefactor:.3g} * log(1/eps)^{fit.exponent:.2f}")

print("\nmultiplexed ancilla rotation, tau = 10")
for nr in (1, 2, 3):
    for d, t, err in uar_tradeoff(nr, 10.0, range(4), net):
        print(f"  N_R={nr} depth={d}  T={t:6d}  summed error {err:.3e}")

setup = labs_setup(6)
rep = resource_report(setup.hamiltonian, RegisterConfig(5), 10.0, 1e-2, net, 4)
print("\nN=6, N_R=5, eps=1e-2")
for row in rep.rows():
    print("  %-7s rotations=%5d cnots=%5d T=%7d" % row[:4])
print("  all rotations within eps:", rep.eps_reached)
