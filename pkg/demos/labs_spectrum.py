"""
LABS energies by brute force
============================

Sidelobe energies of every +-1 sequence, the Z-monomial Hamiltonian,
and how the two line up.
"""
import numpy as np

from qpeqite import enumerate_spectrum, labs_constant, labs_hamiltonian, sidelobe_energy
from qpeqite.hamiltonians import SpinSequence

# a hand-sized example first
seq = SpinSequence.parse("++-")
print("sidelobe energy of ++- :", sidelobe_energy(seq))

# the Z form is an affine image of the sidelobe energy: E = 2 H + N(N-1)/2
for n in range(4, 13):
    h = labs_hamiltonian(n)
    spec = enumerate_spectrum(h)
    e_opt = 2 * spec.ground_energy + labs_constant(n)
    levels, counts = spec.levels()
    print(f"N={n:2d}  |H|={h.num_terms:4d}  E_opt={e_opt:4.0f}  "
          f"ground states={len(spec.ground_set):3d}  levels={levels.size:3d}  gap={spec.gap:g}")

# degeneracy comes from global flip and reversal, so it is a multiple of 4 for N >= 3
spec = enumerate_spectrum(labs_hamiltonian(10))
print("N=10 ground states:", sorted(spec.ground_set)[:8], "...")
print("energy histogram (lowest five levels):", np.unique(spec.energies, return_counts=True)[1][:5])
