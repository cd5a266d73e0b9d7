"""
Register size needed to resolve the ground state
================================================

For each N, the fewest register qubits that hold the whole shifted
spectrum without wraparound while keeping the ground bin apart from the
first excited bin, and a fit against ln N.
"""
from qpeqite.experiments import fit_nr_scaling, nr_scaling
from qpeqite.spectrum import fit_gap_exponent

rows = nr_scaling(range(4, 19), jobs=2)
for r in rows:
    print(f"N={r.n:2d}  E0={r.ground_energy:6.0f}  Emax={r.max_energy:6.0f}  gap={r.gap:g}  N_R={r.n_register}")

fit = fit_nr_scaling(rows)
print(f"\nN_R ~ {fit.prefactor:.2f} + {fit.exponent:.2f} ln N  (rms {fit.residual:.2f})")

# integer spectra keep the gap at 2 or 4, so this fit cannot show a closing gap
g = fit_gap_exponent((r.n, r.gap) for r in rows)
print(f"gap ~ N^{g.exponent:.3f}")
