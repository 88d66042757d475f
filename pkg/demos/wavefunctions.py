"""
Radial wavefunctions: the alpha = 1 solution against its closed form, the
node count for each n, and a short profile of the fractional curves.

Run with ``python3 demos/wavefunctions.py``.
"""

from __future__ import annotations

import numpy as np

from fracspec import QuantumNumbers, radial_wavefunction, solve_state
from fracspec import cli
from fracspec.spectrum import mie_radial_alpha1

cfg = cli.RunConfig(mode="wavefunction", dims=(3,), n_list=(0, 1, 2))
r = cfg.r_grid()

print("alpha = 1, N = 3: series solution vs closed form")
for n in cfg.n_list:
    sol = solve_state(1.0, QuantumNumbers(n, cfg.ell, 3), cfg.params_for(1.0))
    R = radial_wavefunction(n, 1.0, sol, r).R_values
    ref = mie_radial_alpha1(n, 3, sol.k_star, sol.epsilon_alpha, r)
    nodes = int(np.count_nonzero(np.diff(np.sign(R))))
    print(f"  n={n}: max relative deviation {np.max(np.abs(R / ref - 1)):.2e}, {nodes} node(s)")

print("\nfractional orders, N = 3, n = 1 (default root selection)")
for alpha in (0.7, 0.8, 0.9, 1.0):
    sol = solve_state(alpha, QuantumNumbers(1, cfg.ell, 3), cfg.params_for(alpha))
    R = radial_wavefunction(1, alpha, sol, r).R_values
    peak = r[np.argmax(np.abs(R))]
    print(f"  alpha={alpha:.2f}: k*={sol.k_star:.5f}, E={sol.energy * 1e9:.4e} eV, |R| peaks at r={peak:.3e}")
