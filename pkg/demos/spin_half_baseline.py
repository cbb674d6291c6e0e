"""Two-level sanity check: free precession reaches K = 1 - sqrt(2).

A spin-1/2 precessing under H = (omega/2) sigma_x, measured along z, has
two-time correlator C(dt) = cos(omega dt) regardless of the initial state.
The base-pattern combination K = C12 + C23 + C13 + 1 = 2 cos(omega dt)
+ cos(2 omega dt) + 1 then bottoms out at 1 - sqrt(2) when
omega dt = 3 pi / 4.  Run with:  python3 demos/spin_half_baseline.py
"""

import numpy as np

from lgfmo.dynamics import CoherentPropagator
from lgfmo.leggett_garg import SignPattern, lg_quantities_with
from lgfmo.quantum_core import DichotomicObservable

OMEGA = 1.0

propagator = CoherentPropagator(0.5 * OMEGA * np.array([[0, 1], [1, 0]], dtype=complex))
q_up = DichotomicObservable(np.diag([1.0, 0.0]).astype(complex), "up")
rho = 0.5 * np.eye(2, dtype=complex)

print("dt (units of 1/omega)   C12 = cos(omega dt)        K (base pattern)")
for dt in np.linspace(0.1, np.pi, 12):
    c12, _, _, k = lg_quantities_with(propagator, q_up, rho, dt, SignPattern.BASE)
    marker = "  <- violation" if k < 0 else ""
    print(f"  {dt:7.4f}              {c12:+.6f}             {k:+.6f}{marker}")

dt_star = 3.0 * np.pi / (4.0 * OMEGA)
_, _, _, k_star = lg_quantities_with(propagator, q_up, rho, dt_star, SignPattern.BASE)
print()
print(f"minimum at omega dt = 3 pi / 4: K = {k_star:.12f}")
print(f"analytic value   1 - sqrt(2)  =  {1.0 - np.sqrt(2.0):.12f}")
