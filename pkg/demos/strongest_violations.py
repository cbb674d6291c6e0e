"""Strongest coherent violations per site for the three reference states.

Scans every site observable over the coarse reference interval grid under
purely coherent dynamics and prints the deepest K with the interval where
it occurs, reproducing the headline violation table.  The maximally mixed
state is included to show its (much weaker) long-interval violations.
Run with:  python3 demos/strongest_violations.py
"""

from lgfmo.experiments import reference_dt_grid
from lgfmo.fmo_model import build_coherent_model, initial_state
from lgfmo.leggett_garg import find_strongest_violation
from lgfmo.quantum_core import SITES, make_site_observable

model = build_coherent_model()
grid = reference_dt_grid()

for label in ("mix16", "site1", "site6", "maxmix7"):
    state = initial_state(label)
    print(f"initial state {label}:")
    print("  site   K_min        dt*")
    for site in SITES:
        k, dt = find_strongest_violation(model, make_site_observable(site), state, grid)
        print(f"   {site}    {k:+.6f}    {dt:.5f}")
    print()
