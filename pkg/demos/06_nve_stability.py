"""Energy conservation under the three cutoff modes (short demo).

A 108-atom copper analog is equilibrated at 3000 K and then run NVE for
5 ps per mode.  Smooth modes conserve total energy to sub-meV wander;
the naive max-neighbor truncation leaks energy through its force
discontinuities at every neighbor swap.

The acceptance suite runs the full 50 ps protocol; this demo keeps the
same structure at a tenth of the length.

Run:  python3 demos/06_nve_stability.py
"""

import numpy as np

import dyncutoff as dc

dyn = dc.DynCutParams(h=6.0)
modes = {
    "fixed (h = 6 A)": dc.PairParams(h=6.0, mode="fixed"),
    "fixed (4.25 A)": dc.PairParams(h=4.25, mode="fixed"),
    "dynamic mu=20": dc.PairParams(h=6.0, mode="dynamic", dyncut=dyn),
    "naive n=20": dc.PairParams(h=6.0, mode="naive", n_max=20),
}

for name, pp in modes.items():
    system = dc.build_fcc(3.61, (3, 3, 3))
    system = dc.maxwell_boltzmann_velocities(system, 3000.0, seed=1)
    nvt = dc.MDConfig(dt=1.0, steps=1000, thermostat="langevin",
                      friction=0.01, temperature=3000.0, seed=1,
                      record_every=500)
    try:
        _, state = dc.run_md(system, pp, nvt, return_final=True)
        nve = dc.MDConfig(dt=1.0, steps=5000, record_every=25, seed=1)
        records = dc.run_md(state, pp, nve)
        e = np.array([r.total_energy for r in records])
        slope = dc.drift_slope(records)
        print(f"{name:16s}: drift slope {slope:+9.4f} meV/atom/ps, "
              f"peak-to-peak {(e.max() - e.min()) / 108 * 1000:6.3f} meV/atom")
    except dc.BlowUp as exc:
        print(f"{name:16s}: unstable ({exc})")

print("\nBoth smooth modes wander at the micro-eV scale with no trend;")
print("the naive truncation heats steadily, orders of magnitude faster.")
