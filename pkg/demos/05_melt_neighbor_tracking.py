"""Neighbor-count tracking through a hot copper-analog melt (short demo).

A free 256-atom FCC cluster is held at 4500 K with a Langevin thermostat.
As the cluster melts and expands, a reduced fixed cutoff calibrated to
20 neighbors in the bulk loses coordination, while the dynamic cutoff
widens its radius and keeps the count near the target.

This is a 3 ps demonstration; the acceptance suite runs the full 10 ps
protocol.

Run:  python3 demos/05_melt_neighbor_tracking.py
"""

import numpy as np

import dyncutoff as dc

base = dc.build_fcc(3.61, (4, 4, 4))
cluster = dc.AtomicSystem(base.positions.copy(), base.species.copy(),
                          base.masses.copy(), dc.nonperiodic_cell())
cluster = dc.maxwell_boltzmann_velocities(cluster, 4500.0, seed=3)

drive = dc.PairParams(h=6.0, mode="fixed", epsilon_lj=0.5, sigma_lj=2.27)
config = dc.MDConfig(dt=1.0, steps=3000, thermostat="langevin",
                     friction=0.01, temperature=4500.0, seed=3,
                     record_every=250)
print("running 3 ps Langevin at 4500 K on a free 256-atom cluster ...")
records, frames = dc.run_md(cluster, drive, config, collect_frames=True)

dynp = dc.DynCutParams(h=7.0)
print(f"\n{'t (ps)':>7} {'T (K)':>7} {'fixed 4.25 A':>13} {'dynamic mu=20':>14}")
for rec, (step, pos) in zip(records, frames):
    snap = cluster.with_positions(pos)
    fixed = dc.build_graph(snap, 4.25).n_edges / snap.n_atoms
    res = dc.dynamic_cutoff(dc.build_graph(snap, 7.0), dynp)
    dyn = res.n_kept / snap.n_atoms
    print(f"{rec.time_fs / 1000:7.2f} {rec.temperature:7.0f} "
          f"{fixed:13.2f} {dyn:14.2f}")

print("\nThe fixed 4.25 A count sags as local density drops; the dynamic")
print("radius expands (up to the 7 A hard cutoff) to hold the target.")
