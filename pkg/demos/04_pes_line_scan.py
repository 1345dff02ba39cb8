"""Potential-energy-surface smoothness across a neighbor-order swap.

One atom of a small cluster is dragged through the distance ordering of
another.  The fixed-cutoff and dynamic-cutoff energies stay smooth; the
naive max-neighbor truncation shows a force discontinuity at the swap.
Writes scan.csv with all three modes side by side.

Run:  python3 demos/04_pes_line_scan.py
"""

import numpy as np

import dyncutoff as dc
from dyncutoff.fileio import fmt_real

dirs = np.array([
    [1.0, 0.2, 0.1], [-0.8, 0.9, 0.3], [0.2, -1.0, 0.5],
    [-0.4, -0.7, -0.8], [0.9, -0.3, -0.9], [0.1, 1.0, -0.6],
])
dirs /= np.linalg.norm(dirs, axis=1)[:, None]
radii = np.array([2.0, 2.5, 3.0, 3.2, 4.2, 4.8])
pos = np.zeros((7, 3))
pos[1:] = dirs * radii[:, None]
system = dc.AtomicSystem(pos, [29] * 7, [63.546] * 7, dc.nonperiodic_cell())

dyn = dc.DynCutParams(h=6.0, weight=dc.WeightParams(3.0, 1.0))
modes = {
    "fixed": dc.PairParams(h=6.0, mode="fixed"),
    "naive": dc.PairParams(h=6.0, mode="naive", n_max=3),
    "dynamic": dc.PairParams(h=6.0, mode="dynamic", dyncut=dyn),
}

scan = dict(atom=4, direction=-dirs[3], span=0.6, steps=601)
columns = {}
for name, pp in modes.items():
    disp, energy, force = dc.pes_line_scan(system, pp, **scan)
    columns[name] = (energy, force)
    jumps = np.abs(np.diff(force))
    print(f"{name:8s}: max adjacent-step |dF| = {jumps.max():.3e} eV/A "
          f"at displacement {disp[np.argmax(jumps)]:+.3f} A")

ratio = (np.abs(np.diff(columns['naive'][1])).max()
         / np.abs(np.diff(columns['dynamic'][1])).max())
print(f"\nnaive / dynamic force-jump ratio: {ratio:.0f}x")
print("The scanned atom crosses another neighbor's distance at +0.20 A;")
print("only the naive truncation turns that ordering event into a force")
print("discontinuity.")

with open("scan.csv", "w", encoding="utf-8", newline="\n") as fh:
    fh.write("displacement,E_fixed,E_naive,E_dynamic,"
             "F_fixed,F_naive,F_dynamic\n")
    for i in range(len(disp)):
        row = [disp[i],
               columns["fixed"][0][i], columns["naive"][0][i],
               columns["dynamic"][0][i],
               columns["fixed"][1][i], columns["naive"][1][i],
               columns["dynamic"][1][i]]
        fh.write(",".join(fmt_real(x) for x in row) + "\n")
print("\nwrote scan.csv (plot displacement vs the E_*/F_* columns)")
