"""The dynamic cutoff in action: targeting, adaptivity, and derivatives.

A controlled star system shows how the weighted-average cutoff settles
near the mu-th neighbor, how it adapts when the local density changes,
and that the analytic gradient matches finite differences.

Run:  python3 demos/03_dynamic_cutoff.py
"""

import numpy as np

import dyncutoff as dc

rng = np.random.default_rng(1)


def star(radii):
    dirs = rng.normal(size=(len(radii), 3))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    pos = np.vstack([[0, 0, 0], dirs * np.asarray(radii)[:, None]])
    n = len(pos)
    return dc.AtomicSystem(pos, np.full(n, 29), np.full(n, 63.546),
                           dc.nonperiodic_cell())


params = dc.DynCutParams(h=6.0)  # mu = 20, sigma = 4, alpha = 10, n = 50

print("Forty neighbors spread uniformly out to 0.8 h, target mu = 20:")
radii = np.linspace(0.12, 4.8, 40)
system = star(radii)
graph = dc.build_graph(system, 6.0)
res = dc.dynamic_cutoff(graph, params)
kept = int(res.kept[graph.edges_of(0)].sum())
print(f"  c_0 = {res.cutoffs[0]:.3f} A keeps {kept} of 40 neighbors\n")

print("Density adaptivity: squeeze the same neighbors inward or push out;")
for scale in (0.6, 0.8, 1.0, 1.2):
    s = star(radii * scale)
    g = dc.build_graph(s, 6.0)
    r = dc.dynamic_cutoff(g, params)
    kept = int(r.kept[g.edges_of(0)].sum())
    print(f"  radial scale {scale:.1f}: c_0 = {r.cutoffs[0]:.3f} A, "
          f"kept {kept}")
print("-> the radius follows the density so the count stays near mu.\n")

print("Analytic gradient vs central finite differences (one atom):")
deriv = dc.cutoff_gradient(graph, params)
probe = 7  # an atom participating in node 0
analytic = deriv.grad[(0, probe)]
step = 1e-5
fd = np.zeros(3)
for ax in range(3):
    for sign in (+1, -1):
        pos = system.positions.copy()
        pos[probe, ax] += sign * step
        g2 = dc.build_graph(system.with_positions(pos), 6.0)
        fd[ax] += sign * dc.dynamic_cutoff(g2, params).cutoffs[0]
fd /= 2 * step
print(f"  analytic  {np.array2string(analytic, precision=8)}")
print(f"  numeric   {np.array2string(fd, precision=8)}")

print("\nSoft ranks against true ranks for the same node:")
pairs = dc.rank_parity(graph, params, 0)
for true, soft in pairs[::8]:
    print(f"  true {true:4.0f}   soft {soft:7.3f}")
print("-> monotone within the interior; the envelope lets far neighbors")
print("   fade out instead of perturbing the ranking as they leave.")
