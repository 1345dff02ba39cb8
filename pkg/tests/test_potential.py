"""Energy/force evaluation in the three cutoff modes, and the line scan."""

import numpy as np
import pytest

import dyncutoff as dc
from dyncutoff.errors import OverlapError, ParamMismatch

from oracles import random_gas

DYN = dc.DynCutParams(h=6.0, weight=dc.WeightParams(10.0, 3.0))
FIXED = dc.PairParams(h=6.0, mode="fixed")
DYNAMIC = dc.PairParams(h=6.0, mode="dynamic", dyncut=DYN)


def lj_safe_gas(seed, n=20, box=11.0):
    rng = np.random.default_rng(seed)
    return random_gas(rng, n, box, "full", 1.8)


class TestEnergyForces:
    def test_single_atom(self):
        sys_ = dc.AtomicSystem([[0, 0, 0]], [29], [63.546], dc.nonperiodic_cell())
        ef = dc.energy_forces(sys_, FIXED)
        assert ef.energy == 0.0
        np.testing.assert_array_equal(ef.forces, 0.0)

    def test_dimer_force_vanishes_at_minimum(self):
        # both cutoffs far beyond the pair distance, envelope slope negligible
        sigma = 1.0
        r0 = 2.0 ** (1.0 / 6.0) * sigma
        sys_ = dc.AtomicSystem(
            [[0, 0, 0], [r0, 0, 0]], [29, 29], [63.546] * 2,
            dc.nonperiodic_cell(),
        )
        pp = dc.PairParams(h=30.0, epsilon_lj=0.4, sigma_lj=sigma, mode="fixed")
        ef = dc.energy_forces(sys_, pp)
        assert np.abs(ef.forces).max() < 1e-6

    def test_overlap_rejected(self):
        sys_ = dc.AtomicSystem(
            [[0, 0, 0], [0.05, 0, 0]], [29, 29], [63.546] * 2,
            dc.nonperiodic_cell(),
        )
        with pytest.raises(OverlapError):
            dc.energy_forces(sys_, FIXED)

    def test_param_h_mismatch_rejected(self):
        with pytest.raises(ParamMismatch):
            dc.PairParams(h=5.0, mode="dynamic", dyncut=DYN)

    @pytest.mark.parametrize("mode_params", [FIXED, DYNAMIC],
                             ids=["fixed", "dynamic"])
    def test_forces_match_finite_differences(self, mode_params):
        sys_ = lj_safe_gas(11)
        pos = sys_.positions
        ef = dc.energy_forces(sys_, mode_params)
        step = 1e-5
        for t in range(0, sys_.n_atoms, 3):
            for ax in range(3):
                pp = pos.copy()
                pp[t, ax] += step
                pm = pos.copy()
                pm[t, ax] -= step
                e1 = dc.energy_forces(sys_.with_positions(pp), mode_params).energy
                e2 = dc.energy_forces(sys_.with_positions(pm), mode_params).energy
                fd = -(e1 - e2) / (2 * step)
                ana = ef.forces[t, ax]
                assert abs(ana - fd) <= 1e-5 * max(abs(ana), abs(fd), 1e-3)

    def test_forces_sum_to_zero(self):
        for seed in (1, 2, 3):
            sys_ = lj_safe_gas(seed)
            for pp in (FIXED, DYNAMIC,
                       dc.PairParams(h=6.0, mode="naive", n_max=8)):
                ef = dc.energy_forces(sys_, pp)
                assert np.abs(ef.forces.sum(axis=0)).max() < 1e-8

    def test_rotation_equivariance(self):
        sys_ = lj_safe_gas(4, box=12.0)
        sys_free = dc.AtomicSystem(sys_.positions, sys_.species, sys_.masses,
                                   dc.nonperiodic_cell())
        ef = dc.energy_forces(sys_free, DYNAMIC)
        theta = 1.1
        rot = np.array([
            [np.cos(theta), 0.0, np.sin(theta)],
            [0.0, 1.0, 0.0],
            [-np.sin(theta), 0.0, np.cos(theta)],
        ])
        rotated = sys_free.with_positions(sys_free.positions @ rot.T)
        ef_rot = dc.energy_forces(rotated, DYNAMIC)
        assert ef_rot.energy == pytest.approx(ef.energy, abs=1e-10)
        np.testing.assert_allclose(ef_rot.forces, ef.forces @ rot.T, atol=1e-8)

    def test_energy_continuity_across_hard_boundary(self):
        # probe atom crosses h of the center while staying > h from every
        # other atom, so the comparison isolates the crossing itself
        for pp in (FIXED, DYNAMIC):
            base = [[0, 0, 0], [-2.6, 0, 0], [0, -2.9, 0]]
            inside = dc.AtomicSystem(
                base + [[6.0 - 1e-6, 0, 0]], [29] * 4, [63.546] * 4,
                dc.nonperiodic_cell(),
            )
            outside = dc.AtomicSystem(
                base + [[6.0 + 1e-6, 0, 0]], [29] * 4, [63.546] * 4,
                dc.nonperiodic_cell(),
            )
            e_in = dc.energy_forces(inside, pp)
            e_out = dc.energy_forces(outside, pp)
            assert abs(e_in.energy - e_out.energy) < 1e-8
            if pp.mode == "dynamic":
                assert np.abs(e_in.forces[:3] - e_out.forces[:3]).max() < 1e-6

    def test_naive_force_discontinuity_at_swap(self):
        # two neighbors straddling the kept/dropped boundary swap roles;
        # the truncated fixed-envelope baseline jumps, the smooth modes don't
        def forces_at(delta):
            pos = [[0.0, 0.0, 0.0], [2.2, 0.0, 0.0], [0.0, 3.0 + delta, 0.0],
                   [0.0, 0.0, 3.0 - delta], [-4.5, 0.0, 0.0]]
            sys_ = dc.AtomicSystem(pos, [29] * 5, [63.546] * 5,
                                   dc.nonperiodic_cell())
            naive = dc.PairParams(h=6.0, mode="naive", n_max=2)
            return dc.energy_forces(sys_, naive).forces

        jump = np.abs(forces_at(1e-7) - forces_at(-1e-7)).max()
        assert jump > 1e-2

    def test_pruned_edges_counted(self):
        sys_ = lj_safe_gas(5)
        ef_fixed = dc.energy_forces(sys_, FIXED)
        ef_dyn = dc.energy_forces(sys_, DYNAMIC)
        assert ef_fixed.edge_count_pruned == ef_fixed.edge_count_hard
        assert ef_dyn.edge_count_pruned < ef_dyn.edge_count_hard
        assert ef_dyn.edge_count_hard == ef_fixed.edge_count_hard

    def test_directed_half_weight_convention(self):
        # independent recomputation of the energy from the graph and cutoffs
        sys_ = lj_safe_gas(6)
        ef = dc.energy_forces(sys_, DYNAMIC)
        g = dc.build_graph(sys_, 6.0)
        c = ef.per_node_cutoffs
        total = 0.0
        for k in range(g.n_edges):
            r = g.distance[k]
            x = r / c[g.dst[k]]
            if x >= 1.0:
                continue
            phi = 4 * 0.4 * ((2.27 / r) ** 12 - (2.27 / r) ** 6)
            total += 0.5 * phi * dc.envelope(x)
        assert ef.energy == pytest.approx(total, rel=1e-12)


class TestLineScan:
    def test_symmetric_dimer_scan(self):
        # scan perpendicular to the bond through the scan midpoint
        sys_ = dc.AtomicSystem(
            [[0, 0, 0], [3.0, 0, 0]], [29, 29], [63.546] * 2,
            dc.nonperiodic_cell(),
        )
        d, e, f = dc.pes_line_scan(sys_, FIXED, 1, [0, 1, 0], 2.0, 41)
        np.testing.assert_allclose(e, e[::-1], atol=1e-10)
        np.testing.assert_allclose(f, -f[::-1], atol=1e-10)

    def test_minimum_steps_enforced(self):
        sys_ = dc.AtomicSystem(
            [[0, 0, 0], [3.0, 0, 0]], [29, 29], [63.546] * 2,
            dc.nonperiodic_cell(),
        )
        with pytest.raises(ValueError):
            dc.pes_line_scan(sys_, FIXED, 1, [0, 1, 0], 2.0, 2)

    def test_swap_scan_smooth_vs_naive(self):
        # scanned atom crosses another's distance ordering; compare the max
        # adjacent-step force change of each mode at 1e-3 A resolution
        dirs = np.array([
            [1.0, 0.2, 0.1], [-0.8, 0.9, 0.3], [0.2, -1.0, 0.5],
            [-0.4, -0.7, -0.8], [0.9, -0.3, -0.9], [0.1, 1.0, -0.6],
        ])
        dirs /= np.linalg.norm(dirs, axis=1)[:, None]
        radii = np.array([2.0, 2.5, 3.0, 3.2, 4.2, 4.8])
        pos = np.zeros((7, 3))
        pos[1:] = dirs * radii[:, None]
        sys_ = dc.AtomicSystem(pos, [29] * 7, [63.546] * 7,
                               dc.nonperiodic_cell())
        dyn = dc.DynCutParams(h=6.0, weight=dc.WeightParams(3.0, 1.0))
        naive = dc.PairParams(h=6.0, mode="naive", n_max=3)
        dynamic = dc.PairParams(h=6.0, mode="dynamic", dyncut=dyn)
        scan = dict(atom=4, direction=-dirs[3], span=0.6, steps=601)
        _, _, f_naive = dc.pes_line_scan(sys_, naive, **scan)
        _, _, f_dyn = dc.pes_line_scan(sys_, dynamic, **scan)
        jump_naive = np.abs(np.diff(f_naive)).max()
        jump_dyn = np.abs(np.diff(f_dyn)).max()
        assert jump_dyn < 1e-2
        assert jump_naive > 10 * jump_dyn
