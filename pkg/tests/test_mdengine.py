"""Integrators, records, drift estimation, and instability detection."""

import numpy as np
import pytest

import dyncutoff as dc
from dyncutoff.errors import BlowUp
from dyncutoff.mdengine import TrajectoryRecord


def dimer_system(r=2.6, sigma=2.27):
    return dc.AtomicSystem(
        [[0, 0, 0], [r, 0, 0]], [29, 29], [63.546] * 2, dc.nonperiodic_cell(),
        velocities=np.zeros((2, 3)),
    )


FIXED = dc.PairParams(h=6.0, mode="fixed")


class TestRunMD:
    def test_single_stationary_atom(self):
        sys_ = dc.AtomicSystem(
            [[1.0, 2.0, 3.0]], [29], [63.546], dc.nonperiodic_cell(),
            velocities=np.zeros((1, 3)),
        )
        cfg = dc.MDConfig(dt=1.0, steps=50, record_every=10)
        records, final = dc.run_md(sys_, FIXED, cfg, return_final=True)
        np.testing.assert_array_equal(final.positions, [[1.0, 2.0, 3.0]])
        assert all(r.total_energy == 0.0 for r in records)

    def test_nve_requires_velocities(self):
        sys_ = dc.AtomicSystem([[0, 0, 0]], [29], [63.546],
                               dc.nonperiodic_cell())
        with pytest.raises(ValueError):
            dc.run_md(sys_, FIXED, dc.MDConfig(dt=1.0, steps=10))

    def test_record_invariant_total_energy(self):
        sys_ = dc.maxwell_boltzmann_velocities(dc.build_fcc(3.61, (2, 2, 2)),
                                               300.0, seed=1)
        cfg = dc.MDConfig(dt=1.0, steps=40, record_every=7)
        records = dc.run_md(sys_, FIXED, cfg)
        for rec in records:
            assert rec.total_energy == rec.kinetic_energy + rec.potential_energy
        assert records[0].step == 0
        assert records[-1].step == 40

    def test_determinism_bitwise(self):
        sys_ = dc.maxwell_boltzmann_velocities(dc.build_fcc(3.61, (2, 2, 2)),
                                               600.0, seed=2)
        cfg = dc.MDConfig(dt=1.0, steps=60, thermostat="langevin",
                          friction=0.01, temperature=600.0, seed=5,
                          record_every=5)
        a = dc.run_md(sys_, FIXED, cfg)
        b = dc.run_md(sys_, FIXED, cfg)
        for ra, rb in zip(a, b):
            assert ra == rb

    def test_momentum_conserved_in_nve(self):
        sys_ = dc.maxwell_boltzmann_velocities(dc.build_fcc(3.61, (2, 2, 2)),
                                               500.0, seed=3)
        cfg = dc.MDConfig(dt=1.0, steps=200, record_every=200)
        _, final = dc.run_md(sys_, FIXED, cfg, return_final=True)
        p = (final.masses[:, None] * final.velocities).sum(axis=0)
        assert np.abs(p).max() < 1e-8

    def test_dimer_conservation_and_integrator_order(self):
        # gentle oscillation around the pair minimum; quartering dt must
        # shrink the energy error by roughly the second-order factor 16
        r0 = 2.0 ** (1.0 / 6.0) * 2.27
        sys_ = dc.AtomicSystem(
            [[0, 0, 0], [r0 + 0.02, 0, 0]], [29, 29], [63.546] * 2,
            dc.nonperiodic_cell(), velocities=np.zeros((2, 3)),
        )
        pp = dc.PairParams(h=6.0, mode="fixed")

        def peak_to_peak(dt, steps):
            cfg = dc.MDConfig(dt=dt, steps=steps, record_every=10,
                              rebuild_neighbors_every=100)
            recs = dc.run_md(sys_, pp, cfg)
            e = np.array([r.total_energy for r in recs])
            return e.max() - e.min()

        coarse = peak_to_peak(0.5, 100_000)
        fine = peak_to_peak(0.125, 100_000)
        assert coarse < 1e-5
        assert coarse / fine > 10.0

    def test_langevin_reaches_target_temperature(self):
        sys_ = dc.maxwell_boltzmann_velocities(dc.build_fcc(3.61, (3, 3, 3)),
                                               400.0, seed=4)
        cfg = dc.MDConfig(dt=1.0, steps=4000, thermostat="langevin",
                          friction=0.02, temperature=400.0, seed=4,
                          record_every=10)
        records = dc.run_md(sys_, FIXED, cfg)
        second_half = [r.temperature for r in records[len(records) // 2:]]
        assert np.mean(second_half) == pytest.approx(400.0, rel=0.05)

    def test_blowup_on_huge_force(self):
        sys_ = dc.AtomicSystem(
            [[0, 0, 0], [0.15, 0, 0]], [29, 29], [63.546] * 2,
            dc.nonperiodic_cell(), velocities=np.zeros((2, 3)),
        )
        with pytest.raises(BlowUp) as err:
            dc.run_md(sys_, FIXED, dc.MDConfig(dt=1.0, steps=10))
        assert err.value.step == 0

    def test_neighbor_rebuild_interval(self):
        sys_ = dc.maxwell_boltzmann_velocities(dc.build_fcc(3.61, (2, 2, 2)),
                                               300.0, seed=6)
        cfg_every = dc.MDConfig(dt=1.0, steps=50, record_every=50)
        cfg_lazy = dc.MDConfig(dt=1.0, steps=50, record_every=50,
                               rebuild_neighbors_every=25)
        a = dc.run_md(sys_, FIXED, cfg_every)
        b = dc.run_md(sys_, FIXED, cfg_lazy)
        # stale lists are permitted to differ, but only marginally over 50 fs
        assert a[-1].total_energy == pytest.approx(b[-1].total_energy, abs=1e-6)


class TestTraces:
    def test_fcc_fixed_reduced_cutoff_trace(self):
        sys_ = dc.build_fcc(3.61, (3, 3, 3))
        sys_.velocities = np.zeros((sys_.n_atoms, 3))
        pp = dc.PairParams(h=4.25, mode="fixed")
        records = dc.run_md(sys_, pp, dc.MDConfig(dt=1.0, steps=3))
        trace = dc.neighbor_count_trace(records)
        np.testing.assert_array_equal(trace, 18.0)

    def test_fcc_dynamic_trace_near_target(self):
        sys_ = dc.build_fcc(3.61, (3, 3, 3))
        sys_.velocities = np.zeros((sys_.n_atoms, 3))
        dyn = dc.DynCutParams(h=6.0)
        pp = dc.PairParams(h=6.0, mode="dynamic", dyncut=dyn)
        records = dc.run_md(sys_, pp, dc.MDConfig(dt=1.0, steps=3))
        trace = dc.neighbor_count_trace(records)
        assert np.all((trace >= 17.0) & (trace <= 23.0))


class TestDriftSlope:
    def _record(self, step, time_fs, total, n=10):
        return TrajectoryRecord(
            step=step, time_fs=time_fs, total_energy=total,
            kinetic_energy=0.0, potential_energy=total, temperature=0.0,
            mean_dynamic_cutoff=0.0, mean_in_cutoff_neighbors=0.0,
            mean_hard_neighbors=0.0, n_atoms=n,
        )

    def test_constant_series_has_zero_slope(self):
        records = [self._record(i, 100.0 * i, 5.0) for i in range(20)]
        assert dc.drift_slope(records) == pytest.approx(0.0, abs=1e-12)

    def test_linear_ramp(self):
        # 1 meV/atom over 10 ps -> 0.1 meV/atom/ps
        records = [
            self._record(i, i * 1000.0, 10 * (0.001 * i / 10.0))
            for i in range(11)
        ]
        assert dc.drift_slope(records) == pytest.approx(0.1, rel=1e-9)

    def test_requires_enough_records(self):
        records = [self._record(i, float(i), 0.0) for i in range(5)]
        with pytest.raises(ValueError):
            dc.drift_slope(records)
