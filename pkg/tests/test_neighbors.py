"""Cell-list neighbor graph vs brute force, ordering, and statistics."""

import numpy as np
import pytest

import dyncutoff as dc
from dyncutoff.errors import EmptySystem, MinimumImageViolation

from oracles import brute_force_edges, graph_edge_set, random_mixed_system

CU = dict(species=[29], masses=[63.546])


def two_atoms(d, cell=None):
    return dc.AtomicSystem(
        [[0, 0, 0], [d, 0, 0]], [29, 29], [63.546, 63.546],
        cell or dc.nonperiodic_cell(),
    )


class TestBuildGraph:
    def test_single_pair(self):
        g = dc.build_graph(two_atoms(5.0), 6.0)
        assert g.n_edges == 2
        np.testing.assert_allclose(g.distance, [5.0, 5.0])

    def test_strict_hard_cutoff(self):
        g = dc.build_graph(two_atoms(6.000001), 6.0)
        assert g.n_edges == 0

    def test_boundary_distance_included(self):
        g = dc.build_graph(two_atoms(6.0), 6.0)
        assert g.n_edges == 2

    def test_empty_system_rejected(self):
        empty = dc.AtomicSystem(
            np.zeros((0, 3)), np.zeros(0, dtype=int), np.zeros(0),
            dc.nonperiodic_cell(),
        )
        with pytest.raises(EmptySystem):
            dc.build_graph(empty, 6.0)

    def test_minimum_image_violation_when_ghosts_disabled(self):
        sys_ = dc.build_fcc(3.61, (2, 2, 2))  # 7.22 A cell < 2h
        with pytest.raises(MinimumImageViolation):
            dc.build_graph(sys_, 6.0, replicate_ghosts=False)
        dc.build_graph(sys_, 3.0, replicate_ghosts=False)  # 2h = 6 < 7.22 ok

    def test_fcc_first_two_shells(self):
        # 12 neighbors at a/sqrt(2) plus 6 at a inside h = 4.25
        sys_ = dc.build_fcc(3.61, (4, 4, 4))
        g = dc.build_graph(sys_, 4.25)
        deg = g.degrees()
        assert np.all(deg == 18)

    def test_self_image_neighbors(self):
        # single atom in a small periodic box neighbors its own images
        sys_ = dc.AtomicSystem([[0.0, 0.0, 0.0]], [29], [63.546],
                               dc.cubic_cell(3.0))
        g = dc.build_graph(sys_, 6.0)
        assert g.n_edges > 0
        assert np.all(g.src == 0) and np.all(g.dst == 0)
        assert g.distance.min() == pytest.approx(3.0)
        assert graph_edge_set(g) == brute_force_edges(sys_, 6.0)

    def test_matches_brute_force_on_random_systems(self):
        rng = np.random.default_rng(12)
        for _ in range(12):
            sys_ = random_mixed_system(rng, int(rng.integers(4, 40)))
            g = dc.build_graph(sys_, 6.0)
            assert graph_edge_set(g) == brute_force_edges(sys_, 6.0)

    def test_symmetric_before_pruning(self):
        rng = np.random.default_rng(3)
        sys_ = random_mixed_system(rng, 25)
        g = dc.build_graph(sys_, 6.0)
        # distances agree to rounding (the two directions evaluate the norm
        # from different wrapped coordinates, so the last ulp may differ)
        forward = {
            (int(s), int(d), tuple(map(int, sh)), round(float(r), 9))
            for s, d, sh, r in zip(g.src, g.dst, g.shift, g.distance)
        }
        backward = {
            (int(d), int(s), tuple(-x for x in map(int, sh)), round(float(r), 9))
            for s, d, sh, r in zip(g.src, g.dst, g.shift, g.distance)
        }
        assert forward == backward

    def test_edges_sorted_within_each_node(self):
        rng = np.random.default_rng(4)
        sys_ = random_mixed_system(rng, 30)
        g = dc.build_graph(sys_, 6.0)
        for v in range(30):
            sel = g.edges_of(v)
            keys = list(
                zip(g.distance[sel], g.src[sel], map(tuple, g.shift[sel]))
            )
            assert keys == sorted(keys)
            assert np.all(g.dst[sel] == v)

    def test_unit_vectors_normalized_and_consistent(self):
        rng = np.random.default_rng(5)
        sys_ = random_mixed_system(rng, 20)
        g = dc.build_graph(sys_, 6.0)
        norms = np.linalg.norm(g.unit, axis=1)
        np.testing.assert_allclose(norms, 1.0, atol=1e-12)
        recon = (
            sys_.positions[g.src]
            + g.shift @ sys_.cell.basis
            - sys_.positions[g.dst]
        )
        np.testing.assert_allclose(
            recon, g.unit * g.distance[:, None], atol=1e-9
        )

    def test_degree_bounded_by_density(self):
        # sanity bound: atoms in a sphere of radius h at the system's density
        sys_ = dc.build_fcc(3.61, (4, 4, 4))
        g = dc.build_graph(sys_, 6.0)
        density = sys_.n_atoms / sys_.cell.volume
        bound = 2.0 * density * 4.0 / 3.0 * np.pi * 6.0**3
        assert g.degrees().max() <= bound

    def test_deterministic_rebuild(self):
        rng = np.random.default_rng(6)
        sys_ = random_mixed_system(rng, 35)
        a = dc.build_graph(sys_, 6.0)
        b = dc.build_graph(sys_, 6.0)
        np.testing.assert_array_equal(a.src, b.src)
        np.testing.assert_array_equal(a.distance, b.distance)
        np.testing.assert_array_equal(a.shift, b.shift)


class TestNeighborStats:
    def test_isolated_atom_counted(self):
        sys_ = dc.AtomicSystem(
            [[0, 0, 0], [1, 0, 0], [50, 50, 50]],
            [29, 29, 29], [63.5] * 3, dc.nonperiodic_cell(),
        )
        stats = dc.neighbor_stats(dc.build_graph(sys_, 6.0))
        assert stats.min == 0
        assert stats.histogram[0] == 1
        assert stats.histogram[1] == 2

    def test_pair_mean_degree(self):
        stats = dc.neighbor_stats(dc.build_graph(two_atoms(5.0), 6.0))
        assert stats.mean == 1.0

    def test_fcc_mean_matches_brute_force(self):
        sys_ = dc.build_fcc(3.61, (6, 6, 6))
        g = dc.build_graph(sys_, 7.0)
        stats = dc.neighbor_stats(g)
        # independent count: shell enumeration for ideal FCC inside 7 A
        shells = {0.5: 12, 1.0: 6, 1.5: 24, 2.0: 12, 2.5: 24, 3.0: 8, 3.5: 48}
        expected = sum(c for s, c in shells.items()
                       if np.sqrt(s) * 3.61 <= 7.0)
        assert stats.mean == expected
        assert stats.min == expected and stats.max == expected
