"""Smooth pair potential with per-edge envelope weighting and three cutoff modes.

Each directed edge (u -> v) that survives pruning contributes

    E_uv = 1/2 * phi(r_uv) * p(r_uv / c_v)

where phi is a Lennard-Jones pair function and c_v is the destination
node's cutoff: the hard cutoff h ("fixed" mode), the midpoint truncation at
n_max neighbors ("naive" mode), or the smooth dynamic cutoff ("dynamic"
mode).  The per-edge factor 1/2 keeps the asymmetric-pruning case well
defined: a pair may legitimately be counted from one side only.

Forces are the exact negative gradient of the energy.  In dynamic mode this
includes the chain-rule terms through every c_v, so edges near a dynamic
cutoff pull on all atoms that shape that cutoff.  Pruned edges contribute
exactly zero value and zero gradient: the envelope and its first two
derivatives vanish at r = c.  Naive mode deliberately treats its cutoffs as
constants, which is what makes that baseline non-smooth.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dyncut import (
    DynCutParams,
    cutoff_distance_gradients,
    naive_max_neighbor_cutoff,
)
from .errors import EmptySystem, OverlapError, ParamMismatch
from .neighbors import build_graph
from .smoothfn import envelope, envelope_d1

__all__ = ["PairParams", "EnergyForces", "energy_forces", "pes_line_scan"]

MIN_PAIR_DISTANCE = 0.1


@dataclass(frozen=True)
class PairParams:
    """Pair potential parameters and the active cutoff mode.

    mode is one of "fixed", "naive" (requires n_max), or "dynamic"
    (requires dyncut, whose h must equal this h).
    """

    h: float
    epsilon_lj: float = 0.4
    sigma_lj: float = 2.27
    mode: str = "fixed"
    n_max: int | None = None
    dyncut: DynCutParams | None = None

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("h must be positive")
        if not self.epsilon_lj > 0:
            raise ValueError("epsilon_lj must be positive")
        if not self.sigma_lj > 0:
            raise ValueError("sigma_lj must be positive")
        if self.mode not in ("fixed", "naive", "dynamic"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "naive" and (self.n_max is None or self.n_max < 1):
            raise ValueError("naive mode requires n_max >= 1")
        if self.mode == "dynamic":
            if self.dyncut is None:
                raise ValueError("dynamic mode requires dyncut parameters")
            if self.dyncut.h != self.h:
                raise ParamMismatch(
                    f"pair h={self.h} differs from dynamic-cutoff h={self.dyncut.h}"
                )


@dataclass
class EnergyForces:
    """Total energy, per-atom forces, and cutoff/pruning bookkeeping."""

    energy: float
    forces: np.ndarray
    per_node_cutoffs: np.ndarray
    edge_count_pruned: int
    edge_count_hard: int


def _lj(r, eps, sig):
    sr6 = (sig / r) ** 6
    return 4.0 * eps * (sr6 * sr6 - sr6)


def _lj_d1(r, eps, sig):
    sr6 = (sig / r) ** 6
    return -24.0 * eps * (2.0 * sr6 * sr6 - sr6) / r


def energy_forces(system, params, graph=None):
    """Energy and analytic forces for ``system`` under ``params``.

    A prebuilt neighbor graph for the same positions and h may be passed to
    skip reconstruction.  Raises OverlapError when any pair distance falls
    below 0.1 angstrom.
    """
    if system.n_atoms == 0:
        raise EmptySystem("energy_forces requires at least one atom")
    if graph is None:
        graph = build_graph(system, params.h)
    n = graph.n_atoms
    if graph.n_edges == 0:
        return EnergyForces(0.0, np.zeros((n, 3)), np.full(n, params.h), 0, 0)
    r = graph.distance
    if r[0 : graph.n_edges].min() < MIN_PAIR_DISTANCE:
        raise OverlapError(
            f"pair distance {r.min():.4f} below {MIN_PAIR_DISTANCE} angstrom"
        )

    edge_grad = None
    if params.mode == "fixed":
        cutoffs = np.full(n, params.h)
    elif params.mode == "naive":
        cutoffs = naive_max_neighbor_cutoff(graph, params.n_max).cutoffs
    else:
        cutoffs, edge_grad = cutoff_distance_gradients(graph, params.dyncut)

    c_dst = cutoffs[graph.dst]
    if params.mode == "naive":
        # Count truncation of the fixed-envelope model: kept edges keep their
        # p(r/h) weight, dropped edges lose a finite weight outright.  This
        # is the discontinuous baseline; smoothing it away by rescaling the
        # envelope to the truncation radius would defeat its purpose.
        scale = np.full(graph.n_edges, params.h)
        kept_mask = (r <= c_dst).astype(np.float64)
    else:
        scale = c_dst
        kept_mask = 1.0
    x = r / scale
    pe = np.asarray(envelope(x)) * kept_mask
    pdx = np.asarray(envelope_d1(x)) * kept_mask
    phi = _lj(r, params.epsilon_lj, params.sigma_lj)
    dphi = _lj_d1(r, params.epsilon_lj, params.sigma_lj)

    energy = 0.5 * float((phi * pe).sum())
    # d E_uv / d r (cutoff held fixed) per edge:
    coef = 0.5 * (dphi * pe + phi * pdx / scale)
    if edge_grad is not None:
        # d E_v / d c_v, accumulated per destination node, re-spread through
        # the cutoff's own distance gradient:
        dedc = 0.5 * np.bincount(
            graph.dst, weights=-phi * pdx * r / c_dst**2, minlength=n
        )
        coef = coef + dedc[graph.dst] * edge_grad

    grad = np.zeros((n, 3))
    for i in range(3):
        comp = coef * graph.unit[:, i]
        grad[:, i] = np.bincount(graph.src, weights=comp, minlength=n)
        grad[:, i] -= np.bincount(graph.dst, weights=comp, minlength=n)

    kept = int((r <= c_dst).sum())
    return EnergyForces(
        energy=energy,
        forces=-grad,
        per_node_cutoffs=np.asarray(cutoffs),
        edge_count_pruned=kept,
        edge_count_hard=graph.n_edges,
    )


def pes_line_scan(system, params, atom, direction, span, steps):
    """Translate one atom along a line and record energy and projected force.

    The scan is centered: displacements run from -span/2 to +span/2 in
    ``steps`` equal steps.  Returns (displacements, energies, forces_along),
    where the force is the scanned atom's force projected on the direction.
    """
    steps = int(steps)
    if steps < 3:
        raise ValueError("steps must be >= 3")
    direction = np.asarray(direction, dtype=np.float64)
    norm = np.linalg.norm(direction)
    if norm == 0:
        raise ValueError("direction must be nonzero")
    direction = direction / norm
    displacements = np.linspace(-span / 2.0, span / 2.0, steps)
    energies = np.empty(steps)
    forces_along = np.empty(steps)
    base = system.positions.copy()
    for i, d in enumerate(displacements):
        positions = base.copy()
        positions[atom] = base[atom] + d * direction
        probe = system.with_positions(positions)
        ef = energy_forces(probe, params)
        energies[i] = ef.energy
        forces_along[i] = float(ef.forces[atom] @ direction)
    return displacements, energies, forces_along
