"""Atomic systems, periodic cells, displacements, and lattice builders.

Units are fixed across the package: lengths in angstrom, velocities in
angstrom/fs, energies in eV, masses in amu, temperatures in K.  A "Vec3"
is simply a shape-(3,) float64 array.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .elements import mass_of
from .units import ACCEL, KB

__all__ = [
    "Cell",
    "AtomicSystem",
    "cubic_cell",
    "nonperiodic_cell",
    "displacement",
    "distance",
    "build_fcc",
    "maxwell_boltzmann_velocities",
    "kinetic_temperature",
]


@dataclass(frozen=True)
class Cell:
    """Simulation cell; rows of ``basis`` are the lattice vectors.

    ``periodic`` flags each lattice direction.  If any direction is
    periodic the basis must be non-singular (|det| > 1e-10).
    """

    basis: np.ndarray
    periodic: tuple = (False, False, False)

    def __post_init__(self):
        basis = np.array(self.basis, dtype=np.float64)
        if basis.shape != (3, 3):
            raise ValueError("cell basis must be a 3x3 matrix")
        if not np.all(np.isfinite(basis)):
            raise ValueError("cell basis must be finite")
        periodic = tuple(bool(p) for p in self.periodic)
        if len(periodic) != 3:
            raise ValueError("periodic must have 3 flags")
        if any(periodic) and abs(np.linalg.det(basis)) <= 1e-10:
            raise ValueError("periodic cell basis is singular")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "periodic", periodic)

    @property
    def volume(self):
        return float(abs(np.linalg.det(self.basis)))

    def perpendicular_widths(self):
        """Distance between opposite cell faces along each lattice direction.

        For an orthorhombic cell these are just the edge lengths.  Used to
        decide how many periodic images a neighbor search must consider.
        """
        a, b, c = self.basis
        vol = abs(np.dot(a, np.cross(b, c)))
        widths = np.array(
            [
                vol / np.linalg.norm(np.cross(b, c)),
                vol / np.linalg.norm(np.cross(c, a)),
                vol / np.linalg.norm(np.cross(a, b)),
            ]
        )
        return widths

    def fractional(self, positions):
        """Fractional coordinates of Cartesian ``positions`` (rows)."""
        return np.asarray(positions, dtype=np.float64) @ np.linalg.inv(self.basis)


def cubic_cell(edge, periodic=(True, True, True)):
    """Cubic cell with the given edge length."""
    return Cell(np.eye(3) * float(edge), periodic)


def nonperiodic_cell():
    """Placeholder cell for isolated (molecular) systems."""
    return Cell(np.eye(3), (False, False, False))


@dataclass
class AtomicSystem:
    """Positions, species, masses, optional velocities, and the cell.

    positions : (N, 3) float64, angstrom
    species   : (N,) int, atomic numbers
    masses    : (N,) float64, amu
    velocities: (N, 3) float64, angstrom/fs, or None
    """

    positions: np.ndarray
    species: np.ndarray
    masses: np.ndarray
    cell: Cell = field(default_factory=nonperiodic_cell)
    velocities: np.ndarray | None = None

    def __post_init__(self):
        self.positions = np.array(self.positions, dtype=np.float64).reshape(-1, 3)
        self.species = np.array(self.species, dtype=np.int64).reshape(-1)
        self.masses = np.array(self.masses, dtype=np.float64).reshape(-1)
        n = len(self.positions)
        if len(self.species) != n or len(self.masses) != n:
            raise ValueError("positions, species, and masses must have equal length")
        if n and not np.all(self.masses > 0):
            raise ValueError("masses must be positive")
        if self.velocities is not None:
            self.velocities = np.array(self.velocities, dtype=np.float64).reshape(-1, 3)
            if len(self.velocities) != n:
                raise ValueError("velocities must match positions in length")

    @property
    def n_atoms(self):
        return len(self.positions)

    def copy(self):
        vel = None if self.velocities is None else self.velocities.copy()
        return AtomicSystem(
            self.positions.copy(), self.species.copy(), self.masses.copy(),
            self.cell, vel,
        )

    def with_positions(self, positions):
        vel = None if self.velocities is None else self.velocities.copy()
        return AtomicSystem(positions, self.species.copy(), self.masses.copy(),
                            self.cell, vel)


def displacement(system, i, j):
    """Minimum-image displacement from atom ``i`` to atom ``j``.

    Periodic directions are wrapped to the nearest image; non-periodic
    directions use the raw coordinate difference.  Antisymmetric under
    swapping ``i`` and ``j``.
    """
    diff = system.positions[j] - system.positions[i]
    periodic = system.cell.periodic
    if not any(periodic):
        return diff
    frac = diff @ np.linalg.inv(system.cell.basis)
    shift = np.where(periodic, np.round(frac), 0.0)
    return diff - shift @ system.cell.basis


def distance(system, i, j):
    """Minimum-image distance between atoms ``i`` and ``j``."""
    return float(np.linalg.norm(displacement(system, i, j)))


def build_fcc(lattice_constant, repeats, species=29):
    """Conventional FCC supercell: 4 atoms per cell, fully periodic.

    Parameters
    ----------
    lattice_constant : float
        Cubic lattice constant in angstrom.
    repeats : (int, int, int)
        Number of conventional cells along each axis.
    species : int
        Atomic number of every atom (copper by default).
    """
    a = float(lattice_constant)
    if a <= 0:
        raise ValueError("lattice constant must be positive")
    nx, ny, nz = (int(r) for r in repeats)
    if min(nx, ny, nz) < 1:
        raise ValueError("repeats must each be >= 1")
    motif = np.array(
        [[0.0, 0.0, 0.0], [0.0, 0.5, 0.5], [0.5, 0.0, 0.5], [0.5, 0.5, 0.0]]
    )
    cells = np.array(
        [[ix, iy, iz] for ix in range(nx) for iy in range(ny) for iz in range(nz)],
        dtype=np.float64,
    )
    positions = (cells[:, None, :] + motif[None, :, :]).reshape(-1, 3) * a
    n = len(positions)
    cell = Cell(np.diag([a * nx, a * ny, a * nz]), (True, True, True))
    return AtomicSystem(
        positions,
        np.full(n, int(species), dtype=np.int64),
        np.full(n, mass_of(species)),
        cell,
    )


def maxwell_boltzmann_velocities(system, temperature, seed):
    """Return a copy of ``system`` with thermal velocities.

    Each component is drawn from a Gaussian with variance k_B T / m and
    the net momentum is removed afterwards.  Deterministic for a fixed
    seed.
    """
    if temperature < 0:
        raise ValueError("temperature must be >= 0")
    rng = np.random.default_rng(seed)
    n = system.n_atoms
    if temperature == 0 or n == 0:
        vel = np.zeros((n, 3))
    else:
        sigma = np.sqrt(KB * temperature * ACCEL / system.masses)
        vel = rng.standard_normal((n, 3)) * sigma[:, None]
        momentum = (system.masses[:, None] * vel).sum(axis=0)
        vel -= momentum / system.masses.sum()
    out = system.copy()
    out.velocities = vel
    return out


def kinetic_temperature(system):
    """Instantaneous kinetic temperature 2 KE / (3 N k_B), in K."""
    if system.velocities is None or system.n_atoms == 0:
        return 0.0
    ke = 0.5 * (system.masses[:, None] * system.velocities**2).sum() / ACCEL
    return float(2.0 * ke / (3.0 * system.n_atoms * KB))
