"""Smooth dynamic cutoffs for atomistic neighbor graphs.

A per-atom cutoff radius is computed from soft neighbor ranks so that the
number of in-cutoff neighbors tracks a target value while staying twice
continuously differentiable in every atom position.  The package bundles
the cutoff math with analytic derivatives, cell-list neighbor graphs, a
smooth pair potential with three cutoff modes, a small MD engine, and
sparsity/timing benchmarks.
"""

from .bench import SparsityReport, TimingReport, sparsity_report, timing_report
from .dyncut import (
    CutoffDerivatives,
    CutoffResult,
    DynCutParams,
    cutoff_gradient,
    cutoff_hessian,
    cutoff_hessian_blocks,
    dynamic_cutoff,
    naive_max_neighbor_cutoff,
    rank_parity,
    soft_ranks,
)
from .errors import (
    BlowUp,
    DomainError,
    DyncutoffError,
    EmptySystem,
    MinimumImageViolation,
    OverlapError,
    ParamMismatch,
    ParseError,
)
from .geometry import (
    AtomicSystem,
    Cell,
    build_fcc,
    cubic_cell,
    displacement,
    distance,
    kinetic_temperature,
    maxwell_boltzmann_velocities,
    nonperiodic_cell,
)
from .mdengine import (
    MDConfig,
    TrajectoryRecord,
    drift_slope,
    neighbor_count_trace,
    run_md,
)
from .neighbors import NeighborGraph, build_graph, neighbor_stats
from .potential import EnergyForces, PairParams, energy_forces, pes_line_scan
from .smoothfn import (
    EnvelopeParams,
    WeightParams,
    envelope,
    envelope_d1,
    envelope_d2,
    gauss_weight,
    gauss_weight_d1,
    gauss_weight_d2,
    sigmoid,
    sigmoid_d1,
    sigmoid_d2,
)
from .units import ACCEL, KB

__version__ = "0.1.0"
