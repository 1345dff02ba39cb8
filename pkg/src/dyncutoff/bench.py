"""Edge-count sparsity and wall-time measurements for the cutoff pipeline."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ._kernels import cutoff_kernel
from .dyncut import dynamic_cutoff
from .neighbors import build_graph
from .potential import PairParams, energy_forces

__all__ = ["SparsityReport", "TimingReport", "sparsity_report", "timing_report"]


@dataclass
class SparsityReport:
    """Directed edge counts before and after dynamic pruning.

    cutoff_stage_time_fraction is the wall time of the rank/weight/cutoff
    stage relative to one full dynamic-mode energy and force evaluation.
    """

    edges_fixed: int
    edges_dynamic: int
    reduction_factor: float
    mean_degree_fixed: float
    mean_degree_dynamic: float
    cutoff_stage_time_fraction: float


@dataclass
class TimingReport:
    """Median and spread of energy_forces wall times, fixed vs dynamic."""

    median_fixed: float
    p10_fixed: float
    p90_fixed: float
    median_dynamic: float
    p10_dynamic: float
    p90_dynamic: float
    speedup: float
    threads: int


def _time_call(fn, repetitions):
    times = []
    for _ in range(repetitions):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return np.array(times)


def sparsity_report(system, h, params, repetitions=3):
    """Edge counts under the hard cutoff vs the dynamic cutoff.

    With ``repetitions`` = 0 the timing fraction is skipped (reported as
    0.0), which keeps the counts side fully deterministic.
    """
    graph = build_graph(system, h)
    result = dynamic_cutoff(graph, params)
    edges_fixed = graph.n_edges
    edges_dynamic = result.n_kept
    n = graph.n_atoms

    fraction = 0.0
    if repetitions > 0:
        pair = PairParams(h=h, mode="dynamic", dyncut=params)

        def cutoff_stage():
            cutoff_kernel(
                graph.offsets, graph.distance, params.h, params.alpha,
                params.envelope.n, params.weight.mu, params.weight.sigma,
                params.epsilon, False,
            )

        def full_call():
            energy_forces(system, pair)

        cutoff_stage()
        full_call()  # warm-up, excluded
        t_stage = float(np.median(_time_call(cutoff_stage, repetitions)))
        t_full = float(np.median(_time_call(full_call, repetitions)))
        fraction = t_stage / t_full if t_full > 0 else 0.0

    return SparsityReport(
        edges_fixed=edges_fixed,
        edges_dynamic=edges_dynamic,
        reduction_factor=edges_fixed / edges_dynamic if edges_dynamic else float("inf"),
        mean_degree_fixed=edges_fixed / n,
        mean_degree_dynamic=edges_dynamic / n,
        cutoff_stage_time_fraction=fraction,
    )


def timing_report(system, params, repetitions=7, threads=1):
    """Wall times of fixed-mode vs dynamic-mode energy_forces.

    The first call of each mode is a warm-up and excluded; medians plus
    10th/90th percentiles of the remaining ``repetitions`` calls are
    reported.
    """
    repetitions = int(repetitions)
    if repetitions < 5:
        raise ValueError("repetitions must be >= 5")
    fixed = PairParams(h=params.h, mode="fixed")
    dynamic = PairParams(h=params.h, mode="dynamic", dyncut=params)

    energy_forces(system, fixed)
    energy_forces(system, dynamic)
    t_fixed = _time_call(lambda: energy_forces(system, fixed), repetitions)
    t_dynamic = _time_call(lambda: energy_forces(system, dynamic), repetitions)

    med_fixed = float(np.median(t_fixed))
    med_dynamic = float(np.median(t_dynamic))
    return TimingReport(
        median_fixed=med_fixed,
        p10_fixed=float(np.percentile(t_fixed, 10)),
        p90_fixed=float(np.percentile(t_fixed, 90)),
        median_dynamic=med_dynamic,
        p10_dynamic=float(np.percentile(t_dynamic, 10)),
        p90_dynamic=float(np.percentile(t_dynamic, 90)),
        speedup=med_fixed / med_dynamic if med_dynamic > 0 else float("inf"),
        threads=int(threads),
    )
