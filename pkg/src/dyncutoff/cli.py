"""Command-line front end.

Subcommands: ``graph``, ``cutoff``, ``scan``, ``md``, ``bench``.  Each reads
an extended-XYZ input, takes options from a ``key = value`` config file
(flags override config values), and writes CSV files into ``--output-dir``.

Exit codes: 0 success, 2 parse error, 3 geometry error, 4 evaluation error,
5 instability (message carries the step number).
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import bench as bench_mod
from .dyncut import DynCutParams, dynamic_cutoff
from .errors import (
    BlowUp,
    DomainError,
    EmptySystem,
    MinimumImageViolation,
    OverlapError,
    ParamMismatch,
    ParseError,
)
from .fileio import (
    config_value,
    fmt_real,
    read_config,
    read_xyz,
    require_keys,
    write_xyz,
)
from .geometry import maxwell_boltzmann_velocities
from .mdengine import MDConfig, TrajectoryRecord, run_md
from .neighbors import build_graph, neighbor_stats
from .potential import PairParams, pes_line_scan
from .smoothfn import EnvelopeParams, WeightParams

EXIT_PARSE = 2
EXIT_GEOMETRY = 3
EXIT_EVALUATION = 4
EXIT_INSTABILITY = 5


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _cell(value):
    if isinstance(value, float):
        return fmt_real(value)
    return str(value)


def _load_config(args):
    cfg = read_config(args.config) if args.config else {}
    if getattr(args, "seed", None) is not None:
        cfg["seed"] = args.seed
    if args.output_dir is not None:
        cfg["output_dir"] = args.output_dir
    return cfg


def _dyncut_params(cfg):
    return DynCutParams(
        h=config_value(cfg, "h"),
        alpha=config_value(cfg, "alpha"),
        envelope=EnvelopeParams(config_value(cfg, "envelope_n")),
        weight=WeightParams(config_value(cfg, "mu"), config_value(cfg, "sigma")),
        epsilon=config_value(cfg, "epsilon"),
    )


def _pair_params(cfg):
    mode = config_value(cfg, "mode")
    return PairParams(
        h=config_value(cfg, "h"),
        epsilon_lj=config_value(cfg, "lj_epsilon"),
        sigma_lj=config_value(cfg, "lj_sigma"),
        mode=mode,
        n_max=config_value(cfg, "n_max") if mode == "naive" else None,
        dyncut=_dyncut_params(cfg) if mode == "dynamic" else None,
    )


def _out_path(cfg, name):
    out_dir = config_value(cfg, "output_dir")
    os.makedirs(out_dir, exist_ok=True)
    return os.path.join(out_dir, name)


def cmd_graph(args):
    cfg = _load_config(args)
    if args.h is not None:
        cfg["h"] = args.h
    require_keys(cfg, ["h"])
    system = read_xyz(args.input)
    graph = build_graph(system, config_value(cfg, "h"))
    stats = neighbor_stats(graph)
    rows = [(str(d), str(c)) for d, c in sorted(stats.histogram.items())]
    rows.append(("mean", fmt_real(stats.mean)))
    rows.append(("min", str(stats.min)))
    rows.append(("max", str(stats.max)))
    path = _out_path(cfg, "graph.csv")
    _write_csv(path, ["degree", "count"], rows)
    print(f"wrote {path}")
    return 0


def cmd_cutoff(args):
    cfg = _load_config(args)
    require_keys(cfg, ["h"])
    system = read_xyz(args.input)
    params = _dyncut_params(cfg)
    graph = build_graph(system, params.h)
    result = dynamic_cutoff(graph, params)
    degrees = graph.degrees()
    kept_per_node = np.bincount(
        graph.dst[result.kept], minlength=graph.n_atoms
    )
    rows = [
        (str(v), fmt_real(result.cutoffs[v]), str(int(degrees[v])),
         str(int(kept_per_node[v])))
        for v in range(graph.n_atoms)
    ]
    path = _out_path(cfg, "cutoff.csv")
    _write_csv(path, ["node", "c_v", "degree_hard", "degree_pruned"], rows)
    print(f"wrote {path}")
    return 0


def cmd_scan(args):
    cfg = _load_config(args)
    require_keys(cfg, ["h"])
    system = read_xyz(args.input)
    if not 0 <= args.atom < system.n_atoms:
        raise DomainError(f"atom index {args.atom} out of range")
    try:
        direction = np.array([float(x) for x in args.direction.split(",")])
    except ValueError:
        raise ParseError(0, "direction must be numeric 'dx,dy,dz'")
    if direction.shape != (3,):
        raise ParseError(0, "direction must have exactly three components")
    dyn = _dyncut_params(cfg)
    h = config_value(cfg, "h")
    lj_kw = dict(
        epsilon_lj=config_value(cfg, "lj_epsilon"),
        sigma_lj=config_value(cfg, "lj_sigma"),
    )
    modes = {
        "fixed": PairParams(h=h, mode="fixed", **lj_kw),
        "naive": PairParams(h=h, mode="naive", n_max=config_value(cfg, "n_max"), **lj_kw),
        "dynamic": PairParams(h=h, mode="dynamic", dyncut=dyn, **lj_kw),
    }
    columns = {}
    disp = None
    for name, pp in modes.items():
        disp, energy, force = pes_line_scan(
            system, pp, args.atom, direction, args.span, args.steps
        )
        columns[name] = (energy, force)
    rows = []
    for i in range(len(disp)):
        rows.append(
            (fmt_real(disp[i]),
             fmt_real(columns["fixed"][0][i]),
             fmt_real(columns["naive"][0][i]),
             fmt_real(columns["dynamic"][0][i]),
             fmt_real(columns["fixed"][1][i]),
             fmt_real(columns["naive"][1][i]),
             fmt_real(columns["dynamic"][1][i]))
        )
    path = _out_path(cfg, "scan.csv")
    _write_csv(
        path,
        ["displacement", "E_fixed", "E_naive", "E_dynamic",
         "F_fixed", "F_naive", "F_dynamic"],
        rows,
    )
    print(f"wrote {path}")
    return 0


def cmd_md(args):
    cfg = _load_config(args)
    require_keys(cfg, ["h", "steps"])
    system = read_xyz(args.input)
    params = _pair_params(cfg)
    init_temp = config_value(cfg, "init_temperature")
    seed = config_value(cfg, "seed")
    if init_temp is not None:
        system = maxwell_boltzmann_velocities(system, init_temp, seed)
    config = MDConfig(
        dt=config_value(cfg, "dt"),
        steps=config_value(cfg, "steps"),
        thermostat=config_value(cfg, "thermostat"),
        friction=config_value(cfg, "friction"),
        temperature=config_value(cfg, "temperature"),
        seed=seed,
        record_every=config_value(cfg, "record_every"),
        rebuild_neighbors_every=config_value(cfg, "rebuild_neighbors_every"),
    )
    records, final = run_md(system, params, config, return_final=True)
    rows = []
    for rec in records:
        rows.append(tuple(
            _cell(getattr(rec, name)) for name in TrajectoryRecord.FIELDS
        ))
    path = _out_path(cfg, "trajectory.csv")
    _write_csv(path, list(TrajectoryRecord.FIELDS), rows)
    print(f"wrote {path}")
    if args.final_frame:
        frame_path = _out_path(cfg, args.final_frame)
        write_xyz(frame_path, final)
        print(f"wrote {frame_path}")
    return 0


def cmd_bench(args):
    cfg = _load_config(args)
    require_keys(cfg, ["h"])
    system = read_xyz(args.input)
    params = _dyncut_params(cfg)
    reps = config_value(cfg, "timing_repetitions")
    report = bench_mod.sparsity_report(
        system, config_value(cfg, "h"), params, repetitions=0
    )
    rows = [(
        str(report.edges_fixed),
        str(report.edges_dynamic),
        fmt_real(report.reduction_factor),
        fmt_real(report.mean_degree_fixed),
        fmt_real(report.mean_degree_dynamic),
    )]
    path = _out_path(cfg, "sparsity.csv")
    _write_csv(
        path,
        ["edges_fixed", "edges_dynamic", "reduction_factor",
         "mean_degree_fixed", "mean_degree_dynamic"],
        rows,
    )
    print(f"wrote {path}")
    if reps > 0:
        timing = bench_mod.timing_report(
            system, params, repetitions=max(5, reps), threads=args.threads
        )
        frac = bench_mod.sparsity_report(
            system, config_value(cfg, "h"), params, repetitions=max(1, reps // 2)
        ).cutoff_stage_time_fraction
        trows = [(
            fmt_real(timing.median_fixed), fmt_real(timing.p10_fixed),
            fmt_real(timing.p90_fixed), fmt_real(timing.median_dynamic),
            fmt_real(timing.p10_dynamic), fmt_real(timing.p90_dynamic),
            fmt_real(timing.speedup), fmt_real(frac), str(timing.threads),
        )]
        tpath = _out_path(cfg, "timing.csv")
        _write_csv(
            tpath,
            ["median_fixed", "p10_fixed", "p90_fixed", "median_dynamic",
             "p10_dynamic", "p90_dynamic", "speedup",
             "cutoff_stage_time_fraction", "threads"],
            trows,
        )
        print(f"wrote {tpath}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dyncutoff",
        description="Smooth dynamic cutoffs for atomistic neighbor graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_config=True):
        p.add_argument("input", help="extended-XYZ input file")
        p.add_argument("--config", "-c", required=needs_config,
                       help="key = value run configuration")
        p.add_argument("--seed", type=int, default=None,
                       help="override the config seed")
        p.add_argument("--threads", type=int, default=1,
                       help="worker pool size for parallel-capable callees")
        p.add_argument("--output-dir", default=None,
                       help="directory for output files (default .)")

    p_graph = sub.add_parser("graph", help="hard-cutoff degree statistics")
    common(p_graph, needs_config=False)
    p_graph.add_argument("--h", type=float, default=None, help="hard cutoff")
    p_graph.set_defaults(func=cmd_graph)

    p_cut = sub.add_parser("cutoff", help="per-node dynamic cutoffs")
    common(p_cut)
    p_cut.set_defaults(func=cmd_cutoff)

    p_scan = sub.add_parser("scan", help="PES line scan in all three modes")
    common(p_scan)
    p_scan.add_argument("--atom", type=int, required=True)
    p_scan.add_argument("--direction", required=True,
                        help="scan direction as 'dx,dy,dz'")
    p_scan.add_argument("--span", type=float, required=True)
    p_scan.add_argument("--steps", type=int, required=True)
    p_scan.set_defaults(func=cmd_scan)

    p_md = sub.add_parser("md", help="molecular dynamics run")
    common(p_md)
    p_md.add_argument("--final-frame", default=None,
                      help="also write the final frame to this XYZ file")
    p_md.set_defaults(func=cmd_md)

    p_bench = sub.add_parser("bench", help="sparsity and timing report")
    common(p_bench)
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (MinimumImageViolation, EmptySystem) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except BlowUp as exc:
        print(f"error: unstable run at {exc}", file=sys.stderr)
        return EXIT_INSTABILITY
    except (OverlapError, DomainError, ParamMismatch, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVALUATION


if __name__ == "__main__":
    sys.exit(main())
