"""Command-line front end: predict, score, fit, coverage, generate."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import io
from .coalescence import FpzParameters
from .damage import align, coverage, fit
from .errors import FracGraphError, IdMismatchError, ValidationError
from .geometry import Domain, validate_network
from .pathfinding import trace_prediction
from .scoring import score_prediction, tabulate
from .synth import ConfigSpec, DamageCurveSpec, generate_damage_curves, generate_network
from .zoning import ZoneConfig

log = logging.getLogger("fracgraph")


@dataclass(frozen=True)
class RunConfig:
    """Defaults shared by every subcommand."""

    fpz_fraction: float = 0.75
    k_neighbors: int = 10
    num_zones: int = 3
    max_paths: int = 4
    n_boot: int = 2000
    level: float = 0.95
    seed: int = 0
    grid_points: int = 150


DEFAULTS = RunConfig()


def cmd_predict(args) -> int:
    network = io.read_network(args.input)
    report = validate_network(network)
    if not report.ok:
        raise ValidationError(f"{args.input}: invalid crack network\n{report}")
    params = FpzParameters(args.fpz_fraction, args.k_neighbors)
    config = ZoneConfig(args.num_zones)
    trace = trace_prediction(network, params, config, args.max_paths)
    pred = trace.prediction
    sim_id = args.simulation_id or Path(args.input).stem
    io.write_prediction(args.out, pred, sim_id)
    plot = args.plot_csv or str(Path(args.out).with_suffix(".plot.csv"))
    io.write_prediction_plot_csv(plot, network, pred, config)
    if args.trace_dir:
        io.write_trace(args.trace_dir, trace)
    log.info("zone %d (%s), %d path(s) -> %s", pred.selection.zone_index,
             pred.selection.tie_break_level_used.value, len(pred.paths), args.out)
    return 0


def cmd_score(args) -> int:
    preds = {}
    for p in args.prediction:
        sid, pred = io.read_prediction(p)
        preds[str(sid if sid is not None else Path(p).stem)] = pred
    refs = {}
    for r in args.reference:
        ref = io.read_reference(r)
        refs[ref.simulation_id if ref.simulation_id is not None else Path(r).stem] = ref
    if set(preds) != set(refs):
        missing = sorted(set(preds) ^ set(refs))
        raise IdMismatchError(f"prediction and reference ids differ: {missing}")

    rows, results = [], []
    zone_hits, zone_total = 0, 0
    for sid in sorted(preds):
        pred, ref = preds[sid], refs[sid]
        res = score_prediction(pred, ref)
        results.append(res)
        rows.append((sid, res, pred.selection.zone_index, ref.failure_zone))
        if ref.failure_zone is not None:
            zone_total += 1
            zone_hits += pred.selection.zone_index == ref.failure_zone
    io.write_match_csv(args.out, rows)
    summary = tabulate(results)
    zone_acc = zone_hits / zone_total if zone_total else None
    io.write_summary_csv(args.summary, summary, zone_acc)
    for name, count, frac in summary.rows():
        print(f"{name:<11}{count:>6}{frac:>9.3f}")
    if zone_acc is not None:
        print(f"{'ZoneMatch':<11}{zone_hits:>6}{zone_acc:>9.3f}")
    return 0


def cmd_fit(args) -> int:
    series = io.read_damage_csv(args.input)
    model = fit(align(series, args.grid_points), args.n_boot, args.seed, args.level, args.band)
    io.write_model(args.out, model)
    log.info("fitted %d series on %d grid points -> %s", model.n_train, model.time_grid.size, args.out)
    return 0


def cmd_coverage(args) -> int:
    model = io.read_model(args.model)
    test = align(io.read_damage_csv(args.input), model.time_grid)
    report = coverage(model, test)
    io.write_coverage_csv(args.out, report)
    band = args.band_csv or str(Path(args.out).with_suffix(".band.csv"))
    io.write_band_csv(band, model, test)
    print(f"mean coverage {report.mean_coverage:.4f} over {int((report.n_test > 0).sum())} grid times")
    return 0


def cmd_generate(args) -> int:
    if args.kind == "network":
        spec = ConfigSpec(
            n_cracks=args.n_cracks, crack_length=args.crack_length,
            orientations=tuple(args.orientations), domain=Domain(args.width, args.height),
            min_tip_separation=args.min_tip_separation, seed=args.seed,
        )
        io.write_network(args.out, generate_network(spec))
        return 0
    spec = DamageCurveSpec(n_curves=args.n_curves, noise_scale=args.noise_scale, seed=args.seed)
    curves = generate_damage_curves(spec)
    if args.split is not None:
        io.write_damage_csv(args.out, curves[: args.split])
        io.write_damage_csv(args.test_out or str(Path(args.out).with_suffix(".test.csv")), curves[args.split :])
    else:
        io.write_damage_csv(args.out, curves)
    return 0


def build_parser() -> argparse.ArgumentParser:
    d = DEFAULTS
    parser = argparse.ArgumentParser(prog="fracgraph", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", help="predict failure zone and paths from a crack-network JSON")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--plot-csv")
    p.add_argument("--trace-dir", help="write one JSON per pipeline stage here")
    p.add_argument("--simulation-id")
    p.add_argument("--fpz-fraction", type=float, default=d.fpz_fraction)
    p.add_argument("--k-neighbors", type=int, default=d.k_neighbors)
    p.add_argument("--num-zones", type=int, default=d.num_zones)
    p.add_argument("--max-paths", type=int, default=d.max_paths)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("score", help="score predictions against reference failure paths")
    p.add_argument("--prediction", nargs="+", required=True)
    p.add_argument("--reference", nargs="+", required=True)
    p.add_argument("--out", required=True, help="per-case CSV")
    p.add_argument("--summary", required=True, help="classification,count,fraction CSV")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("fit", help="fit the bootstrap damage band")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--n-boot", type=int, default=d.n_boot)
    p.add_argument("--level", type=float, default=d.level)
    p.add_argument("--seed", type=int, default=d.seed)
    p.add_argument("--grid-points", type=int, default=d.grid_points)
    p.add_argument("--band", choices=("population", "mean"), default="population")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("coverage", help="empirical coverage of a fitted band on test curves")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--band-csv")
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("generate", help="synthetic crack networks or damage curves")
    p.add_argument("kind", choices=("network", "damage"))
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=d.seed)
    p.add_argument("--n-cracks", type=int, default=20)
    p.add_argument("--crack-length", type=float, default=0.3)
    p.add_argument("--orientations", type=int, nargs="+", default=[0, 60, 120])
    p.add_argument("--width", type=float, default=2.0)
    p.add_argument("--height", type=float, default=3.0)
    p.add_argument("--min-tip-separation", type=float, default=0.05)
    p.add_argument("--n-curves", type=int, default=190)
    p.add_argument("--noise-scale", type=float, default=0.05)
    p.add_argument("--split", type=int, help="write the first N curves to --out, the rest to --test-out")
    p.add_argument("--test-out")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except FracGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
