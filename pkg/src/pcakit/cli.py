"""Command-line front door.

Subcommands: simulate (synthetic CSV datasets), analyze (fit and report),
project (change of basis / reconstruction), plotdata (plot-ready columnar
files plus rendered figures).

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
Diagnostics go to stderr; data only ever goes to files.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
import time

import numpy as np

from . import datagen, io, pca, report
from .eigen import ConvergenceError
from .matrix import Matrix


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise UsageError(message)


def _diag(message: str) -> None:
    print(message, file=sys.stderr)


# ---------------------------------------------------------------------------
# simulate

_SCENARIO_FLAGS = {
    "spring": {"amplitude", "frequency", "rate", "duration", "noise_sigma", "snr"},
    "pair": {"rho", "n"},
    "ferris": {"radius", "n", "noise_sigma"},
    "nonortho": {"angle", "n", "noise_sigma"},
}


def _check_scenario_flags(args) -> None:
    allowed = _SCENARIO_FLAGS[args.scenario]
    all_flags = set().union(*_SCENARIO_FLAGS.values())
    for flag in sorted(all_flags - allowed):
        if getattr(args, flag) is not None:
            raise UsageError(
                f"--{flag.replace('_', '-')} is not valid for scenario {args.scenario!r}"
            )


def cmd_simulate(args) -> int:
    _check_scenario_flags(args)
    if args.scenario == "spring":
        if args.snr is not None and args.noise_sigma is not None:
            raise UsageError("--snr and --noise-sigma are mutually exclusive")
        cfg = datagen.SpringConfig(
            seed=args.seed,
            amplitude=args.amplitude if args.amplitude is not None else 1.0,
            frequency=args.frequency if args.frequency is not None else 0.25,
            sample_rate=args.rate if args.rate is not None else 120.0,
            duration=args.duration if args.duration is not None else 600.0,
            noise_sigma=args.noise_sigma if args.noise_sigma is not None else 0.0,
        )
        if args.snr is not None:
            cfg.noise_sigma = datagen.noise_sigma_for_snr(cfg, args.snr)
        dataset = datagen.generate_spring(cfg)
        axis = ", ".join(repr(x) for x in cfg.motion_axis)
        extra = f"; motion axis = ({axis})"
    elif args.scenario == "pair":
        dataset = datagen.generate_correlated_pair(
            rho=args.rho if args.rho is not None else 0.9,
            n=args.n if args.n is not None else 1000,
            seed=args.seed,
        )
        extra = ""
    elif args.scenario == "ferris":
        cfg = datagen.FailureConfig(
            kind="ferris_wheel",
            n=args.n if args.n is not None else 1000,
            seed=args.seed,
            radius=args.radius if args.radius is not None else 1.0,
            noise_sigma=args.noise_sigma if args.noise_sigma is not None else 0.0,
        )
        dataset = datagen.generate_failure(cfg)
        extra = ""
    else:
        angle = math.radians(args.angle if args.angle is not None else 45.0)
        cfg = datagen.FailureConfig(
            kind="non_orthogonal",
            n=args.n if args.n is not None else 1000,
            seed=args.seed,
            axes=((1.0, 0.0), (math.cos(angle), math.sin(angle))),
            noise_sigma=args.noise_sigma if args.noise_sigma is not None else 0.0,
        )
        dataset = datagen.generate_failure(cfg)
        extra = ""
    io.write_dataset_csv(args.out, dataset, orientation=io.ORIENT_SAMPLES)
    _diag(f"simulated {args.scenario}: m={dataset.m} n={dataset.n}{extra}")
    return 0


# ---------------------------------------------------------------------------
# analyze

_FITTERS = {"eigen": pca.fit_eigen, "svd": pca.fit_svd}


def _normalization(flag: str) -> str:
    return pca.POPULATION if flag == "n" else pca.SAMPLE


def cmd_analyze(args) -> int:
    dataset = io.read_dataset_csv(args.infile, orientation=args.rows)
    routes = ["eigen", "svd"] if args.route == "both" else [args.route]
    normalization = _normalization(args.norm)
    fits = []
    for route in routes:
        start = time.perf_counter()
        model = _FITTERS[route](dataset, normalization)
        fits.append((model, time.perf_counter() - start))
    doc = report.build_report(dataset, fits)
    io.write_json(args.out, doc)
    if args.model_out:
        io.write_json(args.model_out, pca.model_to_dict(fits[0][0]))
    ratios = doc["models"][0]["explained_variance_ratio"]
    _diag(
        f"analyzed m={dataset.m} n={dataset.n} route={args.route}; "
        f"leading explained ratio {ratios[0]:.6f}; wrote {args.out}"
    )
    return 0


# ---------------------------------------------------------------------------
# project

def _load_model(path) -> pca.PcaModel:
    doc = io.read_json(path)
    if isinstance(doc, dict) and "components" in doc:
        return pca.model_from_dict(doc)
    if isinstance(doc, dict) and doc.get("models"):
        return pca.model_from_dict(doc["models"][0]["model"])
    raise ValueError(f"{path} contains no model document")


def cmd_project(args) -> int:
    model = _load_model(args.model)
    dataset = io.read_dataset_csv(args.infile, orientation=args.rows)
    k = args.k if args.k is not None else model.m
    projected = pca.project(model, dataset)
    if args.reconstruct:
        restored = pca.reconstruct(model, projected, k)
        out = Matrix(restored.data.T)
        header = list(model.names)
    else:
        if not 0 <= k <= model.m:
            raise ValueError(f"k={k} exceeds the number of components m={model.m}")
        out = Matrix(projected.data[:k, :].T)
        header = [f"pc{i + 1}" for i in range(k)]
    io.write_table_csv(args.out, header, ([float(x) for x in row] for row in out.data))
    what = "reconstructed" if args.reconstruct else "projected"
    _diag(f"{what} {dataset.n} samples with k={k}; wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------
# plotdata

def _safe_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name)


def cmd_plotdata(args) -> int:
    model = _load_model(args.model)
    dataset = io.read_dataset_csv(args.infile, orientation=args.rows)
    if dataset.m != model.m:
        raise ValueError(
            f"dataset has {dataset.m} measurement rows but the model expects {model.m}"
        )
    prefix = args.out
    ratios = pca.explained_variance_ratio(model)

    scree_rows = []
    cumulative = 0.0
    for i, (var, ratio) in enumerate(zip(model.variances, ratios), start=1):
        cumulative += float(ratio)
        scree_rows.append([i, float(var), float(ratio), cumulative])
    scree_path = f"{prefix}_scree.csv"
    io.write_table_csv(scree_path, ["component", "variance", "explained_ratio", "cumulative_ratio"], scree_rows)
    written = [scree_path]

    pairs = [(2 * i, 2 * i + 1) for i in range(dataset.m // 2)]
    pcdir_rows = []
    scatter_jobs = []
    for pair_index, (ia, ib) in enumerate(pairs, start=1):
        name_a, name_b = dataset.names[ia], dataset.names[ib]
        xs = dataset.data.data[ia]
        ys = dataset.data.data[ib]
        scatter_path = f"{prefix}_scatter_{_safe_name(name_a)}_{_safe_name(name_b)}.csv"
        io.write_table_csv(
            scatter_path, [name_a, name_b], ([float(x), float(y)] for x, y in zip(xs, ys))
        )
        written.append(scatter_path)

        overlays = []
        for comp in range(model.m):
            restriction = np.array(
                [model.components.data[comp, ia], model.components.data[comp, ib]]
            )
            norm = float(np.linalg.norm(restriction))
            if norm > 0:
                direction = restriction / norm
            else:
                direction = restriction
            extent = math.sqrt(float(model.variances[comp])) * norm
            pcdir_rows.append(
                [
                    pair_index,
                    name_a,
                    name_b,
                    comp + 1,
                    float(model.mean[ia]),
                    float(model.mean[ib]),
                    float(direction[0]),
                    float(direction[1]),
                    extent,
                ]
            )
            overlays.append(
                (
                    (float(model.mean[ia]), float(model.mean[ib])),
                    (float(direction[0]), float(direction[1])),
                    extent,
                    f"pc{comp + 1}",
                )
            )
        scatter_jobs.append((pair_index, name_a, name_b, xs, ys, overlays))

    pcdirs_path = f"{prefix}_pcdirs.csv"
    io.write_table_csv(
        pcdirs_path,
        ["pair", "name_x", "name_y", "component", "mean_x", "mean_y", "dir_x", "dir_y", "extent"],
        pcdir_rows,
    )
    written.append(pcdirs_path)

    if args.figures:
        from . import plotting

        path = f"{prefix}_scree.png"
        plotting.save_scree_figure(path, model.variances, ratios)
        written.append(path)
        for _, name_a, name_b, xs, ys, overlays in scatter_jobs:
            path = f"{prefix}_scatter_{_safe_name(name_a)}_{_safe_name(name_b)}.png"
            plotting.save_scatter_figure(path, xs, ys, overlays, name_a, name_b)
            written.append(path)

    _diag("wrote " + ", ".join(written))
    return 0


# ---------------------------------------------------------------------------
# parser / entry point

def build_parser() -> _Parser:
    parser = _Parser(prog="pcakit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="write a synthetic dataset CSV")
    sim.add_argument("scenario", choices=sorted(_SCENARIO_FLAGS))
    sim.add_argument("--seed", type=int, required=True, help="PRNG seed (required)")
    sim.add_argument("--out", required=True, help="output CSV path")
    sim.add_argument("--amplitude", type=float)
    sim.add_argument("--frequency", type=float, help="oscillation frequency in Hz")
    sim.add_argument("--rate", type=float, help="samples per second")
    sim.add_argument("--duration", type=float, help="recording length in seconds")
    sim.add_argument("--noise-sigma", dest="noise_sigma", type=float)
    sim.add_argument("--snr", type=float, help="choose noise so the dominant direction has this SNR")
    sim.add_argument("--n", type=int, help="number of samples")
    sim.add_argument("--rho", type=float, help="target correlation in [-1, 1]")
    sim.add_argument("--radius", type=float)
    sim.add_argument("--angle", type=float, help="angle between cluster axes in degrees")
    sim.set_defaults(func=cmd_simulate)

    ana = sub.add_parser("analyze", help="fit PCA and write a JSON report")
    ana.add_argument("--in", dest="infile", required=True, help="input dataset CSV")
    ana.add_argument("--route", choices=["eigen", "svd", "both"], default="eigen")
    ana.add_argument("--norm", choices=["n", "n-1"], default="n")
    ana.add_argument("--rows", choices=[io.ORIENT_SAMPLES, io.ORIENT_MEASUREMENTS],
                     default=io.ORIENT_SAMPLES, help="input CSV orientation")
    ana.add_argument("--out", required=True, help="output report JSON path")
    ana.add_argument("--model-out", dest="model_out", help="also write the bare model JSON")
    ana.set_defaults(func=cmd_analyze)

    proj = sub.add_parser("project", help="project data onto a fitted basis")
    proj.add_argument("--in", dest="infile", required=True)
    proj.add_argument("--model", required=True, help="model JSON (or report JSON) path")
    proj.add_argument("--k", type=int, help="number of components (default: all)")
    proj.add_argument("--reconstruct", action="store_true",
                      help="write the rank-k reconstruction instead of projections")
    proj.add_argument("--rows", choices=[io.ORIENT_SAMPLES, io.ORIENT_MEASUREMENTS],
                      default=io.ORIENT_SAMPLES)
    proj.add_argument("--out", required=True)
    proj.set_defaults(func=cmd_project)

    plot = sub.add_parser("plotdata", help="write plot-ready columnar files and figures")
    plot.add_argument("--in", dest="infile", required=True)
    plot.add_argument("--model", required=True)
    plot.add_argument("--rows", choices=[io.ORIENT_SAMPLES, io.ORIENT_MEASUREMENTS],
                      default=io.ORIENT_SAMPLES)
    plot.add_argument("--out", required=True, help="output path prefix")
    plot.add_argument("--no-figures", dest="figures", action="store_false",
                      help="skip matplotlib rendering")
    plot.set_defaults(func=cmd_plotdata)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        _diag(f"usage error: {exc}")
        return 1
    except ConvergenceError as exc:
        _diag(f"numerical failure: {exc}")
        return 3
    except (ValueError, OSError) as exc:
        _diag(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
