"""Command-line entry points.

Subcommands: serve (TCP service), suite (registry listing), eval (file
batch evaluation), synth (synthetic data generation), run (baseline
optimizers), hv (hypervolume of a stored front), plotdata (scatter and
parallel-coordinate tables plus rendered figures for a run directory).

All matrix I/O is newline-delimited JSON (see docs/formats.md).  Exit
codes: 0 success, 1 data or runtime error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .core import NaxbenchError
from .evaluators import evaluate_batch, repair_genotypes
from .metrics import hypervolume
from .moea import nsga2_run, random_search_run
from .rpc import DEFAULT_PORT, serve_forever
from .spaces import SPACE_NAMES
from .store import SynthProfile, default_profile, write_space_data
from .suite import SUITES, instantiate, reference_point, registry_entry

_DATA_HELP = "data root directory (default: $NAXBENCH_DATA or ./naxbench-data)"


def _read_x_ndj(path: Path) -> list[list[int]]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            if isinstance(obj, dict):
                obj = obj.get("x")
            if not isinstance(obj, list):
                raise NaxbenchError(f"{path}:{lineno}: expected a genotype row")
            rows.append([int(v) for v in obj])
    if not rows:
        raise NaxbenchError(f"{path}: no genotype rows")
    return rows


def _parse_seeds(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(tok) for tok in text.split(",") if tok]


def _cmd_serve(args) -> int:
    serve_forever(args.host, args.port, args.data)
    return 0


def _cmd_suite(args) -> int:
    if args.action != "list":
        raise NaxbenchError(f"unknown suite action {args.action!r}")
    for suite_name, entries in SUITES.items():
        for e in entries:
            objs = ",".join(d.name for d in e.objectives)
            props = ",".join(sorted(e.properties))
            print(f"{suite_name}\t{e.index}\t{e.name}\t{e.space}\t"
                  f"D={e.n_var}\tM={e.n_obj}\t{objs}\t{props}")
    return 0


def _cmd_eval(args) -> int:
    inst = instantiate(args.suite, args.index, args.data)
    rows = _read_x_ndj(Path(args.infile))
    for i, row in enumerate(rows):
        if len(row) != inst.space.dimension:
            raise NaxbenchError(
                f"row {i}: {len(row)} positions, expected {inst.space.dimension}"
            )
    repaired = repair_genotypes(inst.space, rows)
    rng = np.random.default_rng(args.seed)
    F = evaluate_batch(inst, repaired, rng)
    out = Path(args.outfile)
    with open(out, "w", encoding="utf-8") as fh:
        for x, f in zip(repaired, F):
            fh.write(json.dumps({"x": list(x), "f": [float(v) for v in f]}) + "\n")
    print(f"wrote {len(repaired)} rows to {out}")
    return 0


def _cmd_synth(args) -> int:
    spaces = list(SPACE_NAMES) if args.space == "all" else [args.space]
    out = Path(args.out)
    for name in spaces:
        if args.profile is not None:
            with open(args.profile, encoding="utf-8") as fh:
                profile = SynthProfile.from_dict(json.load(fh))
        else:
            profile = default_profile(name)
        paths = write_space_data(out, name, profile, args.seed)
        print(f"{name}: " + ", ".join(str(p) for p in paths))
    return 0


def _cmd_run(args) -> int:
    inst = instantiate(args.suite, args.index, args.data)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for seed in _parse_seeds(args.seeds):
        if args.algo == "nsga2":
            res = nsga2_run(inst, N=args.pop, max_evals=args.evals, seed=seed)
        else:
            res = random_search_run(inst, max_evals=args.evals, seed=seed)
        payload = {
            "config": res["config"],
            "seed": res["seed"],
            "evals": res["evals"],
            "X": [list(x) for x in res["X"]],
            "F": res["F"].tolist(),
            "hv_trace": res["hv_trace"],
        }
        path = out / f"run_{args.algo}_s{seed}.json"
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
            fh.write("\n")
        print(f"{path}\tevals={res['evals']}\thv={res['hv_trace'][-1]:.6g}")
    return 0


def _cmd_hv(args) -> int:
    rows = []
    with open(args.front, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            if isinstance(obj, dict):
                obj = obj.get("f")
            if not isinstance(obj, list):
                raise NaxbenchError(f"{args.front}:{lineno}: expected an objective row")
            rows.append([float(v) for v in obj])
    if not rows:
        raise NaxbenchError(f"{args.front}: no objective rows")
    if args.ref:
        ref = [float(v) for v in args.ref.split(",")]
    elif args.ref_from_suite:
        if args.index is None:
            raise NaxbenchError("--ref-from-suite needs --index")
        ref = list(reference_point(args.ref_from_suite, args.index))
    else:
        raise NaxbenchError("need --ref or --ref-from-suite")
    value = hypervolume(np.asarray(rows), ref)
    print(f"{value:.12g}")
    return 0


def _load_runs(run_dir: Path) -> list[dict]:
    runs = []
    for path in sorted(run_dir.glob("run_*.json")):
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        payload["_file"] = path.name
        runs.append(payload)
    if not runs:
        raise NaxbenchError(f"{run_dir}: no run_*.json files")
    return runs


def _cmd_plotdata(args) -> int:
    runs = _load_runs(Path(args.run))
    out = Path(args.out)
    n_obj = len(runs[0]["F"][0])
    names = [f"f{i + 1}" for i in range(n_obj)]

    with open(out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["run", "algo", "seed"] + names)
        for run in runs:
            algo = run["config"].get("algo", "?")
            for row in run["F"]:
                w.writerow([run["_file"], algo, run["seed"]] + [repr(v) for v in row])

    # parallel-coordinate table: objectives min-max scaled over the directory
    allF = np.vstack([np.asarray(r["F"], dtype=float) for r in runs])
    lo, hi = allF.min(axis=0), allF.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    par_path = out.with_name(out.stem + "_parallel" + out.suffix)
    with open(par_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["run", "algo", "seed"] + [f"{n}_scaled" for n in names])
        for run in runs:
            algo = run["config"].get("algo", "?")
            for row in run["F"]:
                scaled = (np.asarray(row, dtype=float) - lo) / span
                w.writerow([run["_file"], algo, run["seed"]]
                           + [f"{v:.6f}" for v in scaled])

    written = [out, par_path]
    if not args.no_figures:
        written += _render_figures(runs, names, lo, span, out)
    print("wrote " + ", ".join(str(p) for p in written))
    return 0


def _render_figures(runs, names, lo, span, out: Path) -> list[Path]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    written = []
    cmap = plt.get_cmap("tab10")

    fig, ax = plt.subplots(figsize=(6, 4.5))
    for k, run in enumerate(runs):
        F = np.asarray(run["F"], dtype=float)
        label = f"{run['config'].get('algo', '?')} s{run['seed']}"
        order = np.argsort(F[:, 0])
        ax.plot(F[order, 0], F[order, 1] if F.shape[1] > 1 else F[order, 0],
                "o-", ms=3, lw=0.8, color=cmap(k % 10), label=label)
    ax.set_xlabel(names[0])
    ax.set_ylabel(names[1] if len(names) > 1 else names[0])
    ax.set_title("archive fronts")
    ax.legend(fontsize=7)
    fig.tight_layout()
    scatter_png = out.with_name(out.stem + ".png")
    fig.savefig(scatter_png, dpi=120)
    plt.close(fig)
    written.append(scatter_png)

    fig, ax = plt.subplots(figsize=(6, 4.5))
    xs = np.arange(len(names))
    for k, run in enumerate(runs):
        F = np.asarray(run["F"], dtype=float)
        scaled = (F - lo) / span
        for row in scaled:
            ax.plot(xs, row, color=cmap(k % 10), alpha=0.35, lw=0.8)
    ax.set_xticks(xs)
    ax.set_xticklabels(names)
    ax.set_ylabel("scaled objective")
    ax.set_title("parallel coordinates")
    fig.tight_layout()
    par_png = out.with_name(out.stem + "_parallel.png")
    fig.savefig(par_png, dpi=120)
    plt.close(fig)
    written.append(par_png)
    return written


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="naxbench",
        description="architecture-search benchmark suites, baselines and service",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the TCP evaluation service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=DEFAULT_PORT)
    p.add_argument("--data", default=None, help=_DATA_HELP)
    p.set_defaults(fn=_cmd_serve)

    p = sub.add_parser("suite", help="registry operations")
    p.add_argument("action", choices=["list"])
    p.set_defaults(fn=_cmd_suite)

    p = sub.add_parser("eval", help="evaluate a genotype file")
    p.add_argument("--suite", required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--in", dest="infile", required=True, metavar="X.ndj")
    p.add_argument("--out", dest="outfile", required=True, metavar="F.ndj")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--data", default=None, help=_DATA_HELP)
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("synth", help="generate synthetic benchmark data")
    p.add_argument("--space", required=True, choices=list(SPACE_NAMES) + ["all"])
    p.add_argument("--profile", default=None, metavar="PROFILE.json")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(fn=_cmd_synth)

    p = sub.add_parser("run", help="run a baseline optimizer")
    p.add_argument("--algo", required=True, choices=["nsga2", "random"])
    p.add_argument("--suite", required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--evals", type=int, default=10_000)
    p.add_argument("--seeds", default="0", help="e.g. 1..31 or 0,5,9")
    p.add_argument("--pop", type=int, default=None, help="nsga2 population size")
    p.add_argument("--out", required=True, metavar="DIR")
    p.add_argument("--data", default=None, help=_DATA_HELP)
    p.set_defaults(fn=_cmd_run)

    p = sub.add_parser("hv", help="hypervolume of a stored front")
    p.add_argument("--front", required=True, metavar="F.ndj")
    p.add_argument("--ref", default=None, help="comma-separated reference point")
    p.add_argument("--ref-from-suite", dest="ref_from_suite", default=None)
    p.add_argument("--index", type=int, default=None)
    p.set_defaults(fn=_cmd_hv)

    p = sub.add_parser("plotdata", help="tables + figures from a run directory")
    p.add_argument("--run", required=True, metavar="DIR")
    p.add_argument("--out", required=True, metavar="scatter.csv")
    p.add_argument("--no-figures", action="store_true",
                   help="emit CSV tables only")
    p.set_defaults(fn=_cmd_plotdata)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (NaxbenchError, OSError, json.JSONDecodeError, KeyError,
            IndexError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
