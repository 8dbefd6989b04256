"""Command line entry point ``osl``.

Exit codes: 0 success, 2 input or configuration error, 3 algorithmic
precondition error (e.g. ``m`` out of range, too few distinct points).
"""
from __future__ import annotations

import argparse
import itertools
import json
import logging
import math
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import datagen, evaluation, theory
from .errors import InvalidInputError, NoValidRadiusError, OSLError
from .io import ParseError, load_points, write_points
from .linkage import build_dendrogram
from .selectors import assign, osl_select, sl_select

log = logging.getLogger("osl")

EXIT_INPUT = 2
EXIT_ALGO = 3


class ConfigError(InvalidInputError):
    pass


class AlgorithmError(OSLError):
    pass


@contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def _sidecar(out, lines):
    """Timing and other run-dependent information, kept out of the CSV."""
    if out is None or out == "-":
        for line in lines:
            print(line, file=sys.stderr)
        return
    with open(f"{out}.log", "a", encoding="utf-8") as fh:
        stamp = time.strftime("%Y-%m-%dT%H:%M:%S")
        for line in lines:
            fh.write(f"{stamp} {line}\n")


def _noise(value):
    if value is None or value.lower() == "none":
        return None
    try:
        return int(value)
    except ValueError as exc:
        raise ConfigError(f"--noise-label must be an integer or 'none', got {value!r}") from exc


# ---------------------------------------------------------------------------
# cluster


def cmd_cluster(args) -> int:
    points = load_points(args.file, labeled=args.labeled, noise_label=_noise(args.noise_label))
    if isinstance(points, datagen.LabeledSample):
        points = points.points
    if args.m < 1 or args.m > len(points):
        raise AlgorithmError(f"m must lie in [1, {len(points)}], got {args.m}")
    d = build_dendrogram(points)
    trace = osl_select(d, args.m)
    radius = trace.radius if args.algo == "osl" else sl_select(d, args.m)
    clustering = assign(d, radius, args.m)
    with _output(args.out) as fh:
        fh.write(f"# algorithm={args.algo} m={args.m} radius={radius!r}\n")
        fh.write("index,label\n")
        for i, lab in enumerate(clustering.labels.tolist()):
            fh.write(f"{i},{lab}\n")
    trace_path = args.trace or (f"{args.out}.trace.csv" if args.out not in (None, "-") else None)
    if trace_path:
        with open(trace_path, "w", newline="", encoding="utf-8") as fh:
            fh.write("radius,n_clusters,mth_size,selected\n")
            for r, c, s in trace.rows():
                fh.write(f"{r!r},{c},{s},{int(r == radius)}\n")
    sizes = ", ".join(str(s) for s in clustering.sizes())
    print(f"{args.algo}: radius={radius:.6g} sizes=[{sizes}] outliers={clustering.outliers.size}",
          file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# risk


def _as_list(v):
    return list(v) if isinstance(v, (list, tuple)) else [v]


def load_config(path) -> dict:
    try:
        cfg = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}: {exc.msg}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    for key in ("n", "epsilon"):
        if key not in cfg or not _as_list(cfg[key]):
            raise ConfigError(f"config needs a nonempty {key!r} list")
    if "scenario" not in cfg and "model" not in cfg:
        raise ConfigError("config needs a 'scenario' name or a 'model' document")
    B = cfg.get("B", 1000)
    if not isinstance(B, int) or B < 1:
        raise ConfigError("B must be a positive integer")
    algos = _as_list(cfg.get("algorithms", cfg.get("algorithm", ["osl"])))
    for a in algos:
        if a not in evaluation.ALGORITHMS:
            raise ConfigError(f"unknown algorithm {a!r}")
    return cfg


TRICKY_DEFAULT = ("sine-highdim", "sine-gauss")


def default_case(scenario: str | None) -> str:
    """High-D and Gaussian-noise sine variants live on the tricky geometry."""
    return "tricky" if scenario in TRICKY_DEFAULT else "easy"


def risk_rows(cfg: dict, workers=None):
    """Evaluate every cell of the config grid, yielding CSV rows."""
    algos = _as_list(cfg.get("algorithms", cfg.get("algorithm", ["osl"])))
    B, seed = cfg.get("B", 1000), cfg.get("seed", 0)
    params = cfg.get("params", {})
    keys = sorted(params)
    grids = [_as_list(params[k]) for k in keys]
    cases = _as_list(cfg.get("delta_case", default_case(cfg.get("scenario"))))
    for case, extra, n, eps in itertools.product(cases, itertools.product(*grids),
                                                 _as_list(cfg["n"]), _as_list(cfg["epsilon"])):
        kw = dict(zip(keys, extra))
        try:
            if "model" in cfg:
                model = datagen.MixtureModel.from_dict(cfg["model"]).with_epsilon(float(eps))
            else:
                model = datagen.build_model(cfg["scenario"], case, float(eps), **kw)
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"cannot build model: {exc}") from exc
        m = cfg.get("m", model.m)
        res = evaluation.estimate_risks(model, algos, m, int(n), B, seed, workers)
        scenario = cfg.get("scenario", model.name)
        shown_case = "" if "model" in cfg or scenario == "example2" else case
        if kw:
            scenario += "[" + ";".join(f"{k}={v}" for k, v in kw.items()) + "]"
        for a in algos:
            r = res[a]
            yield {"scenario": scenario, "algorithm": a, "n": int(n), "epsilon": float(eps),
                   "delta_case": shown_case, "m": m, "B": B,
                   "failures": r.failures, "risk": r.risk, "stderr": r.stderr}


def cmd_risk(args) -> int:
    cfg = load_config(args.config)
    out = args.out or cfg.get("output")
    workers = args.threads or cfg.get("threads")
    t0 = time.perf_counter()
    rows = list(risk_rows(cfg, workers))
    with _output(out) as fh:
        evaluation.write_risk_csv(rows, fh)
    _sidecar(out, [f"risk: {len(rows)} rows in {time.perf_counter() - t0:.2f}s"])
    return 0


# ---------------------------------------------------------------------------
# bench


def cmd_bench(args) -> int:
    data = load_points(args.file, labeled=True, noise_label=_noise(args.noise_label))
    rows, reps, timing = [], [], []
    for algo in args.algo:
        st = evaluation.subsample_bench(data, algo, args.m, args.B, args.fraction, args.seed,
                                        args.threads)
        rows.append({"dataset": Path(args.file).stem, "algorithm": algo, "m": args.m, "B": args.B,
                     "fraction": args.fraction, "n_sub": st.n_sub, "valid": args.B - st.skipped,
                     "mean_ari": st.mean, "sd_ari": st.sd, "stderr_ari": st.stderr})
        reps.extend({"dataset": Path(args.file).stem, "algorithm": algo, "replication": b,
                     "n_sub": st.n_sub, "ari": float(v)} for b, v in enumerate(st.ari.tolist()))
        timing.append(f"bench {algo}: mean ARI {st.mean:.3f} (sd {st.sd:.3f}), "
                      f"mean time {st.mean_seconds:.4g}s, skipped {st.skipped}")
    with _output(args.out) as fh:
        evaluation.write_bench_csv(rows, fh)
    if args.replications:
        with _output(args.replications) as fh:
            evaluation.write_bench_csv(reps, fh, per_replication=True)
    _sidecar(args.out, timing)
    return 0


# ---------------------------------------------------------------------------
# bound


def _grid(text: str) -> np.ndarray:
    try:
        lo, hi, steps = text.split(":")
        lo, hi, steps = float(lo), float(hi), int(steps)
    except ValueError as exc:
        raise ConfigError(f"--grid must look like lo:hi:steps, got {text!r}") from exc
    if steps < 1:
        raise ConfigError("grid needs at least one step")
    return np.linspace(lo, hi, steps)


def cmd_bound(args) -> int:
    try:
        params = json.loads(Path(args.params).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"{args.params}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{args.params}:{exc.lineno}: {exc.msg}") from exc
    a, b = params.pop("a", None), params.pop("b", None)
    weights = params.pop("weights", None)
    try:
        if weights is not None:
            c = theory.ModelConstants.from_weights(weights, **params)
        else:
            c = theory.ModelConstants(**params)
    except TypeError as exc:
        raise ConfigError(f"bad bound parameters: {exc}") from exc
    grid = _grid(args.grid)
    if "lam" not in params:
        print("note: lam (the bound's leading constant) defaults to 1", file=sys.stderr)
    with _output(args.out) as fh:
        fh.write("r,bound,log_bound\n")
        for r in grid.tolist():
            lb = theory.log_risk_bound(r, c, a=a, b=b)
            fh.write(f"{r!r},{math.exp(lb)!r},{lb!r}\n")
    r_best, value = theory.minimize_bound(c, grid, a=a, b=b)
    print(f"best r={r_best:.6g} objective={value:.6g}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# generate


def cmd_generate(args) -> int:
    if args.model.endswith(".json"):
        try:
            model = datagen.MixtureModel.from_json(Path(args.model).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"{args.model}: {exc.strerror or exc}") from exc
        if args.eps is not None:
            model = model.with_epsilon(args.eps)
    else:
        kw = {}
        if args.dim is not None:
            kw["ambient_dim"] = args.dim
        if args.sigma2 is not None:
            kw.update(sigma2=args.sigma2, rho=args.rho)
        try:
            case = args.delta_case or default_case(args.model)
            model = datagen.build_model(args.model, case,
                                        0.0 if args.eps is None else args.eps, **kw)
        except KeyError as exc:
            raise ConfigError(f"model {args.model!r} needs parameter {exc}") from exc
    s = datagen.sample(model, args.n, args.seed)
    with _output(args.out) as fh:
        write_points(fh, s.points, s.truth)
    if args.model_out:
        Path(args.model_out).write_text(model.to_json(indent=2) + "\n", encoding="utf-8")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="osl", description="Outlier-robust single linkage.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", help="cluster a point file")
    p.add_argument("file")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--algo", choices=["osl", "sl"], default="osl")
    p.add_argument("--out")
    p.add_argument("--trace", help="write the per-level selection trace here")
    p.add_argument("--labeled", action="store_true", help="last column holds labels; ignored")
    p.add_argument("--noise-label", default="0")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("risk", help="Monte Carlo risk campaign from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--threads", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_risk)

    p = sub.add_parser("bench", help="ARI over random subsamples of a labeled file")
    p.add_argument("file")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--B", type=int, default=1000)
    p.add_argument("--fraction", type=float, default=0.75)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algo", nargs="+", default=["osl"], choices=["osl", "sl"])
    p.add_argument("--noise-label", default="0")
    p.add_argument("--threads", type=int)
    p.add_argument("--out")
    p.add_argument("--replications", help="also write one row per replication here")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("bound", help="evaluate the risk upper bound on a radius grid")
    p.add_argument("--params", required=True)
    p.add_argument("--grid", required=True, help="lo:hi:steps")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("generate", help="sample a built-in or JSON-defined model")
    p.add_argument("--model", required=True,
                   help="squares, circles, sine, sine-highdim, sine-gauss, example2 or a .json file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta-case", choices=["easy", "tricky"],
                   help="separation case (default: tricky for sine-highdim/sine-gauss, else easy)")
    p.add_argument("--dim", type=int)
    p.add_argument("--sigma2", type=float)
    p.add_argument("--rho", type=float, default=0.0)
    p.add_argument("--out")
    p.add_argument("--model-out", help="write the model as JSON here")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (NoValidRadiusError, AlgorithmError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ALGO
    except (ParseError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvalidInputError as exc:
        # bad parameters reaching the algorithms
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ALGO if args.command == "cluster" else EXIT_INPUT
    except OSLError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ALGO


if __name__ == "__main__":
    sys.exit(main())
