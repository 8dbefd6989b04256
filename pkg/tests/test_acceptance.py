"""Acceptance checks, one test per criterion.

Each test records a single ``criterion k: PASS|FAIL ...`` line; the lines
are printed together at the end of the pytest run (see conftest.py).
"""
import json
import math
import sys
import time

import numpy as np
import pytest

from osl import (adjusted_rand_index, assign, build_dendrogram, clusters_at_radius, osl_select,
                 sl_select, NoValidRadiusError, cli)
from osl.datagen import (build_model, example2_model, gaussian_noise_sine_model,
                         sine_highdim_model, squares_model)
from osl.evaluation import estimate_risks
from osl.theory import a6_epsilon_bound, ball_volume, psi

from oracles import ari_pairs, as_setset, components, distance_matrix, osl_scan, sl_scan

B = 1000
RESULTS = {}


def report(k, ok, detail):
    RESULTS[k] = (ok, detail)
    line = f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    assert ok, line


def _random_instance(rng):
    n = int(rng.integers(1, 31))
    dim = int(rng.integers(1, 4))
    if rng.random() < 0.5:
        X = rng.integers(-3, 4, size=(n, dim)).astype(float)
    else:
        X = rng.uniform(-1, 1, size=(n, dim))
        dup = rng.random(n) < 0.3
        if n > 1:
            X[dup] = X[rng.integers(0, n, dup.sum())]
    return X


def test_oracle_equivalence():
    rng = np.random.default_rng(20240)
    t0 = time.perf_counter()
    mismatches = 0
    for _ in range(200):
        X = _random_instance(rng)
        d = build_dendrogram(X)
        D = distance_matrix(X)
        for r in d.levels:
            if as_setset(clusters_at_radius(d, r).clusters) != as_setset(components(D, r)):
                mismatches += 1
        for m in range(1, min(len(X), 4) + 1):
            if osl_select(d, m).radius != osl_scan(D, m)[2]:
                mismatches += 1
            ref = sl_scan(D, m)
            try:
                got = sl_select(d, m)
            except NoValidRadiusError:
                got = None
            if got != ref:
                mismatches += 1
    dt = time.perf_counter() - t0
    report(1, mismatches == 0 and dt < 30, f"mismatches={mismatches} runtime={dt:.1f}s (<30s)")


def _risks(model, n, algos=("osl", "sl")):
    return estimate_risks(model, list(algos), model.m, n, B, seed=0)


def test_squares_easy():
    r = _risks(squares_model("easy", 0.2), 500)
    ok = r["osl"].risk <= 0.02 and r["sl"].risk >= 0.90
    report(2, ok, f"OSL={r['osl'].risk:.3f} (<=0.02) SL={r['sl'].risk:.3f} (>=0.90)")


def test_squares_tricky():
    r = _risks(squares_model("tricky", 0.2), 500)
    ok = r["osl"].risk <= 0.05 and r["sl"].risk >= 0.95
    report(3, ok, f"OSL={r['osl'].risk:.3f} (<=0.05) SL={r['sl'].risk:.3f} (>=0.95)")


def test_no_outliers():
    worst = 0.0
    cells = []
    for name in ("squares", "circles", "sine"):
        for case in ("easy", "tricky"):
            r = _risks(build_model(name, case, 0.0), 500)
            worst = max(worst, r["osl"].risk, r["sl"].risk)
            cells.append(f"{name}-{case}:{r['osl'].risk:.3f}/{r['sl'].risk:.3f}")
    report(4, worst <= 0.01, f"max risk={worst:.3f} (<=0.01) " + " ".join(cells))


def test_high_dimension_sweep():
    high = {D: _risks(sine_highdim_model(D, 0.2), 1000, ["osl"])["osl"].risk for D in range(3, 11)}
    low = _risks(sine_highdim_model(2, 0.2), 100, ["osl"])["osl"].risk
    ok = max(high.values()) <= 0.02 and low >= 0.90
    detail = " ".join(f"D{D}={v:.3f}" for D, v in high.items())
    report(5, ok, f"n=1000 {detail} (<=0.02); n=100 D2={low:.3f} (>=0.90)")


def test_gaussian_noise():
    cells = {(0.01, 0.0): (0.0, 0.05), (0.25, 0.0): (0.45, 0.80), (0.25, 1.0): (0.90, 1.0)}
    ok, parts = True, []
    for (s2, rho), (lo, hi) in cells.items():
        v = _risks(gaussian_noise_sine_model(s2, rho, 0.1), 500, ["osl"])["osl"].risk
        ok &= lo <= v <= hi
        parts.append(f"({s2},{rho:g})={v:.3f} in [{lo},{hi}]")
    report(6, ok, " ".join(parts))


def test_example2():
    r = _risks(example2_model(0.1), 200)
    analytic = 2 / 3 - (8 / 3) / (201 * 0.1)
    ok = r["sl"].risk >= 0.50 and r["osl"].risk <= 0.10
    report(7, ok, f"SL={r['sl'].risk:.3f} (>=0.50, bound {analytic:.3f}) "
                  f"OSL={r['osl'].risk:.3f} (<=0.10)")


def test_theory_closed_forms():
    vols = [1, 2, math.pi, 4 * math.pi / 3, math.pi**2 / 2]
    err_v = max(abs(ball_volume(s) - v) for s, v in enumerate(vols))
    err_p = abs(psi(1.0) - (2 * math.log(2) - 1))
    err_7 = abs(a6_epsilon_bound([1 / 3] * 3) - 1 / 7)
    err_11 = abs(a6_epsilon_bound([0.4, 0.6]) - 1 / 11)
    ok = max(err_v, err_p, err_7, err_11) <= 1e-12
    report(8, ok, f"ball={err_v:.1e} psi={err_p:.1e} 1/7={err_7:.1e} 1/11={err_11:.1e} (<=1e-12)")


def _pipeline_seconds(n, reps):
    X = np.random.default_rng(n).uniform(size=(n, 2))
    best = math.inf
    for _ in range(reps):
        t0 = time.perf_counter()
        d = build_dendrogram(X)
        assign(d, osl_select(d, 3).radius, 3)
        best = min(best, time.perf_counter() - t0)
    return best


def test_performance():
    _pipeline_seconds(50, 1)  # compile / load cached kernels
    sizes = [1000, 2000, 5000, 10000]
    secs = [_pipeline_seconds(n, 3 if n < 10000 else 1) for n in sizes]
    slope = np.polyfit(np.log(sizes), np.log(secs), 1)[0]
    ok = secs[-1] < 60 and 1 < slope < 3
    report(9, ok, f"n=1e4 {secs[-1]:.2f}s (<60s) log-log slope={slope:.2f} in (1,3)")


def test_ari_reference():
    # no benchmark corpus ships with the package: worked example plus ARI properties
    v = adjusted_rand_index([1, 1, 1, 2, 2, 2], [1, 1, 2, 2, 2, 2])
    rng = np.random.default_rng(10)
    oracle_err = 0.0
    sym_err = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 30))
        a, b = rng.integers(0, 4, n), rng.integers(0, 4, n)
        oracle_err = max(oracle_err, abs(adjusted_rand_index(a, b) - ari_pairs(a.tolist(), b.tolist())))
        sym_err = max(sym_err, abs(adjusted_rand_index(a, b) - adjusted_rand_index(b, a)))
    null = np.mean([adjusted_rand_index(rng.integers(0, 3, 200), rng.integers(0, 3, 200))
                    for _ in range(1000)])
    ok = abs(v - 1.2 / 3.7) < 1e-12 and oracle_err < 1e-12 and sym_err < 1e-12 and abs(null) < 0.05
    report(10, ok, f"corpus not vendored; example={v:.5f} (0.32432) oracle_err={oracle_err:.1e} "
                   f"sym_err={sym_err:.1e} null_mean={null:+.4f}")


def test_thread_determinism(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"scenario": "squares", "algorithms": ["osl", "sl"], "n": [200, 500],
                               "epsilon": [0.0, 0.1, 0.2], "delta_case": ["easy", "tricky"],
                               "B": 200, "seed": 11}))
    outs = []
    for threads in ("1", "8"):
        out = tmp_path / f"t{threads}.csv"
        assert cli.main(["risk", "--config", str(cfg), "--threads", threads, "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    rows = outs[0].count(b"\n") - 1
    report(11, outs[0] == outs[1], f"{rows} rows, 1 vs 8 threads byte-identical={outs[0] == outs[1]}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
