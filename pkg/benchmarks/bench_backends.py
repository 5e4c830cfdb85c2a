#!/usr/bin/env python3
"""Benchmark the compiled jet kernel against the pure-Python fallback.

Default mode runs the workload suite twice in subprocesses (once per
backend, selected via RULEDGEO_PURE_PYTHON) and prints a comparison
table. `--inner` runs the suite in-process with whatever backend is
active and prints machine-readable lines.

Usage:
    python benchmarks/bench_backends.py            # comparison table
    python benchmarks/bench_backends.py --inner    # single backend
"""

import argparse
import os
import subprocess
import sys
import time


def _time(fn, min_seconds=0.2):
    fn()  # warm up
    n = 1
    while True:
        t0 = time.perf_counter()
        for _ in range(n):
            fn()
        dt = time.perf_counter() - t0
        if dt >= min_seconds:
            return dt / n
        n = max(n * 2, int(n * min_seconds / max(dt, 1e-9)))


def workloads():
    import numpy as np

    from ruledgeo import fit_power_law, gallery, jets
    from ruledgeo.families import CurveFamily, trace_curve
    from ruledgeo.parser import parse_expression

    expr = parse_expression("sin(u)*cos(u)^2 + exp(-u^2)/(1+u^2) + sqrt(u+2)")
    us = np.linspace(0.0, 3.0, 2000)

    def jet_eval_grid():
        for u in us:
            expr.eval(jets.variable(u))

    hyper = gallery("hyperboloid_edlinger", c=1.0)

    def trace_s2():
        trace_curve(CurveFamily.ORTH_CONST_STRICTION, hyper, 1.0, 0.4, 400, 0.01)

    conoid = gallery("conoidal_const_delta", alpha=2.0, beta=1.0)

    def fit_s3():
        fit_power_law(conoid, CurveFamily.ORTH_RULINGS)

    def build_generic():
        gallery("generic_skew", seed=11, n_steps=2048)

    return [
        ("jet expression eval, 2000 pts", jet_eval_grid),
        ("S2 trace, 400 RK4 steps", trace_s2),
        ("S3 power-law fit, 33x21 grid", fit_s3),
        ("frame integration, 2048 steps", build_generic),
    ]


def run_inner():
    from ruledgeo import jets

    print(f"backend {jets.backend_name()}")
    for label, fn in workloads():
        print(f"timing\t{label}\t{_time(fn):.6f}")


def run_compare():
    rows = {}
    backends = {}
    for tag, env_extra in (("compiled", {}), ("pure-python", {"RULEDGEO_PURE_PYTHON": "1"})):
        env = dict(os.environ)
        env.pop("RULEDGEO_PURE_PYTHON", None)
        env.update(env_extra)
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--inner"],
            env=env, capture_output=True, text=True, check=True,
        ).stdout
        for line in out.splitlines():
            if line.startswith("backend "):
                backends[tag] = line.split(None, 1)[1]
            elif line.startswith("timing\t"):
                _, label, seconds = line.split("\t")
                rows.setdefault(label, {})[tag] = float(seconds)

    if backends.get("compiled") == "python":
        print("note: compiled extension not built; both columns use the "
              "pure-Python kernel\n")
    width = max(len(label) for label in rows)
    print(f"{'workload':<{width}}  {'compiled':>12} {'pure-python':>12} {'speedup':>8}")
    for label, cols in rows.items():
        speedup = cols["pure-python"] / cols["compiled"]
        print(f"{label:<{width}}  {cols['compiled']*1e3:>10.2f}ms "
              f"{cols['pure-python']*1e3:>10.2f}ms {speedup:>7.2f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--inner", action="store_true",
                    help="run the suite with the active backend only")
    args = ap.parse_args()
    if args.inner:
        run_inner()
    else:
        run_compare()


if __name__ == "__main__":
    main()
