#!/usr/bin/env python3
"""Benchmark the compiled Numerov kernel against the pure-Python fallback.

Times a raw sweep, a full eigenvalue solve, and a critical-coupling solve
with each available backend, and reports the speedup.  Run from a checkout:

    python benchmarks/bench_numerov.py [--points 8000] [--repeats 5]
"""

import argparse
import statistics
import time

import numpy as np

from etcrit import kernels
from etcrit.oracle import GridSpec, RadialProblem, radial_critical_coupling, \
    radial_eigenvalue
from etcrit.potentials import make_builtin

WELL = make_builtin("exponential", 1.0)


def time_call(func, repeats):
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        func()
        samples.append(time.perf_counter() - start)
    return min(samples), statistics.median(samples)


def sweep_workload(points):
    h = 40.0 / points
    r = np.arange(1, points + 1) * h
    w = np.empty(points + 1)
    w[0] = 0.0
    w[1:] = 2.0 / (r * r) - 40.0 * np.exp(-r)
    return w, -5.0, h * h, h * h


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=8000)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    backends = kernels.available_backends()
    if "compiled" not in backends:
        print("note: compiled kernel unavailable; timing the fallback only")

    grid = GridSpec(40.0, args.points)
    prob = RadialProblem(1, WELL, 40.0)
    w, energy, h2, u1 = sweep_workload(args.points)

    workloads = {
        f"raw sweep ({args.points} points)":
            lambda sweep: sweep(w, energy, h2, u1),
        "eigenvalue l=1 n=1":
            lambda sweep: radial_eigenvalue(prob, 1, grid),
        "critical coupling l=1 n=0":
            lambda sweep: radial_critical_coupling(1, 0, WELL, grid),
    }

    active = kernels.numerov_sweep
    results = {}
    try:
        for name, work in workloads.items():
            results[name] = {}
            for backend, sweep in backends.items():
                kernels.numerov_sweep = sweep  # oracle resolves at call time
                best, median = time_call(lambda: work(sweep), args.repeats)
                results[name][backend] = (best, median)
    finally:
        kernels.numerov_sweep = active

    width = max(len(n) for n in results)
    print(f"{'workload'.ljust(width)}  backend   best [ms]  median [ms]")
    for name, by_backend in results.items():
        for backend, (best, median) in by_backend.items():
            print(f"{name.ljust(width)}  {backend:<8}  "
                  f"{best * 1e3:9.3f}  {median * 1e3:11.3f}")
        if {"compiled", "python"} <= by_backend.keys():
            speedup = by_backend["python"][0] / by_backend["compiled"][0]
            print(f"{''.ljust(width)}  speedup   {speedup:9.1f}x")


if __name__ == "__main__":
    main()
