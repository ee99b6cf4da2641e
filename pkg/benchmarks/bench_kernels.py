#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Covers the two hot paths: the list-scheduling evaluation kernel (called
thousands of times per PSO/GA search) and the built-in computing workloads.

    python benchmarks/bench_kernels.py [--quick]
"""

from __future__ import annotations

import argparse
import random
import time

from edgeflow.accel import load_backend
from edgeflow.environment import table1_environment
from edgeflow.generators import generate_montage
from edgeflow.offloading import offload
from edgeflow.sim.context import SimContext


def timeit(fn, min_seconds: float) -> tuple[float, int]:
    fn()  # warm up
    start = time.perf_counter()
    calls = 0
    while time.perf_counter() - start < min_seconds:
        fn()
        calls += 1
    return (time.perf_counter() - start) / calls, calls


def bench_simulation(backends, min_seconds: float) -> None:
    print("\nlist-scheduling evaluation kernel")
    print(f"{'workflow':>14} {'backend':>12} {'per eval':>12} {'speedup':>9}")
    env = table1_environment()
    for width in (5, 15, 32):
        dag = generate_montage(width)
        plan = offload(dag, env)
        rng = random.Random(7)
        rows = {}
        for name, kernels in backends.items():
            ctx = SimContext(dag, env, plan, kernels=kernels)
            vec = [rng.choice(ctx.allowed[i]) for i in range(len(ctx.task_ids))]
            per_call, _ = timeit(lambda: ctx.evaluate(vec), min_seconds)
            rows[name] = per_call
        base = rows.get("pure-python")
        for name, per_call in rows.items():
            speedup = f"{base / per_call:7.1f}x" if base and name != "pure-python" else ""
            print(f"{dag.name:>14} {name:>12} {per_call * 1e6:9.1f} us {speedup:>9}")


def bench_builtins(backends, min_seconds: float, quick: bool) -> None:
    rng = random.Random(99)
    text = "".join(rng.choice("ab") for _ in range(200_000 if quick else 2_000_000))
    stra = "".join(rng.choice("abcd") for _ in range(600 if quick else 3_000))
    strb = "".join(rng.choice("abcd") for _ in range(600 if quick else 3_000))
    values = [rng.randrange(10**6) for _ in range(800 if quick else 5_000)]
    terms = 200_000 if quick else 2_000_000
    workloads = {
        f"pi({terms})": lambda k: k.pi_estimate(terms),
        f"kmp({len(text)})": lambda k: k.kmp_search(text, "abababab"),
        f"lev({len(stra)})": lambda k: k.levenshtein(stra, strb),
        f"sort({len(values)})": lambda k: k.selection_sort(values),
    }
    print("\nbuilt-in computing workloads")
    print(f"{'workload':>14} {'backend':>12} {'per call':>12} {'speedup':>9}")
    for label, workload in workloads.items():
        rows = {}
        for name, kernels in backends.items():
            per_call, _ = timeit(lambda: workload(kernels), min_seconds)
            rows[name] = per_call
        base = rows.get("pure-python")
        for name, per_call in rows.items():
            speedup = f"{base / per_call:7.1f}x" if base and name != "pure-python" else ""
            print(f"{label:>14} {name:>12} {per_call * 1e3:9.2f} ms {speedup:>9}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()
    min_seconds = 0.2 if args.quick else 0.5

    backends = {}
    try:
        backends["cython"] = load_backend("cython")
    except ImportError:
        print("compiled kernels not built; benchmarking the fallback only")
    backends["pure-python"] = load_backend("pure-python")

    bench_simulation(backends, min_seconds)
    bench_builtins(backends, min_seconds, args.quick)


if __name__ == "__main__":
    main()
