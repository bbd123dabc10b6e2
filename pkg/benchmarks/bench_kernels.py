"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]

Each kernel is run once untimed on both backends so compilation and cache
loading are excluded, then results are compared for equality.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time

import numpy as np

from lpsem import _kernels
from lpsem.corpus import generate_random_program
from lpsem.syntax import ground


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def run(repeat: int) -> list[dict]:
    rows, cases = [], []
    for n in (3, 4, 5):
        g = ground(generate_random_program(n, 2 * n, 3, 0.4, seed=n))
        cp = _kernels.compile_program(g)
        for name, code in (("F", _kernels.F), ("WF", _kernels.WF), ("WS", _kernels.WS), ("STABLE", _kernels.STABLE)):
            cases.append((f"certified_mask {name} atoms={n}",
                          lambda u, cp=cp, code=code: _kernels.certified_mask(cp, code, use_numba=u)))
    rng = np.random.default_rng(0)
    for n in (16, 64, 256):
        adj = rng.random((n, n)) < 2.0 / n
        cases.append((f"transitive_closure nodes={n}",
                      lambda u, adj=adj: _kernels.transitive_closure(adj, use_numba=u)))
    for label, fn in cases:
        fn(True)
        fn(False)
        t_numba, a = best_of(lambda: fn(True), repeat)
        t_numpy, b = best_of(lambda: fn(False), repeat)
        rows.append({
            "case": label,
            "numba_s": t_numba,
            "numpy_s": t_numpy,
            "speedup": t_numpy / t_numba if t_numba else float("inf"),
            "equal": bool(np.array_equal(a, b)),
        })
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    if not _kernels.NUMBA_AVAILABLE:
        print("numba is not installed; nothing to compare", file=sys.stderr)
        return 1
    rows = run(args.repeat)
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'case':38} {'numba':>10} {'numpy':>10} {'speedup':>8}  equal")
        for r in rows:
            print(f"{r['case']:38} {r['numba_s']:10.5f} {r['numpy_s']:10.5f} {r['speedup']:8.1f}  {r['equal']}")
    return 0 if all(r["equal"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
