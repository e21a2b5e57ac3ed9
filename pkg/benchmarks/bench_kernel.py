"""Compiled vs pure-Python kernel.

Runs (a) raw multiplications in the top ring of an oracle tower and
(b) complete oracle runs, once per kernel.  Usage:

    python3 benchmarks/bench_kernel.py [--specs N] [--muls N]
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time

HERE = os.path.dirname(os.path.abspath(__file__))
FIELD = os.path.join(HERE, "..", "fields", "std.field")


def _workload(n_specs, n_muls):
    from kummerbreak import Field, load_fieldspec
    from kummerbreak.invariants import enumerate_specs
    from kummerbreak.kernels import describe
    from kummerbreak.oracle import build_tower, run_oracle

    K = Field(load_fieldspec(FIELD))
    specs = [s for _, s in zip(range(n_specs), enumerate_specs(K, 2))]
    L = build_tower(specs[0]).L
    rng = random.Random(0)
    xs = [[rng.randrange(L.mod) for _ in range(L.dim)] for _ in range(64)]
    t = time.perf_counter()
    for i in range(n_muls):
        L.mul(xs[i % 64], xs[(7 * i + 3) % 64])
    t_mul = time.perf_counter() - t
    run_oracle(specs[0])  # warm the per-field caches
    t = time.perf_counter()
    for s in specs:
        run_oracle(s)
    t_orc = time.perf_counter() - t
    return {"kernel": describe(), "compiled_ring": L.kernel.compiled,
            "mul_us": 1e6 * t_mul / n_muls, "oracle_ms": 1e3 * t_orc / len(specs),
            "ring_dim": L.dim}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--specs", type=int, default=8)
    ap.add_argument("--muls", type=int, default=2000)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.worker:
        print(json.dumps(_workload(args.specs, args.muls)))
        return
    rows = []
    for pure in ("0", "1"):
        env = dict(os.environ, KUMMERBREAK_PURE=pure)
        out = subprocess.run([sys.executable, __file__, "--worker", "--specs", str(args.specs),
                              "--muls", str(args.muls)], env=env, capture_output=True,
                             text=True, check=True)
        rows.append(json.loads(out.stdout))
    print(f"{'kernel':<12}{'mul (us)':>12}{'oracle/spec (ms)':>20}")
    for r in rows:
        print(f"{r['kernel']:<12}{r['mul_us']:>12.1f}{r['oracle_ms']:>20.1f}")
    if rows[0]["compiled_ring"]:
        print(f"speedup: mul x{rows[1]['mul_us'] / rows[0]['mul_us']:.1f}, "
              f"oracle x{rows[1]['oracle_ms'] / rows[0]['oracle_ms']:.1f}")
    else:
        print("compiled kernel not available; both rows ran pure Python")


if __name__ == "__main__":
    main()
