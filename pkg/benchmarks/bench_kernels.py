"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends are run on the same inputs and must agree exactly.
"""

import argparse
import time

from alexlmo import _kernels_py
from alexlmo.closure import _arrays, close_raw
from alexlmo.diagrams import wheel
from alexlmo.weights import _arrays as w_arrays

try:
    from alexlmo import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def closure_case(n):
    d, partner = _arrays(wheel(n))
    legs = d.leg_darts()
    return lambda mod: mod.close_all(partner, legs)


def w_case(n):
    graphs = [w_arrays(g) for g in close_raw(wheel(n))]
    return lambda mod: [mod.w_poly(p, c) for p, c in graphs]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the fallback is available")
        return
    cases = [(f"close_all wheel({n})", closure_case(n)) for n in (6, 8, 10)]
    cases += [(f"w_poly on all closures of wheel({n})", w_case(n)) for n in (6, 8, 10)]
    print(f"{'case':42s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn in cases:
        tp, rp = best_of(lambda: fn(_kernels_py), args.repeat)
        tc, rc = best_of(lambda: fn(_kernels), args.repeat)
        if rp != rc:
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:42s} {tp * 1e3:9.2f}ms {tc * 1e3:9.2f}ms {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
