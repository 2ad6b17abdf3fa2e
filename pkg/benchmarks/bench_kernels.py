"""Compare the compiled and pure-Python double-precision kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from qtriterm import _pykernels, kernels


def cases(n=200, seed=0):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        q = rng.uniform(0.1, 0.6)
        a, b, c = (rng.uniform(0.2, 0.9) for _ in range(3))
        x = rng.uniform(0.05, 0.7)
        out.append((a, b, c, x, q))
    return out


def run_phi(mod, data):
    for a, b, c, x, q in data:
        mod.phi21(a, b, c, x, q, 1e-16, 200000, 3, 1e-10, False)


def run_qpoch(mod, data):
    for a, _, _, _, q in data:
        mod.qpoch_inf(a, q, 1e-16, 200000, 3)
        mod.qpoch_fin(a, 7, q, 1e-10)
        mod.qpoch_fin(a, -7, q, 1e-10)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    data = cases()
    if kernels.BACKEND != "cython":
        print("compiled extension not built; only the Python kernels are available")
    impls = {"python": _pykernels}
    if kernels.BACKEND == "cython":
        impls["cython"] = kernels._impl
    for label, fn in (("phi21", run_phi), ("qpoch", run_qpoch)):
        times = {}
        for name, mod in impls.items():
            times[name] = min(timeit.repeat(lambda: fn(mod, data), number=1, repeat=args.repeat))
            print(f"{label:6s} {name:7s} {times[name] * 1e3:9.2f} ms  ({len(data)} calls)")
        if "cython" in times:
            print(f"{label:6s} speedup {times['python'] / times['cython']:.1f}x")


if __name__ == "__main__":
    main()
