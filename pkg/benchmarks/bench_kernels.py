"""Compare the compiled and pure-numpy jet kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Times batch jet evaluation for a few catalog maps at several batch sizes,
then one full verification report per backend.
"""

import argparse
import time
import timeit

import numpy as np

import sphconv.jet as jet
from sphconv.expr import builtin
from sphconv.verify import verify_all


def bench_batch(repeat):
    rng = np.random.default_rng(0)
    print(f"{'map':<6} {'points':>8} " + " ".join(f"{b:>12}" for b in jet.available_backends())
          + "   speedup")
    for name in ("f1", "f2", "f3"):
        ast = builtin(name).ast
        for n in (256, 12288, 200000):
            zs = 0.95 * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))
            times = {}
            for backend in jet.available_backends():
                t = timeit.repeat(lambda: jet.eval_jets(ast, zs, backend), number=1,
                                  repeat=repeat)
                times[backend] = min(t)
            cells = " ".join(f"{times[b] * 1e3:10.3f}ms" for b in times)
            speed = (f"{times['python'] / times['compiled']:8.2f}x"
                     if "compiled" in times else "")
            print(f"{name:<6} {n:>8} {cells} {speed}")


def bench_report():
    saved = jet.BACKEND
    try:
        for backend in jet.available_backends():
            jet.BACKEND = backend
            start = time.perf_counter()
            verify_all(builtin("f1"))
            print(f"verify_all(f1) with {backend:<8}: {time.perf_counter() - start:.3f}s")
    finally:
        jet.BACKEND = saved


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    bench_batch(args.repeat)
    bench_report()


if __name__ == "__main__":
    main()
