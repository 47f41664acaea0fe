"""Compare the compiled and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--n 100000] [--repeat 5]
"""

import argparse
import time

import numpy as np

from hyperseries import clifford, octonions, quaternions
from hyperseries.kernels import available_backends, get_backend


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    backends = {name: get_backend(name) for name in available_backends()}

    print(f"{'kernel':<28}" + "".join(f"{b:>12}" for b in backends) + f"{'max diff':>12}")
    for spec in (quaternions(), octonions(), clifford(4)):
        a = rng.standard_normal((args.n, spec.dim))
        b = rng.standard_normal((args.n, spec.dim))
        outs, times = [], []
        for mod in backends.values():
            outs.append(mod.mul_batch(a, b, spec._idx, spec._sgn))
            times.append(best_of(lambda: mod.mul_batch(a, b, spec._idx, spec._sgn), args.repeat))
        diff = max(float(np.max(np.abs(o - outs[0]))) for o in outs)
        print(f"{'mul_batch ' + spec.name:<28}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times) + f"{diff:>12.1e}")

    for spec in (quaternions(), octonions()):
        coeffs = rng.standard_normal((31, 2, spec.dim))
        z = rng.standard_normal(args.n) + 1j * rng.standard_normal(args.n)
        outs, times = [], []
        for mod in backends.values():
            outs.append(np.concatenate(mod.stem_horner(coeffs, z)))
            times.append(best_of(lambda: mod.stem_horner(coeffs, z), args.repeat))
        scale = max(1.0, float(np.max(np.abs(outs[0]))))
        diff = max(float(np.max(np.abs(o - outs[0]))) for o in outs) / scale
        print(f"{'stem_horner deg30 ' + spec.name:<28}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
              + f"{diff:>12.1e}")


if __name__ == "__main__":
    main()
