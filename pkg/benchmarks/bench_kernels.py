"""Compare the numba fast path against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

The same kernels are also selected at import time by the package itself;
set ANNLAB_NO_NUMBA=1 to force the fallback everywhere.
"""

import argparse
import time

import numpy as np

from annlab import _kernels as K


def timeit(fn, repeat):
    fn()  # warm-up (includes JIT compilation for the numba path)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    try:
        numba_impls = dict(zip(
            ("hamming_cross", "forcing_sweep",
             "grover_amplitudes", "bbbv_distances"),
            K._build_numba_kernels()))
    except ImportError:
        numba_impls = None
        print("numba unavailable; showing fallback timings only")

    numpy_impls = {
        "hamming_cross": K._np_hamming_cross,
        "forcing_sweep": K._forcing_sweep_np,
        "grover_amplitudes": K._np_grover_amplitudes,
        "bbbv_distances": K._np_bbbv_distances,
    }

    rng = np.random.default_rng(0)
    big = rng.integers(0, 2 ** 63, size=(512, 4),
                       dtype=np.int64).astype(np.uint64)
    cw = rng.integers(0, 2, size=(12, 48), dtype=np.uint8)
    u = K.pack_bits(np.hstack([cw, np.zeros((12, 1), dtype=np.uint8)]))
    v = K.pack_bits(np.hstack([cw, np.ones((12, 1), dtype=np.uint8)]))
    marked = np.array([7], dtype=np.int64)

    workloads = {
        "hamming_cross": ("512x512 pairs, 256-bit", lambda f: f(big, big)),
        "forcing_sweep": ("n=12, all 4096 selectors, c=2",
                          lambda f: f(u, v, np.int64(2), np.int64(1))),
        "grover_amplitudes": ("M=2^16, k=64",
                              lambda f: f(1 << 16, marked, 64)),
        "bbbv_distances": ("M=1024, Q=8", lambda f: f(1024, 8)),
    }

    print(f"{'kernel':<20} {'workload':<32} {'numpy':>10} {'numba':>10} "
          f"{'speedup':>8}")
    for name, (desc, call) in workloads.items():
        t_np = timeit(lambda: call(numpy_impls[name]), args.repeat)
        if numba_impls is not None:
            t_nb = timeit(lambda: call(numba_impls[name]), args.repeat)
            print(f"{name:<20} {desc:<32} {t_np * 1e3:>8.2f}ms "
                  f"{t_nb * 1e3:>8.2f}ms {t_np / t_nb:>7.1f}x")
        else:
            print(f"{name:<20} {desc:<32} {t_np * 1e3:>8.2f}ms {'-':>10} "
                  f"{'-':>8}")


if __name__ == "__main__":
    main()
