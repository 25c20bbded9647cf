"""Compare the numba and pure-numpy kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

The numba timings exclude the first (compiling) call.
"""

import argparse
import time

import numpy as np

from logent import _kernels as K


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def pair_case(n, rng):
    p = rng.random(n)
    p /= p.sum()
    f = rng.integers(0, 8, n).astype(np.int64)
    g = rng.integers(0, 8, n).astype(np.int64)
    return p, f, g


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not K.NUMBA_AVAILABLE:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(0)
    rows = []
    for n in (64, 512, 2048):
        p, f, g = pair_case(n, rng)
        K.label_pair_sums_numba(p, f, g)
        t_np = best_of(lambda: K.label_pair_sums_numpy(p, f, g), args.repeat)
        t_nb = best_of(lambda: K.label_pair_sums_numba(p, f, g), args.repeat)
        rows.append((f"pair sums n={n}", t_np, t_nb))

    for n, levels, energy in ((10, (1, 2, 3), 22), (60, (1, 2, 3, 4), 150), (40, (0, 1, 2, 3, 5), 90)):
        K.feasible_occupancies_numba(n, levels, energy, 1e-9)
        t_np = best_of(lambda: K.feasible_occupancies_numpy(n, levels, energy, 1e-9), args.repeat)
        t_nb = best_of(lambda: K.feasible_occupancies_numba(n, levels, energy, 1e-9), args.repeat)
        rows.append((f"occupancies n={n} m={len(levels)}", t_np, t_nb))

    print(f"{'case':<28}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for name, a, b in rows:
        print(f"{name:<28}{a * 1e3:>12.3f}{b * 1e3:>12.3f}{a / b:>10.1f}")


if __name__ == "__main__":
    main()
