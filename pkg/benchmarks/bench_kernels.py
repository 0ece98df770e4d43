"""Compare the compiled kernels with the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat R]
Prints one row per kernel and size with the best time of each backend.
"""
import argparse
import timeit

import numpy as np

from conflow import _pykernels

try:
    from conflow import _ckernels
except ImportError:  # built without the extension
    _ckernels = None


def best_time(fn, repeat):
    number = max(1, int(0.05 / max(timeit.timeit(fn, number=1), 1e-7)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def cases(rng):
    for N in (8, 16, 32, 64):
        a = rng.normal(size=N) + 1j * rng.normal(size=N)
        yield "resonant_sum", N, (lambda a=a: _pykernels.resonant_sum(a)), (lambda a=a: _ckernels.resonant_sum(a, False))
    for N in (8, 16, 32, 48):
        c = rng.normal(size=N)
        _pykernels.cubic_forcing(c)  # build the dense tensor outside the timing
        yield "cubic_forcing", N, (lambda c=c: _pykernels.cubic_forcing(c)), (lambda c=c: _ckernels.cubic_forcing(c))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    rng = np.random.default_rng(0)
    print(f"{'kernel':<15}{'N':>5}{'numpy [s]':>14}{'cython [s]':>14}{'speedup':>10}")
    for name, N, py, cy in cases(rng):
        t_py = best_time(py, args.repeat)
        if _ckernels is None:
            print(f"{name:<15}{N:>5}{t_py:>14.3e}{'n/a':>14}{'':>10}")
            continue
        if not np.allclose(py(), cy(), rtol=1e-12, atol=1e-12):
            raise SystemExit(f"{name} N={N}: backends disagree")
        t_cy = best_time(cy, args.repeat)
        print(f"{name:<15}{N:>5}{t_py:>14.3e}{t_cy:>14.3e}{t_py / t_cy:>10.1f}")


if __name__ == "__main__":
    main()
