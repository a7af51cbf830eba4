"""Time the numba kernels against their numpy fallbacks.

Run with ``python benchmarks/bench_kernels.py [--box N] [--repeat R]``.
The first numba call compiles (or loads from cache) and is excluded.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from hardybidisc import _kernels
from hardybidisc.hardyops import TruncationBox


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--box", type=int, default=16)
    p.add_argument("--terms", type=int, default=24)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    basis = TruncationBox(args.box, args.box).basis()
    grid = rng.standard_normal((2 * args.box + 7, 2 * args.box + 7)) * (1 + 1j)
    off = np.array([args.box + 3, args.box + 3])
    gidx = rng.integers(-3, 4, size=(args.terms, 2))
    gval = rng.standard_normal(args.terms) + 1j * rng.standard_normal(args.terms)
    fgrid = rng.standard_normal((7, 7)) + 1j * rng.standard_normal((7, 7))
    foff = np.array([3, 3])

    cases = {
        "toeplitz_fill": (
            lambda: _kernels.toeplitz_fill_np(basis, basis, grid, off),
            lambda: _kernels.toeplitz_fill_nb(basis, basis, grid, off),
        ),
        "semicomm_fill": (
            lambda: _kernels.semicomm_fill_np(basis, gidx, gval, fgrid, foff),
            lambda: _kernels.semicomm_fill_nb(basis, gidx, gval, fgrid, foff),
        ),
    }
    print(f"box ({args.box},{args.box}), basis size {len(basis)}, best of {args.repeat}")
    print(f"{'kernel':<16}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name, (np_fn, nb_fn) in cases.items():
        nb_fn()  # compile or load from cache
        assert np.allclose(np_fn(), nb_fn())
        t_np = best_of(np_fn, args.repeat)
        t_nb = best_of(nb_fn, args.repeat)
        print(f"{name:<16}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>10.1f}")


if __name__ == "__main__":
    main()
