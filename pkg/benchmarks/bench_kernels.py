#!/usr/bin/env python3
"""Time the numba and numpy versions of each hot kernel on the same inputs.

    python3 benchmarks/bench_kernels.py [--states 2000] [--repeat 5]

The numba kernels are called once before timing so compilation is excluded.
"""

import argparse
import time

import numpy as np

from corrcoh import _accel, _kernels
from corrcoh.measures import DISCORD_GRID, hemisphere_grid
from corrcoh.states import pauli_decompose_batch, random_density_batch


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def bench(name, numba_fn, numpy_fn, compare, repeat):
    t_np, r_np = best_of(numpy_fn, repeat)
    line = f"{name:<38} numpy {t_np * 1e3:9.2f} ms"
    if _accel.HAVE_NUMBA:
        numba_fn()  # compile
        t_nb, r_nb = best_of(numba_fn, repeat)
        line += f"   numba {t_nb * 1e3:9.2f} ms   speedup {t_np / t_nb:6.2f}x   max diff {compare(r_nb, r_np):.1e}"
    else:
        line += "   numba not installed"
    print(line)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--states", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rhos = random_density_batch(args.states, 4, (1, 2, 3, 4), seed=0)
    tol, sweeps = _kernels.JACOBI_TOL, _kernels.JACOBI_MAX_SWEEPS
    print(f"{args.states} random two-qubit states, best of {args.repeat}\n")

    bench(
        f"jacobi eigh ({args.states} x 4x4)",
        lambda: _kernels.jacobi_eigh_numba(rhos.copy(), tol, sweeps),
        lambda: _kernels.jacobi_eigh_numpy(rhos.copy(), tol, sweeps),
        lambda x, y: float(np.abs(x[0] - y[0]).max()),
        args.repeat,
    )

    dirs = hemisphere_grid(*DISCORD_GRID)
    a, b, E = pauli_decompose_batch(rhos[:50])

    def sweep(fn):
        return lambda: np.array([fn(a[i], b[i], E[i], dirs) for i in range(len(a))])

    bench(
        f"conditional entropy (50 x {len(dirs)} dirs)",
        sweep(_kernels.conditional_entropy_numba),
        sweep(_kernels.conditional_entropy_numpy),
        lambda x, y: float(np.abs(x - y).max()),
        args.repeat,
    )


if __name__ == "__main__":
    main()
