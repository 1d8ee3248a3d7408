"""Time the numba kernels against the plain Python / numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

The end-to-end row runs the oracle in a subprocess with and without
PSEAR_NO_JIT=1, so it includes interpreter start, the numba import (about
2 s) and loading the cached compiled kernels.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from psear import kernels
from psear._jit import JIT_ENABLED
from psear.multicomplex import monomials_of_degree


def random_adj(n, p, seed=0):
    rng = np.random.default_rng(seed)
    a = np.triu((rng.random((n, n)) < p).astype(np.uint8), 1)
    return a + a.T


def oracle_problem(F):
    n, d = F[1], len(F) - 1
    tops = monomials_of_degree(range(1, n + 1), d)
    lower = [m for k in range(1, d) for m in monomials_of_degree(range(1, n + 1), k)]
    index = {m: i for i, m in enumerate(lower)}
    width = max(len(t.divisors()) for t in tops)
    divs = np.full((len(tops), width), -1, dtype=np.int64)
    for t, top in enumerate(tops):
        ds = sorted(index[m] for m in top.divisors() if 0 < m.degree < d)
        divs[t, : len(ds)] = ds
    deg = np.array([m.degree for m in lower], dtype=np.int64)
    targets = np.array([0] + list(F[1:d]), dtype=np.int64)
    return divs, deg, targets, F[d]


def best(fn, repeat):
    fn()  # warm up (compile on first jit call)
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def row(name, t_fast, t_slow):
    print(f"{name:<42} {t_fast * 1e3:>10.3f} {t_slow * 1e3:>12.3f} {t_slow / t_fast:>8.1f}x")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not JIT_ENABLED:
        sys.exit("run without PSEAR_NO_JIT to compare both paths")

    print(f"{'kernel':<42} {'jit ms':>10} {'fallback ms':>12} {'speedup':>9}")
    loop_py = kernels._triangles_loop.py_func
    for n in (20, 60, 150):
        a = random_adj(n, 0.3)
        t_jit = best(lambda: kernels._triangles_loop(a), args.repeat)
        row(f"triangles n={n} (python loop)", t_jit, best(lambda: loop_py(a), args.repeat))
        row(f"triangles n={n} (numpy einsum)", t_jit, best(lambda: kernels._triangles_numpy(a), args.repeat))

    search_py = kernels.search_tops.py_func
    for F in ((1, 3, 5, 3), (1, 4, 8, 6), (1, 5, 12, 8), (1, 6, 21, 8)):
        prob = oracle_problem(F)
        t_jit = best(lambda: kernels.search_tops(*prob, 10**8), args.repeat)
        t_py = min(timeit.repeat(lambda: search_py(*prob, 10**8), number=1, repeat=1 if F[2] > 20 else args.repeat))
        status, _, steps = kernels.search_tops(*prob, 10**8)
        row(f"search_tops {F} ({steps} steps)", t_jit, t_py)

    code = "from psear.multicomplex import pure_oseq_oracle; pure_oseq_oracle((1, 6, 21, 8))"
    times = {}
    for label, env in (("jit", {}), ("nojit", {"PSEAR_NO_JIT": "1"})):
        e = dict(os.environ, **env)
        cmd = [sys.executable, "-c", code]
        subprocess.run(cmd, env=e, check=True)
        times[label] = min(timeit.repeat(lambda: subprocess.run(cmd, env=e, check=True), number=1, repeat=3))
    row("oracle (1,6,21,8) end to end", times["jit"], times["nojit"])


if __name__ == "__main__":
    main()
