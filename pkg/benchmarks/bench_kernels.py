"""Time the numba and numpy kernel backends side by side.

    python3 benchmarks/bench_kernels.py --q 4096 --repeat 5

Both backends are called directly through ``kernels.IMPLS``, so the
AGW_DISABLE_NUMBA flag has no effect here except to hide the numba column.
Each numba kernel is called once before timing so compilation is excluded.
"""

import argparse
import timeit

import numpy as np

from agwinv import kernels
from agwinv.field import get_field, prime_power


def cases(ctx, rng):
    p, n, lt, et = ctx.p, ctx.n, ctx.log_table, ctx.exp_table
    q = ctx.q
    a = rng.integers(0, q, 200_000).astype(np.int64)
    b = rng.integers(0, q, 200_000).astype(np.int64)
    coeffs = rng.integers(0, q, 64).astype(np.int64)
    xs = ctx.elements()
    units = rng.integers(0, q, q - 1).astype(np.int64)
    small = rng.integers(0, q, 400).astype(np.int64)
    return {
        "add": lambda K: K["add"](a, b, p, n),
        "mul": lambda K: K["mul"](a, b, lt, et),
        "sum": lambda K: K["sum"](a, p, n),
        "horner": lambda K: K["horner"](coeffs, xs, p, n, lt, et),
        "dft": lambda K: K["dft"](units, 1, p, n, q - 1, lt, et),
        "poly_mul": lambda K: K["poly_mul"](small, small, p, n, lt, et),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=2048)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    pn = prime_power(args.q)
    if pn is None:
        ap.error(f"{args.q} is not a prime power")
    ctx = get_field(*pn)
    backends = list(kernels.IMPLS)
    table = cases(ctx, np.random.default_rng(args.seed))

    print(f"F_{args.q}  backends: {', '.join(backends)}")
    print(f"{'kernel':<10}" + "".join(f"{b + ' (ms)':>14}" for b in backends) + ("   speedup" if len(backends) == 2 else ""))
    for name, call in table.items():
        if "numba" in kernels.IMPLS:
            call(kernels.IMPLS["numba"])  # compile
        row = {}
        for b in backends:
            K = kernels.IMPLS[b]
            row[b] = min(timeit.repeat(lambda: call(K), number=1, repeat=args.repeat)) * 1e3
        line = f"{name:<10}" + "".join(f"{row[b]:>14.2f}" for b in backends)
        if len(backends) == 2:
            line += f"   {row['numpy'] / row['numba']:>6.1f}x"
        print(line)


if __name__ == "__main__":
    main()
