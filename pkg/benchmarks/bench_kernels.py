"""Compare the Cython kernels against the pure-Python/numpy reference.

    python benchmarks/bench_kernels.py [--sizes 64 128 256] [--repeat 3]

Both backends are imported directly, so the comparison does not depend on
GASSMANN_PURE_PYTHON.  Results are checked for agreement before timing.
"""
import argparse
import random
import sys
import time

import numpy as np

from gassmann import _kernels as kernels
from gassmann._kernels import _pykernels

try:
    from gassmann._kernels import _ckernels
except ImportError:
    _ckernels = None

P = 2147483629  # largest prime below 2^31


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def random_mod(n, seed):
    rng = np.random.default_rng(seed)
    return rng.integers(0, P, size=(n, n), dtype=np.int64)


def boundary_matrices():
    # boundary maps of quotients of join complexes, the matrices the package actually reduces
    from gassmann import fixtures
    from gassmann.complex import join_complex, quotient

    for name, sub in (("affine8", "units"), ("psl32", "point")):
        gf = fixtures.load(name)
        Q = quotient(join_complex(gf.group, 2), gf.subgroup(sub))
        yield f"{name}/{sub} d1", Q.boundary(1).toarray().astype(object)


def random_small(n, seed):
    rng = random.Random(seed)
    a = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            a[i, j] = rng.choice((0, 0, 0, 0, 0, 0, 0, 0, 1, -1))
    return a


def backend_name(k):
    return "cython" if k is _ckernels else "python"


def cases(sizes):
    for n in sizes:
        a = random_mod(n, n)
        yield f"det mod p  n={n}", lambda k, a=a: k.det_mod_p(a.copy(), P), int
        yield f"rank mod p n={n}", lambda k, a=a: k.rank_mod_p(a.copy(), P), int
        if n <= 256:
            yield f"charpoly   n={n}", lambda k, a=a: k.charpoly_mod_p(a.copy(), P), lambda c: [int(x) for x in c]
    # the wrapper falls back to arbitrary precision if the int64 kernel overflows
    snf_canon = lambda r: [None if x is None else x.tolist() for x in r]
    for n in (32, 64):
        s = random_small(n, n + 1)
        yield f"snf random n={n}", lambda k, s=s: kernels.snf(s, True, backend=backend_name(k)), snf_canon
    for label, d in boundary_matrices():
        yield f"snf {label}", lambda k, d=d: kernels.snf(d, "right", backend=backend_name(k)), snf_canon


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256, 512])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("Cython extension not built; run `python setup.py build_ext --inplace`", file=sys.stderr)
        return 1

    print(f"{'kernel':<22}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for name, run, canon in cases(args.sizes):
        tp, rp = best_of(lambda: run(_pykernels), args.repeat)
        tc, rc = best_of(lambda: run(_ckernels), args.repeat)
        if canon(rp) != canon(rc):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 2
        print(f"{name:<22}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
