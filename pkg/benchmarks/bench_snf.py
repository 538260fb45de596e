"""Compare the compiled and pure-Python Smith normal form kernels.

    python3 benchmarks/bench_snf.py [--sizes 8,16,32,64] [--reps 5]

Each size runs on the same random matrices over Z/n for several moduli;
the two backends must return identical (U, Uinv, V, d) before their timings are reported.
"""

import argparse
import random
import time

from cosupport._kernel import snf_mod_c, snf_mod_py

MODULI = (4, 12, 72, 2 ** 10)


def random_matrix(rng, r, c, n):
    return [[rng.randrange(n) for _ in range(c)] for _ in range(r)]


def _plain(x):
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return int(x)


def timed(fn, mats, n):
    t0 = time.perf_counter()
    out = [fn(A, len(A), len(A[0]), n) for A in mats]
    return time.perf_counter() - t0, out


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="8,16,32,64")
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if snf_mod_c is None:
        print("compiled kernel not available (build with pip install -e . or set up Cython)")
        return 1
    rng = random.Random(args.seed)
    print(f"{'size':>5} {'n':>6} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for size in (int(s) for s in args.sizes.split(",")):
        for n in MODULI:
            mats = [random_matrix(rng, size, size + size // 2, n) for _ in range(args.reps)]
            tp, op = timed(snf_mod_py, mats, n)
            tc, oc = timed(snf_mod_c, mats, n)
            if _plain(op) != _plain(oc):
                raise SystemExit(f"backends disagree at size {size}, n={n}")
            per = 1000 / args.reps
            print(f"{size:>5} {n:>6} {tp * per:>10.2f} {tc * per:>10.2f} {tp / tc if tc else float('inf'):>8.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
