"""Compare the compiled kernels with the pure-Python twin.

    python benchmarks/bench_kernels.py [--repeat N]

Runs row reduction over a few fields and the GF(2) row-space search on the
largest oracle instances, checks both backends agree, and prints timings.
"""

import argparse
import random
import time

from picod import _kernels_py
from picod.gf import FieldSpec
from picod.model import ProblemInstance

try:
    from picod import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_rref(mod, field, mats):
    exp, log = field.tables
    tables = mod.make_tables(exp, log, field.order)

    def run():
        return [tuple(map(tuple, mod.gf_rref(e, r, c, tables))) for e, r, c in mats]
    return run


def bench_search(mod, inst, beta):
    masks = [u.mask for u in inst.users]

    def run():
        lvl, basis, states, evals, _ = mod.gf2_subspace_search(
            inst.m, beta, inst.t, masks, False, inst.m * beta, True
        )
        return lvl, list(basis or []), list(states), evals
    return run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; nothing to compare")
        return 1

    rng = random.Random(0)
    rows = []
    for b in (1, 4, 8):
        f = FieldSpec(b)
        mats = []
        for _ in range(2000):
            r, c = rng.randint(2, 10), rng.randint(2, 10)
            mats.append(([rng.randrange(f.size) for _ in range(r * c)], r, c))
        rows.append((f"rref x2000 {f}", bench_rref(_kernels_py, f, mats), bench_rref(_kernels, f, mats)))

    for (m, t, S), beta in [((3, 1, (2,)), 2), ((4, 1, (2,)), 2), ((4, 1, (3,)), 2)]:
        inst = ProblemInstance(m, t, S)
        rows.append((f"search {inst} beta={beta}", bench_search(_kernels_py, inst, beta),
                     bench_search(_kernels, inst, beta)))

    print(f"{'case':<40} {'python s':>10} {'cython s':>10} {'speedup':>8}  agree")
    for name, py, cy in rows:
        tp, a = best_of(py, args.repeat)
        tc, b = best_of(cy, args.repeat)
        print(f"{name:<40} {tp:>10.4f} {tc:>10.4f} {tp / tc:>8.1f}  {a == b}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
