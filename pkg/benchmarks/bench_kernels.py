"""Compare the compiled and pure-Python kernels on random hosts.

    python benchmarks/bench_kernels.py --sizes 64 128 256 --repeat 3
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from posetlevels import _backend
from posetlevels.finders import PatternSpec
from posetlevels.levels import LevelDecomposition
from posetlevels.oracle import order_codes, random_poset


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench(n: int, kernels, repeat: int, seed: int) -> dict[str, float]:
    rng = np.random.default_rng(seed)
    p = random_poset(n, rng, density=4.0 / n)
    lt = p.kernel_matrix
    l = LevelDecomposition.of(p)
    slc, _ = kernels.slc_sweep(lt, l.order)
    out = {
        "level_sweep": _best(lambda: kernels.level_sweep(lt), repeat),
        "slc_sweep": _best(lambda: kernels.slc_sweep(lt, l.order), repeat),
        "scan_based21": _best(lambda: kernels.scan_based21(lt, l.level_array, l.order, l.starts, slc, n + 1), repeat),
    }
    # small oracle instance: the pattern is absent, so the whole space is searched
    q = random_poset(min(n, 14), rng, density=0.3)
    pat = PatternSpec("nacli", 2, 3).poset
    ql, pl = LevelDecomposition.of(q), LevelDecomposition.of(pat)
    args = (
        order_codes(pat), order_codes(q), pl.level_array, ql.level_array, 3,
        pat.matrix.sum(0).astype(np.int64), pat.matrix.sum(1).astype(np.int64),
        q.matrix.sum(0).astype(np.int64), q.matrix.sum(1).astype(np.int64),
    )
    out["oracle_search"] = _best(lambda: kernels.oracle_search(*args), repeat)
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    backends = _backend.available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'n':>5} {'kernel':<14}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for n in args.sizes:
        rows = {b: bench(n, _backend.get_kernels(b), args.repeat, args.seed) for b in backends}
        for name in rows[backends[0]]:
            line = f"{n:>5} {name:<14}" + "".join(f"{rows[b][name] * 1e3:>10.2f}ms" for b in backends)
            if len(backends) == 2:
                line += f"{rows['python'][name] / max(rows['cython'][name], 1e-9):>11.1f}x"
            print(line)


if __name__ == "__main__":
    main()
