"""Compare the compiled elimination kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Times rank computations on random sparse integer matrices, over Q and F_p,
and an end-to-end Hochschild computation with each backend swapped in.
"""

from __future__ import annotations

import argparse
import random
import time

from hochquiv import _kernels_py, linalg
from hochquiv.algebra import compute_basis
from hochquiv.hochschild import hh_dimensions
from hochquiv.presentation import parse_presentation

try:
    from hochquiv import _kernels as compiled
except ImportError:
    compiled = None

P = 32003

# K[x, y]/(x^3, y^3): commutative, so the boundary blocks are large and connected
BIG = """vertices: 1
arrow x: 1 -> 1
arrow y: 1 -> 1
relation x*y - y*x
relation x*x*x
relation y*y*y
nilbound: 5
"""


def random_rows(n: int, m: int, density: float, seed: int) -> list[dict[int, int]]:
    rng = random.Random(seed)
    rows = []
    for _ in range(n):
        row = {j: rng.choice((-2, -1, 1, 2)) for j in range(m) if rng.random() < density}
        rows.append(row)
    return rows


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def bench_ranks(repeat: int) -> None:
    print(f"{'matrix':<22}{'field':<8}{'python s':>10}{'compiled s':>12}{'speedup':>9}")
    for n, density in ((100, 0.1), (200, 0.05), (400, 0.02)):
        rows = random_rows(n, n, density, n)
        cases = [("Q", lambda k, r=rows: k.rank_integer([dict(x) for x in r], n)),
                 (f"F{P}", lambda k, r=rows: k.rank_mod_p(
                     [{j: v % P for j, v in x.items()} for x in r], n, P))]
        for label, call in cases:
            tp = best_of(lambda: call(_kernels_py), repeat)
            if compiled is None:
                print(f"{n}x{n} d={density:<12}{label:<8}{tp:>10.4f}{'n/a':>12}{'':>9}")
                continue
            assert call(_kernels_py) == call(compiled)
            tc = best_of(lambda: call(compiled), repeat)
            print(f"{n}x{n} d={density:<12}{label:<8}{tp:>10.4f}{tc:>12.4f}{tp / tc:>8.1f}x")


def bench_hochschild(repeat: int) -> None:
    A = compute_basis(parse_presentation(BIG))
    Q = 3
    saved = linalg._kernels
    results = {}
    for name, kern in (("python", _kernels_py), ("compiled", compiled)):
        if kern is None:
            continue
        linalg._kernels = kern
        try:
            results[name] = (best_of(lambda: hh_dimensions(A, Q), repeat), hh_dimensions(A, Q))
        finally:
            linalg._kernels = saved
    print(f"\nHH_0..{Q} of K[x,y]/(x^3, y^3), dim {A.dim}:")
    for name, (t, dims) in results.items():
        print(f"  {name:<9}{t:8.3f}s  {dims}")
    if len(results) == 2:
        assert results["python"][1] == results["compiled"][1]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"active backend: {linalg.BACKEND}\n")
    bench_ranks(args.repeat)
    bench_hochschild(args.repeat)


if __name__ == "__main__":
    main()
