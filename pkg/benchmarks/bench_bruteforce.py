"""Compare the compiled and pure-Python brute-force kernels.

    python benchmarks/bench_bruteforce.py [--repeat 3] [--seed 1]
"""

import argparse
import random
import time

from adequate import _kernels
from adequate.adequacy import verify_bruteforce_ff
from adequate.carriers import FiniteFieldCarrier
from adequate.constraints import make_set
from adequate.finfield import ff_build

# (p, k, n): prime-field sets are mostly adequate, so the whole tree is searched
CASES = [(11, 1, 6), (13, 1, 6), (17, 1, 5), (2, 4, 5), (3, 2, 6)]


def workload(seed):
    rng = random.Random(seed)
    sets = []
    for p, k, n in CASES:
        F = ff_build(p, k)
        C = FiniteFieldCarrier(F)
        for _ in range(4):
            sets.append(make_set(rng.sample(F.elements(), n), 1, C))
    return sets


def timed(sets, backend, repeat):
    best, visited = float("inf"), 0
    for _ in range(repeat):
        t0 = time.perf_counter()
        visited = sum(verify_bruteforce_ff(A, backend=backend).branches for A in sets)
        best = min(best, time.perf_counter() - t0)
    return best, visited


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    sets = workload(args.seed)
    py_t, py_v = timed(sets, "python", args.repeat)
    print(f"sets: {len(sets)}  nodes visited: {py_v}")
    print(f"python  {py_t * 1e3:9.1f} ms")
    if _kernels.BACKEND != "cython":
        print("cython  unavailable (extension not built)")
        return
    cy_t, cy_v = timed(sets, None, args.repeat)
    assert cy_v == py_v, "backends visited different search trees"
    print(f"cython  {cy_t * 1e3:9.1f} ms")
    print(f"speedup {py_t / cy_t:9.1f}x")


if __name__ == "__main__":
    main()
