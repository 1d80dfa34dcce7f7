"""Compare the compiled and pure-Python table fills.

    python3 benchmarks/bench_kernels.py [--repeat 1] [--seed 1]

Each row reports the best wall time per backend and the speedup. Backends are
checked to return identical tables before timing.
"""

import argparse
import random
import sys
import timeit
from itertools import combinations

from nmsa import _kernels
from nmsa.core import KSequence
from nmsa.exact import _pair_step, _Problem
from nmsa.scoring import ScoringMatrix


def _matrix(rng, symbols="acgt"):
    n = len(symbols) + 1
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m[i][j] = m[j][i] = rng.randint(1, 9)
    m[-1][-1] = 0
    return ScoringMatrix.from_rationals(symbols, m)


def _cases(rng):
    g = _matrix(rng)
    for lengths in [(8, 8, 8), (12, 12, 12), (4, 4, 4, 4), (2, 2, 2, 2, 2)]:
        S = KSequence(tuple("".join(rng.choice("acgt") for _ in range(n)) for n in lengths))
        yield lengths, _Problem(S, g)


def _jobs(prob):
    k = prob.k
    v1 = [1] * (1 << k)
    v3 = [0] + [_pair_step(k, b) for b in range(1, 1 << k)]
    target = [max(prob.dims[h], prob.dims[i]) for h, i in combinations(range(k), 2)]
    yield "fill_sp", lambda mod: mod.fill_sp(prob.dims, prob.codes, prob.gap, prob.cost)
    yield "fill_layered/v1", lambda mod: mod.fill_layered(prob.dims, prob.codes, prob.gap, prob.cost, v1, prob.n_total)
    yield "fill_layered/v3", lambda mod: mod.fill_layered(
        prob.dims, prob.codes, prob.gap, prob.cost, v3, (k - 1) * prob.n_total
    )
    yield "fill_induced", lambda mod: mod.fill_induced(prob.dims, prob.codes, prob.gap, prob.cost, target)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=1)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    backends = _kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python backend is available", file=sys.stderr)
    py, cy = backends["python"], backends.get("cython")

    print(f"{'kernel':<16} {'lengths':<16} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for lengths, prob in _cases(random.Random(args.seed)):
        for name, job in _jobs(prob):
            t_py = min(timeit.repeat(lambda: job(py), number=1, repeat=args.repeat))
            if cy is None:
                print(f"{name:<16} {str(lengths):<16} {t_py:>10.4f} {'-':>10} {'-':>8}")
                continue
            if [int(x) for x in job(cy)] != list(job(py)):
                raise SystemExit(f"backend mismatch in {name} for {lengths}")
            t_cy = min(timeit.repeat(lambda: job(cy), number=1, repeat=args.repeat))
            print(f"{name:<16} {str(lengths):<16} {t_py:>10.4f} {t_cy:>10.4f} {t_py / t_cy:>7.1f}x", flush=True)


if __name__ == "__main__":
    main()
