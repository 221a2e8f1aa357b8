"""Compare the compiled and pure-Python canonical-labelling kernels.

    python benchmarks/bench_canon.py [--repeat R]

Workloads: the joined ellipse family (highly symmetric, many search
branches) and random cubic multigraphs.  Both kernels are checked to
return identical results on every input before timing.
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit

from beadweave import _kernel
from beadweave.diagram import Diagram, has_tadpole
from beadweave.families import joined_generator


def pack(d: Diagram):
    nv = d.n_vertices
    nbr, ecol = [-1] * (3 * nv), [-1] * (3 * nv)
    for a, b, _ in d.edges:
        ha, hb = 3 * a[0] + a[1], 3 * b[0] + b[1]
        nbr[ha], nbr[hb] = hb, ha
        ecol[ha] = ecol[hb] = 0
    return nv, d.n_tri, nbr, ecol, [0] * d.n_tri + [1] * d.n_uni


def random_cubic(rng: random.Random, k: int) -> Diagram:
    halves = [(v, s) for v in range(k) for s in range(3)]
    while True:
        rng.shuffle(halves)
        d = Diagram(k, 0, [(halves[i], halves[i + 1]) for i in range(0, len(halves), 2)])
        if not has_tadpole(d):
            return d


def workloads():
    for n in (4, 6, 8, 10):
        yield f"ellipse, {n} rungs", [joined_generator(n)]
    rng = random.Random(1)
    for k in (8, 14, 20):
        yield f"random cubic, {k} vertices (x20)", [random_cubic(rng, k) for _ in range(20)]


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    if _kernel.compiled_search is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    print(f"{'workload':36} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, diagrams in workloads():
        inputs = [pack(d) for d in diagrams]
        for x in inputs:
            if _kernel.python_search(*x) != _kernel.compiled_search(*x):
                raise SystemExit(f"kernels disagree on {name}")

        def py():
            for x in inputs:
                _kernel.python_search(*x)

        def cy():
            for x in inputs:
                _kernel.compiled_search(*x)

        t_py = min(timeit.repeat(py, number=1, repeat=args.repeat)) * 1e3
        t_cy = min(timeit.repeat(cy, number=1, repeat=args.repeat)) * 1e3
        print(f"{name:36} {t_py:10.2f} {t_cy:10.3f} {t_py / t_cy:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
