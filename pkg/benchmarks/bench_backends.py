"""Time the integer kernels under the numpy and numba backends.

    python benchmarks/bench_backends.py [--repeat 5]

Both backends are checked for identical results before anything is timed.
The numba column is skipped when numba is not importable.
"""

import argparse
import random
import statistics
import time

import numpy as np

from tropfactor import (
    TropicalPoly,
    _kernels,
    check_positive_basis,
    complete_graph_basis,
    load_fixture,
    membership,
)


def median_time(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def cases(rng: random.Random):
    a = [[rng.randint(-50, 50) for _ in range(60)] for _ in range(200)]
    b = [[rng.randint(-50, 50) for _ in range(40)] for _ in range(60)]
    z = np.random.default_rng(0).random((120, 40)) < 0.4
    pos, neg = list(range(60)), list(range(60, 120))
    vals = [[rng.randint(-1000, 1000) for _ in range(50)] for _ in range(2000)]
    return {
        "int_matmul 200x60x40": lambda be: _kernels.int_matmul(a, b, be),
        "adjacent_pairs 60x60": lambda be: _kernels.adjacent_pairs(z, pos, neg, 3, be),
        "tie_mask 2000x50": lambda be: _kernels.tie_mask(vals, be).tolist(),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.BACKEND == "numba" else [])
    print(f"default backend: {_kernels.BACKEND}")
    print(f"{'kernel':<24}" + "".join(f"{b:>12}" for b in backends))
    for name, fn in cases(random.Random(1)).items():
        results = [fn(be) for be in backends]  # also warms up the jit
        assert all(r == results[0] for r in results[1:]), name
        row = [median_time(lambda: fn(be), args.repeat) for be in backends]
        print(f"{name:<24}" + "".join(f"{t * 1e3:>10.2f}ms" for t in row))

    # end to end, with whatever backend is active by default
    k5 = complete_graph_basis(5)
    print(f"{'check_positive_basis K5':<24}{median_time(lambda: check_positive_basis(k5), 1) * 1e3:>10.2f}ms")
    doc, k4 = load_fixture("quad_exa").to_json(), complete_graph_basis(4)
    # a fresh polynomial each time so no cached subdivision is reused
    fresh = lambda: membership(TropicalPoly.from_json(doc), k4)  # noqa: E731
    print(f"{'membership quad / K4':<24}{median_time(fresh, args.repeat) * 1e3:>10.2f}ms")


if __name__ == "__main__":
    main()
