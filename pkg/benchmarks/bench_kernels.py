"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Each kernel is timed on both backends with the same inputs; the results are
checked for equality before timing.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from partlogic import kernels

CASES = [
    ("rgs_array(9)", lambda m: m.rgs_array(9)),
    ("refinement_matrix(n=6)", lambda m: m.refinement_matrix(kernels.rgs_array(6))),
    ("orbits(k=7, n=6, indist/indist)", lambda m: m.count_orbit_representatives(7, 6, kernels.ARBITRARY, True, True)),
    ("orbits(k=8, n=5, surjective)", lambda m: m.count_orbit_representatives(8, 5, kernels.SURJECTIVE, False, False)),
]


def best_of(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the python backend is available")
    print(f"{'kernel':<34}" + "".join(f"{name:>12}" for name in backends) + ("   speedup" if len(backends) > 1 else ""))
    for label, case in CASES:
        results = [case(mod) for mod in backends.values()]
        for r in results[1:]:
            assert np.array_equal(np.asarray(r), np.asarray(results[0])), label
        times = [best_of(lambda mod=mod: case(mod), args.repeat) for mod in backends.values()]
        row = f"{label:<34}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) > 1:
            row += f"   {times[0] / times[1]:>6.1f}x"
        print(row)


if __name__ == "__main__":
    main()
