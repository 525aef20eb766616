"""Compare the numba and numpy kernels for bounded lattice enumeration.

Run with ``python benchmarks/bench_enumeration.py [--repeat N]``.  The
instances are the connecting domains into x on the boundary-twist diagram,
plus random lattices of rank 2 and 3.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ehtorus import _accel
from ehtorus.heegaard import torus_diagram


def diagram_instances():
    D = torus_diagram("d")
    x = D.eh_generator()
    basis = [list(P.coeffs) for P in D.periodic_domains()]
    out = []
    for y in D.generators():
        D0 = D.connecting_domain(y, x)
        if D0 is not None and y != x:
            out.append((list(D0.coeffs), basis))
    return out


def random_instances(rng: np.random.Generator, k: int, regions: int, count: int):
    return [(list(rng.integers(-3, 4, regions)), rng.integers(-2, 3, (k, regions)).tolist()) for _ in range(count)]


def time_kernel(instances, bound: int, use_numba: bool, repeat: int) -> tuple[float, int]:
    best, hits = float("inf"), 0
    for _ in range(repeat):
        t0 = time.perf_counter()
        hits = sum(len(_accel.enumerate_nonnegative(d0, P, bound, use_numba=use_numba)) for d0, P in instances)
        best = min(best, time.perf_counter() - t0)
    return best, hits


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    suites = {
        "boundary twist": diagram_instances(),
        "random k=2": random_instances(rng, 2, 14, 20),
        "random k=3": random_instances(rng, 3, 14, 5),
    }
    if _accel.USE_NUMBA:
        _accel.enumerate_nonnegative([0, 0], [[1, -1]], 1, use_numba=True)  # compile once
    print(f"{'suite':<16}{'bound':>6}{'numpy s':>12}{'numba s':>12}{'speedup':>9}")
    for name, inst in suites.items():
        for bound in (4, 8, 16):
            if name == "random k=3" and bound > 8:
                continue
            t_np, h_np = time_kernel(inst, bound, False, args.repeat)
            if _accel.USE_NUMBA:
                t_nb, h_nb = time_kernel(inst, bound, True, args.repeat)
                assert h_nb == h_np, "kernels disagree"
                print(f"{name:<16}{bound:>6}{t_np:>12.4f}{t_nb:>12.4f}{t_np / max(t_nb, 1e-9):>9.1f}")
            else:
                print(f"{name:<16}{bound:>6}{t_np:>12.4f}{'-':>12}{'-':>9}")


if __name__ == "__main__":
    main()
