"""Tabulate dim H^2(X_g, A; Z/p) across generations of the Pontryagin stages.

usage: python3 scripts/fate_tables.py [--triangles 1 2 3 6] [--primes 2 3 5] [--generations 3]

Generations beyond the simplex cap are skipped for that disk.
"""

from __future__ import annotations

import argparse
import time

from cohodim.pontryagin import DEFAULT_SIMPLEX_CAP, PATCH_FACE_COUNT, rel_class_fate


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--triangles", type=int, nargs="+", default=[1, 2, 3, 6])
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5])
    ap.add_argument("--generations", type=int, default=3)
    ap.add_argument("--simplex-cap", type=int, default=DEFAULT_SIMPLEX_CAP)
    args = ap.parse_args()
    for n in args.triangles:
        g = args.generations
        while g > 0 and n * PATCH_FACE_COUNT ** g > args.simplex_cap:
            g -= 1
        for p in args.primes:
            t0 = time.perf_counter()
            table = rel_class_fate(n, g, p, args.simplex_cap)
            print(table.to_text())
            print(f"({time.perf_counter() - t0:.2f}s)\n")


if __name__ == "__main__":
    main()
