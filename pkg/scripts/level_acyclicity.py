"""Check that the levels Sal_n of the positive universal cover are acyclic
for a dihedral type, and print their f-vectors.

    python3 scripts/level_acyclicity.py --m 3 --max-n 3
"""

import argparse
import time

from artinkit import dihedral
from artinkit.salvetti import sal_level
from artinkit.topology import is_acyclic


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=3, help="dihedral label")
    ap.add_argument("--max-n", type=int, default=3)
    args = ap.parse_args()
    g = dihedral(args.m)
    bad = 0
    for n in range(args.max_n + 1):
        t0 = time.perf_counter()
        c = sal_level(g, n)
        ok = is_acyclic(c, verify=True)
        bad += not ok
        print(f"n={n}  f-vector={c.f_vector()}  acyclic={ok}  ({time.perf_counter() - t0:.1f}s)")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
