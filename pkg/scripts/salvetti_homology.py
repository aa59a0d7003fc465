"""Homology of the Salvetti complex for small spherical types, next to the
abelianized pure presentation read off its 2-skeleton.

    python3 scripts/salvetti_homology.py A1 A2 B2 "I2(5)"
"""

import argparse
import time

from artinkit import named_graph
from artinkit.salvetti import abelianization, extract_pure_presentation, salvetti_poset
from artinkit.topology import HomologyGroup, euler_characteristic, homology, order_complex


def fmt(group):
    parts = [f"Z^{group.betti}" if group.betti > 1 else "Z"] if group.betti else []
    parts += [f"Z/{d}" for d in group.torsion]
    return " + ".join(parts) or "0"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("types", nargs="*", default=["A1", "A2", "B2", "I2(5)", "I2(6)"])
    args = ap.parse_args()
    print(f"{'type':<8} {'|Sal|':>6} {'chi':>4}  {'homology':<28} {'H1 of pure pres.':<16} {'time':>6}")
    for name in args.types:
        g = named_graph(name)
        t0 = time.perf_counter()
        p = salvetti_poset(g)
        c = order_complex(p)
        h = homology(c)
        rank, torsion = abelianization(extract_pure_presentation(g))
        pres = fmt(HomologyGroup(1, rank, torsion))
        hs = ", ".join(fmt(x) for x in h.groups)
        print(f"{name:<8} {len(p):>6} {euler_characteristic(c):>4}  {hs:<28} {pres:<16} "
              f"{time.perf_counter() - t0:>5.1f}s")


if __name__ == "__main__":
    main()
