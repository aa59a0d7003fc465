"""Sweep rank-3 Coxeter graphs with labels in {2..6, inf} and tabulate the
three finiteness checks side by side.

    python3 scripts/sphericity_sweep.py [--enum-cap 500]
"""

import argparse
from collections import Counter
from itertools import product

from artinkit import INF, CoxeterGraph
from artinkit.sphericity import (
    _tag_str,
    classified_order,
    enumeration_closes,
    is_spherical,
    numeric_pd_check,
)


def corpus():
    for a, b, c in product([2, 3, 4, 5, 6, INF], repeat=3):
        edges = [e for e in (("a", "b", a), ("b", "c", b), ("a", "c", c)) if e[2] != 2]
        yield (a, b, c), CoxeterGraph.from_edges(["a", "b", "c"], edges)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--enum-cap", type=int, default=500)
    args = ap.parse_args()
    types, disagree = Counter(), []
    for labels, g in corpus():
        v = is_spherical(g)
        pd, closes = numeric_pd_check(g), enumeration_closes(g, args.enum_cap)
        if not v.finite == pd == closes:
            disagree.append(labels)
        if v.finite:
            key = " x ".join(sorted(_tag_str(t) for t in v.tags()))
            types[(key, classified_order(v))] += 1
    print(f"{'type':<20} {'|W|':>6} {'graphs':>7}")
    for (key, order), n in sorted(types.items(), key=lambda kv: kv[0][1]):
        print(f"{key:<20} {order:>6} {n:>7}")
    print(f"finite: {sum(types.values())} of 216, disagreements: {len(disagree)}")
    for labels in disagree:
        print("  disagree:", labels)
    return 1 if disagree else 0


if __name__ == "__main__":
    raise SystemExit(main())
