"""Finiteness of parabolic subgroups W_X.

The exact decision is a match against the list of connected spherical
Coxeter graphs. Two independent checkers sit beside it: positive
definiteness of the cosine form, and whether enumeration of W closes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .coxgraph import INF, CoxeterGraph, connected_components, free_of_infinity, subgraph
from .config import active_caps
from .errors import DomainError, ResourceCapExceeded
from .words import enumerate_group

PD_TOLERANCE = 1e-9
PD_MAX_ORDER = 1000


@dataclass(frozen=True)
class SphericityVerdict:
    finite: bool
    # one (generator indices, tag) pair per component; tag is e.g. ("A", 3)
    # or None when the component is not spherical
    components: tuple = field(default=())

    def tags(self) -> list:
        return [tag for _, tag in self.components]


def _tag_str(tag) -> str:
    if tag is None:
        return "not spherical"
    fam, n = tag
    return f"I2({n})" if fam == "I2" else f"{fam}{n}"


def _adjacency(g: CoxeterGraph):
    adj = {i: {} for i in range(g.rank)}
    for i, j, m in g.edges():
        adj[i][j] = m
        adj[j][i] = m
    return adj


def classify_component(g: CoxeterGraph):
    """Family tag of a connected graph, or None if it is not spherical.

    Low-rank coincidences resolve by the precedence A > B > D > E > F > H > I2,
    so the single edge labelled 4 is B2 and the edge labelled 5 is I2(5)
    (H only exists from rank 3 on).
    """
    n = g.rank
    if n == 0:
        raise DomainError("empty graph has no component type")
    if len(connected_components(g)) != 1:
        raise DomainError("classify_component needs a connected graph")
    if n == 1:
        return ("A", 1)
    edges = g.edges()
    if any(m is INF for _, _, m in edges):
        return None
    if len(edges) != n - 1:
        return None  # connected with a cycle
    if n == 2:
        m = edges[0][2]
        if m == 3:
            return ("A", 2)
        if m == 4:
            return ("B", 2)
        return ("I2", m)
    adj = _adjacency(g)
    degrees = sorted(len(v) for v in adj.values())
    if degrees[-1] >= 4:
        return None
    if degrees[-1] == 3:
        if degrees[-2] == 3:
            return None
        if any(m != 3 for _, _, m in edges):
            return None
        centre = next(i for i, v in adj.items() if len(v) == 3)
        arms = []
        for start in adj[centre]:
            prev, cur, size = centre, start, 1
            while len(adj[cur]) == 2:
                nxt = next(x for x in adj[cur] if x != prev)
                prev, cur, size = cur, nxt, size + 1
            arms.append(size)
        a, b, c = sorted(arms)
        if a == 1 and b == 1:
            return ("D", n)
        if (a, b) == (1, 2) and c in (2, 3, 4):
            return ("E", n)
        return None
    # a path: read its labels from one end
    end = next(i for i, v in adj.items() if len(v) == 1)
    labels, prev, cur = [], None, end
    while True:
        nxt = [x for x in adj[cur] if x != prev]
        if not nxt:
            break
        labels.append(adj[cur][nxt[0]])
        prev, cur = cur, nxt[0]
    if all(m == 3 for m in labels):
        return ("A", n)
    big = [k for k, m in enumerate(labels) if m != 3]
    if len(big) != 1:
        return None
    k, m = big[0], labels[big[0]]
    at_end = k in (0, len(labels) - 1)
    if m == 4 and at_end:
        return ("B", n)
    if m == 4 and n == 4:
        return ("F", 4)
    if m == 5 and at_end and n in (3, 4):
        return ("H", n)
    return None


def _component_key(g: CoxeterGraph, X: tuple):
    return tuple(tuple(g.matrix[i][j] for j in X) for i in X)


@lru_cache(maxsize=None)
def _classify_matrix(key: tuple):
    n = len(key)
    gens = [f"g{i}" for i in range(n)]
    return classify_component(CoxeterGraph(tuple(gens), key))


def is_spherical(g: CoxeterGraph) -> SphericityVerdict:
    comps = []
    for comp in connected_components(g):
        X = tuple(sorted(comp))
        comps.append((frozenset(X), _classify_matrix(_component_key(g, X))))
    return SphericityVerdict(all(tag is not None for _, tag in comps), tuple(comps))


def is_spherical_subset(g: CoxeterGraph, X: Iterable[int]) -> bool:
    return is_spherical(subgraph(g, sorted(set(X)))).finite


def bilinear_form(g: CoxeterGraph) -> list:
    n = g.rank
    B = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            m = g.matrix[i][j]
            if m is INF:
                B[i][j] = -1.0
            elif i == j:
                B[i][j] = 1.0
            else:
                if m > PD_MAX_ORDER:
                    raise DomainError(f"numeric check only supports orders <= {PD_MAX_ORDER}")
                B[i][j] = -math.cos(math.pi / m)
    return B


def pd_pivots(g: CoxeterGraph) -> list:
    """Pivots of symmetric Gaussian elimination, stopping at the first one
    that is not above tolerance."""
    A = [row[:] for row in bilinear_form(g)]
    n = len(A)
    pivots = []
    for k in range(n):
        p = A[k][k]
        pivots.append(p)
        if p <= PD_TOLERANCE:
            break
        for i in range(k + 1, n):
            f = A[i][k] / p
            if f:
                for j in range(k + 1, n):
                    A[i][j] -= f * A[k][j]
    return pivots


def numeric_pd_check(g: CoxeterGraph) -> bool:
    return all(p > PD_TOLERANCE for p in pd_pivots(g))


def enumeration_closes(g: CoxeterGraph, cap: int) -> bool:
    """True iff enumerating W finishes with at most ``cap`` elements."""
    try:
        enumerate_group(g, cap)
    except ResourceCapExceeded:
        return False
    return True


def _factorial_order(tag) -> int:
    fam, n = tag
    f = math.factorial
    if fam == "A":
        return f(n + 1)
    if fam == "B":
        return 2 ** n * f(n)
    if fam == "D":
        return 2 ** (n - 1) * f(n)
    if fam == "I2":
        return 2 * n
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
            ("F", 4): 1152, ("H", 3): 120, ("H", 4): 14400}[tag]


def classified_order(v: SphericityVerdict):
    """|W| from the classification (product of component orders), None if infinite."""
    if not v.finite:
        return None
    out = 1
    for _, tag in v.components:
        out *= _factorial_order(tag)
    return out


def _all_subsets(n: int):
    for k in range(n + 1):
        for c in combinations(range(n), k):
            yield frozenset(c)


def enumerate_sf(g: CoxeterGraph) -> list:
    """S^f, listed by size then lexicographically on sorted indices."""
    return [X for X in _all_subsets(g.rank) if _subset_finite(g, X)]


def _subset_finite(g: CoxeterGraph, X: frozenset) -> bool:
    # a subset is finite iff each of its components is; components are cached
    sub = sorted(X)
    for comp in connected_components(subgraph(g, sub)):
        idx = tuple(sub[i] for i in sorted(comp))
        if _classify_matrix(_component_key(g, idx)) is None:
            return False
    return True


def enumerate_s_lt_inf(g: CoxeterGraph) -> list:
    return [X for X in _all_subsets(g.rank) if free_of_infinity(g, X)]


def is_fc(g: CoxeterGraph) -> bool:
    return set(enumerate_sf(g)) == set(enumerate_s_lt_inf(g))


def verdict_record(g: CoxeterGraph, cap: int | None = None) -> dict:
    cap = active_caps().group_order if cap is None else cap
    v = is_spherical(g)
    rec = {
        "finite": v.finite,
        "components": [
            {"generators": g.names(sorted(X)), "type": _tag_str(tag)} for X, tag in v.components
        ],
    }
    if v.finite:
        order = classified_order(v)
        rec["order"], rec["order_method"] = order, "classification"
        if order <= cap:
            try:
                rec["order"] = len(enumerate_group(g, order))
                rec["order_method"] = "enumeration"
            except ResourceCapExceeded:
                # closures of long elements (F4, H4, E-types) outgrow the closure cap
                pass
    return rec
