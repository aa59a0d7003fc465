"""Standard parabolic pieces: the embedding iota_T of Sal(Gamma_T) into
Sal(Gamma), the retraction pi_T back onto it, their laws, and the FC
splitting along infinite edges."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .coxgraph import INF, CoxeterGraph, free_of_infinity, subgraph
from .monoid import canonicalize, end_set, enumerate_monoid
from .salvetti import (
    SalVertex,
    cyclic_normal_form,
    extract_artin_presentation,
    sal_leq,
    salvetti_complex,
    salvetti_poset,
)
from .sphericity import enumerate_sf
from .topology import chain_complex, smith_diagonal
from .words import CoxElement, in_parabolic, inverse, min_coset_rep, multiply


class ParabolicContext:
    """Ambient graph with a subset T; local indices of Gamma_T are positions
    in sorted(T)."""

    def __init__(self, graph: CoxeterGraph, T: Iterable[int]):
        self.graph = graph
        self.T = frozenset(T)
        if not self.T <= graph.all_gens():
            raise IndexError("T is not a subset of the generators")
        self.order = tuple(sorted(self.T))
        self.local = subgraph(graph, self.order)
        self.sf_T = [X for X in enumerate_sf(graph) if X <= self.T]
        mapped = {self.to_global_set(X) for X in enumerate_sf(self.local)}
        if mapped != set(self.sf_T):
            raise AssertionError("S^f of Gamma_T differs from the members of S^f inside T")

    def to_global_word(self, w: tuple) -> tuple:
        return tuple(self.order[i] for i in w)

    def to_global_set(self, X) -> frozenset:
        return frozenset(self.order[i] for i in X)

    def to_local_word(self, w: tuple) -> tuple:
        pos = {s: i for i, s in enumerate(self.order)}
        return tuple(pos[s] for s in w)

    def to_local_set(self, X) -> frozenset:
        pos = {s: i for i, s in enumerate(self.order)}
        return frozenset(pos[s] for s in X)


def iota(ctx: ParabolicContext, v: SalVertex) -> SalVertex:
    # a reduced word over T stays reduced and ShortLex-least in Gamma
    return SalVertex(CoxElement(ctx.graph, ctx.to_global_word(v.u.word)), ctx.to_global_set(v.X))


def split(ctx: ParabolicContext, u: CoxElement) -> tuple:
    """u = u0 u1 with u0 in W_T and u1 (T, emptyset)-minimal."""
    u1 = min_coset_rep(u, ctx.T, side="left")
    u0 = multiply(u, inverse(u1))
    return u0, u1


def pi(ctx: ParabolicContext, v: SalVertex) -> SalVertex:
    """pi_T(u,X) = (u0, X0) as a vertex of Sal(Gamma_T), where
    X0 = {t in T : u1^-1 t u1 in W_X}, i.e. T intersected with the conjugate
    subgroup u1 W_X u1^-1. Conjugating only the generators of X is not
    enough: the map would then fail to preserve the order."""
    u0, u1 = split(ctx, v.u)
    u1inv = inverse(u1)
    X0 = frozenset(t for t in ctx.T if in_parabolic(multiply(u1inv.times_gen(t), u1), v.X))
    if X0 not in set(ctx.sf_T):
        raise AssertionError("X0 is not spherical")
    if not set(u0.word) <= ctx.T:
        raise AssertionError("u0 is not in W_T")
    return SalVertex(CoxElement(ctx.local, ctx.to_local_word(u0.word)), ctx.to_local_set(X0))


def pi_generator_conjugates(ctx: ParabolicContext, v: SalVertex) -> SalVertex:
    """Variant with X0 = T intersected with the set u1 X u1^-1 (conjugate
    generators only). Kept for comparison; it is not order preserving."""
    u0, u1 = split(ctx, v.u)
    u1inv = inverse(u1)
    X0 = set()
    for x in v.X:
        c = multiply(u1.times_gen(x), u1inv)
        if len(c) == 1 and c.word[0] in ctx.T:
            X0.add(c.word[0])
    return SalVertex(CoxElement(ctx.local, ctx.to_local_word(u0.word)), ctx.to_local_set(X0))


def act(w: CoxElement, v: SalVertex) -> SalVertex:
    return SalVertex(multiply(w, v.u), v.X)


@dataclass
class RetractionReport:
    T: frozenset
    vertices: int = 0
    pairs: int = 0
    actions: int = 0
    section: bool = True
    monotone: bool = True
    equivariant: bool = True
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return self.section and self.monotone and self.equivariant

    def to_dict(self, g: CoxeterGraph) -> dict:
        return {
            "T": [g.generators[i] for i in sorted(self.T)],
            "vertices": self.vertices,
            "ordered_pairs": self.pairs,
            "actions": self.actions,
            "section": self.section,
            "order_preserving": self.monotone,
            "equivariant": self.equivariant,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }


def retraction_suite(g: CoxeterGraph, T: Iterable[int], trunc: int | None = None,
                     projection=None) -> RetractionReport:
    """Check pi o iota = id, (u,X) <= (v,Y) => pi(u,X) <= pi(v,Y), and
    pi(w v) = w pi(v) for w in W_T, exhaustively."""
    projection = pi if projection is None else projection
    ctx = ParabolicContext(g, T)
    rep = RetractionReport(ctx.T)
    big = salvetti_poset(g, trunc)
    small = salvetti_poset(ctx.local, trunc)
    rep.vertices = len(big)
    images = {v: projection(ctx, v) for v in big.elements}

    for v in small.elements:
        if projection(ctx, iota(ctx, v)) != v:
            rep.section = False
            rep.counterexample = {"law": "section", "vertex": str(v)}
            return rep

    for i, ups in enumerate(big.up):
        for j in ups:
            rep.pairs += 1
            a, b = big.elements[i], big.elements[j]
            pa, pb = images[a], images[b]
            if not (pa == pb or sal_leq(pa, pb)):
                rep.monotone = False
                rep.counterexample = {"law": "order", "lower": str(a), "upper": str(b)}
                return rep

    for w in small.elements:
        if w.X:
            continue
        wg = iota(ctx, w).u
        for v in big.elements:
            moved = act(wg, v)
            if moved not in images:
                continue  # left the truncation
            rep.actions += 1
            lhs = images[moved]
            rhs = act(w.u, images[v])
            if lhs != rhs:
                rep.equivariant = False
                rep.counterexample = {"law": "equivariance", "w": str(wg), "vertex": str(v)}
                return rep
    return rep


# -- consistency shadows --------------------------------------------------------

def h1_image_rank(g: CoxeterGraph, T: Iterable[int]) -> tuple:
    """(b1 of Sal(Gamma_T), rank of its image in H1(Sal(Gamma); Q)) under iota.
    Sal(Gamma_T) is a retract of Sal(Gamma), so equal values are expected."""
    ctx = ParabolicContext(g, T)
    small_c = salvetti_complex(ctx.local)
    big_c = salvetti_complex(g)
    # vertex map of the order complexes, induced by iota
    big_index = {v: k for k, v in enumerate(big_c.vertices)}
    vmap = [big_index[iota(ctx, v)] for v in small_c.vertices]
    big_edges = {e: k for k, e in enumerate(big_c.simplices.get(1, []))}

    # fundamental cycles of a spanning forest of the small 1-skeleton
    n = len(small_c.vertices)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adj = {i: [] for i in range(n)}
    extra = []
    for a, b in small_c.simplices.get(1, []):
        ra, rb = find(a), find(b)
        if ra == rb:
            extra.append((a, b))
        else:
            parent[ra] = rb
            adj[a].append(b)
            adj[b].append(a)

    def tree_path(a, b):
        prev = {a: None}
        stack = [a]
        while stack:
            x = stack.pop()
            if x == b:
                break
            for y in adj[x]:
                if y not in prev:
                    prev[y] = x
                    stack.append(y)
        path = [b]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        return path[::-1]

    def edge_chain(path) -> dict:
        out: dict = {}
        for x, y in zip(path, path[1:]):
            X, Y = vmap[x], vmap[y]
            e = (X, Y) if X < Y else (Y, X)
            k = big_edges[e]
            out[k] = out.get(k, 0) + (1 if X < Y else -1)
        return {k: v for k, v in out.items() if v}

    cycles = [edge_chain(tree_path(b, a) + [b]) for a, b in extra]
    b1_small = _betti(small_c, 1)
    cc = chain_complex(big_c)
    boundaries = cc.boundary.get(2, [])
    nrows = len(big_edges)
    r_b = len(smith_diagonal(boundaries, nrows))
    r_all = len(smith_diagonal(list(boundaries) + cycles, nrows))
    return b1_small, r_all - r_b


def _betti(c, d: int) -> int:
    from .topology import homology

    return homology(c)[d].betti


def artin_map_consistent(g: CoxeterGraph, T: Iterable[int]) -> bool:
    """Relators of the presentation of A_T, pushed forward by a_s -> a_s,
    are relators of the presentation of A."""
    ctx = ParabolicContext(g, T)
    big = {cyclic_normal_form(r) for r in extract_artin_presentation(g).relators}
    for r in extract_artin_presentation(ctx.local).relators:
        pushed = tuple((ctx.order[i], e) for i, e in r)
        if cyclic_normal_form(pushed) not in big:
            return False
    return True


def end_consistent(g: CoxeterGraph, T: Iterable[int], max_length: int) -> bool:
    """End computed in Gamma_T equals End in Gamma intersected with T, on
    every element of A+_T of length <= max_length."""
    ctx = ParabolicContext(g, T)
    for a in enumerate_monoid(ctx.local, max_length):
        local_end = ctx.to_global_set(end_set(a))
        big = end_set(canonicalize(g, ctx.to_global_word(a.canon)))
        if local_end != big & ctx.T:
            return False
    return True


# -- FC splitting ---------------------------------------------------------------

@dataclass
class FCNode:
    subset: frozenset
    pair: tuple | None = None  # the infinite pair (s, t) split at
    children: list = field(default_factory=list)
    union_ok: bool = True
    intersection_ok: bool = True

    def leaves(self) -> list:
        if not self.children:
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]

    def all_ok(self) -> bool:
        return self.union_ok and self.intersection_ok and all(c.all_ok() for c in self.children)

    def to_dict(self, g: CoxeterGraph) -> dict:
        d = {"subset": [g.generators[i] for i in sorted(self.subset)]}
        if self.pair is not None:
            d["split"] = [g.generators[i] for i in self.pair]
            d["union_ok"] = self.union_ok
            d["intersection_ok"] = self.intersection_ok
            d["children"] = [c.to_dict(g) for c in self.children]
        return d


def _sf_global(g: CoxeterGraph, X: frozenset) -> set:
    order = sorted(X)
    return {frozenset(order[i] for i in Y) for Y in enumerate_sf(subgraph(g, order))}


def fc_decomposition(g: CoxeterGraph, X: Iterable[int] | None = None) -> FCNode:
    """Split at the first infinite pair (s,t) into X - {s} and X - {t} until
    every piece is free of infinity, checking at each split that
    S^f(X) = S^f(T) u S^f(R) and S^f(T) n S^f(R) = S^f(T n R)."""
    X = g.all_gens() if X is None else frozenset(X)
    node = FCNode(X)
    order = sorted(X)
    pair = next(((s, t) for k, s in enumerate(order) for t in order[k + 1:]
                 if g.matrix[s][t] is INF), None)
    if pair is None:
        assert free_of_infinity(g, X)
        return node
    s, t = pair
    T, R = X - {s}, X - {t}
    sf, sf_T, sf_R, sf_TR = (_sf_global(g, Y) for Y in (X, T, R, T & R))
    node.pair = pair
    node.union_ok = sf == sf_T | sf_R
    node.intersection_ok = sf_T & sf_R == sf_TR
    node.children = [fc_decomposition(g, T), fc_decomposition(g, R)]
    return node
