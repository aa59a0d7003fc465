"""Posets and complexes attached to a Coxeter graph.

Coxeter complex, coset posets P / P0 / Pf (and the s-minimal pieces of Pf),
the Salvetti poset on W x S^f, the cells of its quotient BSal with the two
presentations read off them, and finite pieces of the universal-cover poset
on A+ x S^f.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .coxgraph import INF, CoxeterGraph, subgraph
from .errors import DomainError
from .monoid import MonoidElement, divides, enumerate_monoid, end_set, quotient, tau, theta
from .sphericity import enumerate_sf, is_spherical
from .topology import FinitePoset, SimplicialComplex, order_complex, smith_diagonal
from .words import (
    CoxElement,
    enumerate_ball,
    enumerate_group,
    format_word,
    identity,
    in_parabolic,
    inverse,
    is_minimal,
    min_coset_rep,
    multiply,
    parabolic_elements,
    pi_word,
)


def _fmt_set(g: CoxeterGraph, X) -> str:
    return "{" + ",".join(g.generators[i] for i in sorted(X)) + "}"


def _elements(g: CoxeterGraph, trunc: int | None) -> list:
    if trunc is None:
        if not is_spherical(g).finite:
            raise DomainError("infinite Coxeter group: pass a truncation radius")
        return enumerate_group(g)
    return enumerate_ball(g, trunc)


def _subsets(X) -> list:
    X = sorted(X)
    return [frozenset(c) for k in range(len(X) + 1) for c in combinations(X, k)]


# -- cosets -----------------------------------------------------------------

@dataclass(frozen=True)
class Coset:
    """u W_X with u the (emptyset, X)-minimal representative."""

    rep: CoxElement
    X: frozenset

    def __str__(self):
        return f"{self.rep} W{_fmt_set(self.rep.graph, self.X)}"


def coset(w: CoxElement, X: Iterable[int]) -> Coset:
    X = frozenset(X)
    return Coset(min_coset_rep(w, X), X)


def coset_leq(a: Coset, b: Coset) -> bool:
    """u W_X inside v W_Y iff X is in Y and v^-1 u lies in W_Y."""
    if not a.X <= b.X:
        return False
    return in_parabolic(inverse(b.rep) * a.rep, b.X)


def coxeter_complex(g: CoxeterGraph) -> SimplicialComplex:
    """Vertices are the cosets w W^s, W^s = W_{S - s}; the top simplices are
    {w W^s : s in S}, one for each w."""
    if not is_spherical(g).finite:
        raise DomainError("the Coxeter complex is only built for spherical graphs")
    S = frozenset(range(g.rank))
    verts: dict = {}
    maximal = []
    for w in enumerate_group(g):
        simplex = []
        for s in range(g.rank):
            c = coset(w, S - {s})
            simplex.append(verts.setdefault(c, len(verts)))
        maximal.append(simplex)
    labels = sorted(verts, key=verts.get)
    return SimplicialComplex.from_maximal(labels, maximal)


def coset_poset(g: CoxeterGraph, variant: str = "P", trunc: int | None = None) -> FinitePoset:
    """variant 'P': all X; 'P0': X != S; 'Pf': X in S^f. With trunc, only
    cosets whose representative has length <= trunc (and every relation
    among them)."""
    if variant not in ("P", "P0", "Pf"):
        raise ValueError(f"unknown coset poset variant {variant!r}")
    S = frozenset(range(g.rank))
    if variant == "Pf":
        subsets = enumerate_sf(g)
    else:
        subsets = [X for X in _subsets(S) if variant == "P" or X != S]
    elems = _elements(g, trunc)
    out = {}
    for X in subsets:
        for w in elems:
            c = coset(w, X)
            out.setdefault(c, None)
    cosets = sorted(out, key=lambda c: (len(c.X), sorted(c.X), len(c.rep), c.rep.word))
    return FinitePoset.from_leq(cosets, coset_leq)


def is_s_minimal(c: Coset, s: int) -> bool:
    """lg(s u) = lg(u) + 1 and s u is (emptyset, X)-minimal."""
    su = c.rep.gen_times(s)
    return len(su) == len(c.rep) + 1 and is_minimal(su, c.X)


def s_minimal_poset(g: CoxeterGraph, X0: Iterable[int], trunc: int | None = None) -> FinitePoset:
    """Sub-poset of Pf on the cosets that are s-minimal for some s in X0."""
    X0 = frozenset(X0)
    if not X0:
        raise ValueError("X0 must be nonempty")
    pf = coset_poset(g, "Pf", trunc)
    return pf.subposet(c for c in pf.elements if any(is_s_minimal(c, s) for s in X0))


# -- the Salvetti poset -------------------------------------------------------

@dataclass(frozen=True)
class SalVertex:
    u: CoxElement
    X: frozenset

    def __str__(self):
        return f"({self.u}, {_fmt_set(self.u.graph, self.X)})"


def sal_leq(a: SalVertex, b: SalVertex) -> bool:
    """(u,X) <= (v,Y) iff X in Y, v^-1 u in W_Y and v^-1 u is (emptyset,X)-minimal."""
    if not a.X <= b.X:
        return False
    w = inverse(b.u) * a.u
    return in_parabolic(w, b.X) and is_minimal(w, a.X)


def salvetti_poset(g: CoxeterGraph, trunc: int | None = None, check: bool = True) -> FinitePoset:
    """Poset on W x S^f (elements with lg(u) <= trunc when truncating).

    Relations are generated from downsets: below (v,Y) sit exactly the
    (vw, X) with X in Y, w in W_Y and w (emptyset,X)-minimal.
    """
    sf = enumerate_sf(g)
    elems = _elements(g, trunc)
    verts = [SalVertex(u, X) for X in sf for u in elems]
    index = {v: i for i, v in enumerate(verts)}
    less = []
    for j, top in enumerate(verts):
        Y = top.X
        WY = parabolic_elements(g, Y)
        for X in _subsets(Y):
            for w in WY:
                if not is_minimal(w, X):
                    continue
                i = index.get(SalVertex(multiply(top.u, w), X))
                if i is not None and i != j:
                    less.append((i, j))
    return FinitePoset(verts, less, check=check)


def salvetti_complex(g: CoxeterGraph, trunc: int | None = None) -> SimplicialComplex:
    return order_complex(salvetti_poset(g, trunc))


def cell_poset(p: FinitePoset, top: SalVertex) -> FinitePoset:
    """C(u,X): everything at or below (u,X)."""
    i = p.index[top]
    return p.subposet([v for k, v in enumerate(p.elements) if k == i or i in p.up[k]])


def cell_isomorphism_holds(g: CoxeterGraph, p: FinitePoset, top: SalVertex) -> bool:
    """Check that f(w W_Y) = (u w0, Y), w0 minimal in w W_Y, is a poset
    isomorphism from P(Gamma_X) onto C(u,X)."""
    X = sorted(top.X)
    local = subgraph(g, X)
    P = coset_poset(local, "P")
    C = cell_poset(p, top)

    def f(c: Coset) -> SalVertex:
        rep = CoxElement(g, tuple(X[i] for i in c.rep.word))
        return SalVertex(multiply(top.u, rep), frozenset(X[i] for i in c.X))

    image = [f(c) for c in P.elements]
    if len(set(image)) != len(image) or set(image) != set(C.elements):
        return False
    for a in P.elements:
        for b in P.elements:
            if P.leq(a, b) != C.leq(f(a), f(b)):
                return False
    return True


# -- BSal cells and presentations ---------------------------------------------

@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple  # each a tuple of (generator index, +1 | -1)

    def format_relator(self, r) -> str:
        return " ".join(self.generators[i] + ("" if e == 1 else "^-1") for i, e in r) or "1"

    def to_dict(self) -> dict:
        return {"generators": list(self.generators),
                "relators": [self.format_relator(r) for r in self.relators]}


def bsal_cells(g: CoxeterGraph) -> list:
    """Number of cells of BSal in each dimension: #{X in S^f : |X| = p}."""
    sf = enumerate_sf(g)
    top = max(len(X) for X in sf)
    return [sum(1 for X in sf if len(X) == p) for p in range(top + 1)]


def two_cell_boundary(u: CoxElement, s: int, t: int) -> list:
    """Boundary of B(u,{s,t}) as a list of ((vertex, generator), +1|-1), the
    edge a(v,r) running from x(v) to x(vr)."""
    g = u.graph
    m = g.matrix[s][t]
    if m is INF:
        raise DomainError("no 2-cell for an infinite pair")
    fwd, bwd = pi_word(s, t, m), pi_word(t, s, m)
    path = []
    v = u
    for r in fwd:
        path.append(((v, r), 1))
        v = v.times_gen(r)
    back = []
    v = u
    for r in bwd:
        back.append(((v, r), -1))
        v = v.times_gen(r)
    return path + back[::-1]


def extract_artin_presentation(g: CoxeterGraph) -> Presentation:
    """Generators a_s (one per 1-cell of BSal), one relator per 2-cell,
    obtained by projecting the boundary of B(1,{s,t}) edge by edge."""
    one = identity(g)
    rels = []
    for s in range(g.rank):
        for t in range(s + 1, g.rank):
            if g.matrix[s][t] is INF:
                continue
            rels.append(tuple((r, e) for (_, r), e in two_cell_boundary(one, s, t)))
    return Presentation(tuple(f"a_{n}" for n in g.generators), tuple(rels))


def _word_label(w: CoxElement) -> str:
    return format_word(w.graph, w.word) or "1"


def spanning_tree(g: CoxeterGraph, elems: list) -> set:
    """BFS maximal tree of the 1-skeleton of Sal from x(1); neighbours are
    taken in ShortLex order of (target, generator), the edge a(v,s) leaving
    v before the edge a(vs,s) coming back."""
    seen = {identity(g)}
    tree = set()
    queue = deque([identity(g)])
    while queue:
        v = queue.popleft()
        nbrs = sorted(((v.times_gen(s), s) for s in range(g.rank)),
                      key=lambda p: (p[0].shortlex_key(), p[1]))
        for w, s in nbrs:
            if w not in seen:
                seen.add(w)
                tree.add((v, s))
                queue.append(w)
    if len(seen) != len(elems):
        raise AssertionError("1-skeleton of Sal is not connected")
    return tree


def extract_pure_presentation(g: CoxeterGraph) -> Presentation:
    """Presentation of pi_1(Sal) from its 2-skeleton: a generator per edge
    a(u,s), a relator per 2-cell B(u,{s,t}), and every edge of a maximal
    tree set to 1."""
    if not is_spherical(g).finite:
        raise DomainError("the pure presentation needs a finite Coxeter group")
    elems = sorted(enumerate_group(g), key=lambda w: w.shortlex_key())
    tree = spanning_tree(g, elems)
    edges = [(u, s) for u in elems for s in range(g.rank) if (u, s) not in tree]
    index = {e: k for k, e in enumerate(edges)}
    rels = []
    for u in elems:
        for s in range(g.rank):
            for t in range(s + 1, g.rank):
                if g.matrix[s][t] is INF:
                    continue
                word = tuple((index[e], sign) for e, sign in two_cell_boundary(u, s, t) if e in index)
                rels.append(_free_reduce(word))
    names = tuple(f"a({_word_label(u)},{g.generators[s]})" for u, s in edges)
    return Presentation(names, tuple(rels))


def _free_reduce(word) -> tuple:
    out = []
    for x in word:
        if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def abelianization(p: Presentation) -> tuple:
    """(free rank, torsion coefficients) of the abelianized group."""
    cols: dict = {}
    for i, r in enumerate(p.relators):
        for gen, e in r:
            col = cols.setdefault(gen, {})
            col[i] = col.get(i, 0) + e
    columns = [{i: v for i, v in cols.get(k, {}).items() if v} for k in range(len(p.generators))]
    factors = smith_diagonal(columns, len(p.relators))
    return len(p.generators) - len(factors), tuple(f for f in factors if f > 1)


def cyclic_normal_form(r) -> tuple:
    """Least rotation of r or of its inverse; relators agree up to rotation
    and inversion iff these agree."""
    r = tuple(r)
    if not r:
        return r
    inv = tuple((gen, -e) for gen, e in reversed(r))
    return min(w[k:] + w[:k] for w in (r, inv) for k in range(len(w)))


def expected_artin_relator(s: int, t: int, m) -> tuple:
    """Pi(a_s,a_t:m) Pi(a_t,a_s:m)^-1."""
    return tuple((x, 1) for x in pi_word(s, t, m)) + tuple((x, -1) for x in reversed(pi_word(t, s, m)))


# -- universal-cover poset on A+ x S^f ----------------------------------------

@dataclass(frozen=True)
class PosSalVertex:
    a: MonoidElement
    X: frozenset

    def __str__(self):
        return f"({self.a}, {_fmt_set(self.a.graph, self.X)})"


def pos_leq(a: PosSalVertex, b: PosSalVertex) -> bool:
    """(alpha,X) <= (beta,Y) iff X in Y and alpha = beta tau(w) with w in
    W_Y and w (emptyset,X)-minimal."""
    if not a.X <= b.X:
        return False
    if not divides(b.a, a.a):
        return False
    gamma = quotient(b.a, a.a)
    w = theta(gamma)
    if len(w) != len(gamma):
        return False  # gamma is not in tau(W)
    # a reduced word lies in W_Y iff its letters do
    return set(w.word) <= b.X and is_minimal(w, a.X)


def pos_salvetti_poset(g: CoxeterGraph, n: int, check: bool = True) -> FinitePoset:
    """All (alpha, X) with lg(alpha) <= n under the order above."""
    sf = enumerate_sf(g)
    verts = [PosSalVertex(a, X) for a in enumerate_monoid(g, n) for X in sf]
    return FinitePoset.from_leq(verts, pos_leq, check=check)


def f_alpha(alpha: MonoidElement, c: Coset) -> PosSalVertex:
    return PosSalVertex(alpha * tau(c.rep), c.X)


def c_tilde(alpha: MonoidElement, trunc: int | None = None) -> list:
    """C~(alpha) = {(alpha tau(u), X) : X in S^f, u (emptyset,X)-minimal}."""
    g = alpha.graph
    out = []
    for X in enumerate_sf(g):
        for u in _elements(g, trunc):
            if is_minimal(u, X):
                out.append(PosSalVertex(alpha * tau(u), X))
    return out


def phi(alpha: MonoidElement, trunc: int | None = None) -> FinitePoset:
    return FinitePoset.from_leq(c_tilde(alpha, trunc), pos_leq)


def level_vertices(g: CoxeterGraph, n: int) -> set:
    """Union of C~(alpha) over lg(alpha) <= n."""
    out = set()
    for a in enumerate_monoid(g, n):
        out.update(c_tilde(a))
    return out


def in_level(v: PosSalVertex, n: int) -> bool:
    """Membership in level n decided by searching right divisors delta of
    gamma: some delta in tau(W) with theta(delta) (emptyset,Z)-minimal and
    lg(gamma) - lg(delta) <= n."""
    from .monoid import RIGHT, divisors

    gamma = v.a
    for d in divisors(gamma, RIGHT):
        if len(gamma) - len(d) > n:
            continue
        w = theta(d)
        if len(w) == len(d) and is_minimal(w, v.X):
            return True
    return False


def sal_level(g: CoxeterGraph, n: int) -> SimplicialComplex:
    """Order complex of the level-n vertex set. Each C~(alpha) is a down-set,
    so every chain of the union already lies in one C~(alpha) and this is
    the union of the Phi(alpha)."""
    verts = sorted(level_vertices(g, n), key=lambda v: (len(v.a), v.a.canon, sorted(v.X)))
    return order_complex(FinitePoset.from_leq(verts, pos_leq))


def lemma_4_7_holds(alpha: MonoidElement) -> bool:
    """f_alpha : Pf -> C~(alpha) is a poset isomorphism."""
    g = alpha.graph
    pf = coset_poset(g, "Pf")
    image = {c: f_alpha(alpha, c) for c in pf.elements}
    if len(set(image.values())) != len(image) or set(image.values()) != set(c_tilde(alpha)):
        return False
    return all(pf.leq(a, b) == pos_leq(image[a], image[b]) for a in pf.elements for b in pf.elements)


def lemma_4_8_holds(alpha: MonoidElement, beta: MonoidElement) -> bool:
    """For alpha != beta of length n+1: C~(alpha) and C~(beta) meet inside level n."""
    n = len(alpha) - 1
    common = set(c_tilde(alpha)) & set(c_tilde(beta))
    level = level_vertices(alpha.graph, n)
    return common <= level


def lemma_4_9_holds(alpha: MonoidElement) -> bool:
    """C~(alpha) meets level n exactly in f_alpha(Pf_{X0}), X0 = End(alpha)."""
    g = alpha.graph
    n = len(alpha) - 1
    X0 = end_set(alpha)
    lhs = set(c_tilde(alpha)) & level_vertices(g, n)
    rhs = {f_alpha(alpha, c) for c in s_minimal_poset(g, X0).elements}
    return lhs == rhs
