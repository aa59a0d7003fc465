"""Coxeter-group words: M-transformation closures, reducedness, ShortLex
normal forms, multiplication, descents, minimal coset representatives,
ball enumeration and the exchange condition.

Everything is combinatorial. An element is stored as its ShortLex-least
reduced word; the set of all reduced words of an element is obtained as the
closure of any one of them under braid moves (Tits' solution of the word
problem), and that is the only primitive the engine relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .config import active_caps
from .coxgraph import INF, CoxeterGraph
from .errors import ResourceCapExceeded, WordParseError

Word = tuple  # tuple[int, ...] of generator indices


def pi_word(a: int, b: int, m) -> Word:
    """Alternating word a b a b ... of length m."""
    if m is INF:
        raise ValueError("Pi(a, b : m) is undefined for m = infinity")
    if m < 0:
        raise ValueError("m must be non-negative")
    return tuple(a if k % 2 == 0 else b for k in range(m))


@lru_cache(maxsize=None)
def _move_table(graph: CoxeterGraph):
    """table[s][t] = (m, Pi(s,t:m), Pi(t,s:m)) for s != t with m finite, else None."""
    n = graph.rank
    table = [[None] * n for _ in range(n)]
    for s in range(n):
        for t in range(n):
            m = graph.matrix[s][t]
            if s != t and m is not INF:
                table[s][t] = (m, pi_word(s, t, m), pi_word(t, s, m))
    return table


def braid_moves(graph: CoxeterGraph, word: Word, lo: int = 0):
    """Yield every word one elementary M-transformation away from ``word``.
    Only windows ending at index >= lo are considered."""
    n = len(word)
    table = _move_table(graph)
    for i in range(n - 1):
        entry = table[word[i]][word[i + 1]]
        if entry is None:
            continue
        m, lhs, rhs = entry
        if i + m > n or i + m - 1 < lo:
            continue
        if word[i:i + m] == lhs:
            yield word[:i] + rhs + word[i + m:]


def m_transform_closure(graph: CoxeterGraph, word: Sequence[int], cap: int | None = None) -> frozenset:
    """All words reachable from ``word`` by elementary M-transformations."""
    cap = active_caps().closure if cap is None else cap
    start = tuple(word)
    seen = {start}
    stack = [start]
    while stack:
        w = stack.pop()
        for v in braid_moves(graph, w):
            if v not in seen:
                seen.add(v)
                if len(seen) > cap:
                    raise ResourceCapExceeded("M-transformation closure", cap)
                stack.append(v)
    return frozenset(seen)


def _has_square(w: Word) -> bool:
    return any(w[i] == w[i + 1] for i in range(len(w) - 1))


def is_reduced(graph: CoxeterGraph, word: Sequence[int], cap: int | None = None) -> bool:
    """A word is reduced iff no word in its closure contains a factor ss."""
    return not any(_has_square(w) for w in m_transform_closure(graph, word, cap))


class _Engine:
    """Per-graph caches: reduced-word sets and right multiplication by a
    generator, both keyed by normal form."""

    def __init__(self, graph: CoxeterGraph):
        self.graph = graph
        self.reduced: dict = {(): frozenset({()})}
        self.right: dict = {}

    def reduced_words(self, nf: Word, seed: Iterable[Word] = ()) -> frozenset:
        words = self.reduced.get(nf)
        if words is None:
            cap = active_caps().closure
            seen = set(seed) or {nf}
            # every seed word shares a closed prefix set; only windows that
            # reach the last letter can produce something new
            lo = len(nf) - 1 if seed else 0
            stack = [(w, lo) for w in seen]
            while stack:
                w, start = stack.pop()
                for v in braid_moves(self.graph, w, start):
                    if v not in seen:
                        seen.add(v)
                        if len(seen) > cap:
                            raise ResourceCapExceeded("M-transformation closure", cap)
                        stack.append((v, 0))
            words = frozenset(seen)
            self.reduced[min(words)] = words
        return words

    def times(self, nf: Word, s: int) -> Word:
        key = (nf, s)
        out = self.right.get(key)
        if out is not None:
            return out
        words = self.reduced_words(nf)
        tails = frozenset(w[:-1] for w in words if w and w[-1] == s)
        if tails:
            # exchange: the reduced words of nf*s are exactly these tails
            out = min(tails)
            self.reduced.setdefault(out, tails)
        else:
            grown = frozenset(w + (s,) for w in words)
            out = min(self.reduced_words(min(grown), seed=grown))
        self.right[key] = out
        return out

    def reduced_words_of(self, reduced_word: Word) -> frozenset:
        for_nf = self.reduced.get(reduced_word)
        if for_nf is not None:
            return for_nf
        words = m_transform_closure(self.graph, reduced_word)
        self.reduced[min(words)] = words
        return words

    def normalize(self, word: Iterable[int]) -> Word:
        nf: Word = ()
        for s in word:
            nf = self.times(nf, s)
        return nf


@lru_cache(maxsize=None)
def engine(graph: CoxeterGraph) -> _Engine:
    return _Engine(graph)


@dataclass(frozen=True, order=False)
class CoxElement:
    """An element of W, held as its ShortLex-least reduced word."""

    graph: CoxeterGraph
    word: Word

    def __mul__(self, other: "CoxElement") -> "CoxElement":
        return multiply(self, other)

    def __len__(self):
        return len(self.word)

    def inverse(self) -> "CoxElement":
        return inverse(self)

    def times_gen(self, s: int) -> "CoxElement":
        return CoxElement(self.graph, engine(self.graph).times(self.word, s))

    def gen_times(self, s: int) -> "CoxElement":
        # s*w = (w^-1 s)^-1
        return inverse(inverse(self).times_gen(s))

    def reduced_words(self) -> frozenset:
        return engine(self.graph).reduced_words(self.word)

    def letters(self) -> frozenset:
        return frozenset(self.word)

    def is_identity(self) -> bool:
        return not self.word

    def shortlex_key(self):
        return (len(self.word), self.word)

    def __str__(self):
        return format_word(self.graph, self.word) or "1"

    def __repr__(self):
        return f"CoxElement({self})"


def normal_form(graph: CoxeterGraph, word: Iterable[int]) -> CoxElement:
    """Canonical element of an arbitrary word: the word is absorbed letter by
    letter, deleting an ss factor exposed in the closure whenever one appears."""
    word = tuple(word)
    for s in word:
        if not 0 <= s < graph.rank:
            raise IndexError(f"generator index {s} out of range")
    return CoxElement(graph, engine(graph).normalize(word))


def identity(graph: CoxeterGraph) -> CoxElement:
    return CoxElement(graph, ())


def generator(graph: CoxeterGraph, s: int) -> CoxElement:
    return CoxElement(graph, (s,))


def _same_graph(a: CoxElement, b: CoxElement):
    if a.graph != b.graph:
        raise ValueError("elements belong to different Coxeter graphs")


def multiply(a: CoxElement, b: CoxElement) -> CoxElement:
    _same_graph(a, b)
    eng = engine(a.graph)
    nf = a.word
    for s in b.word:
        nf = eng.times(nf, s)
    return CoxElement(a.graph, nf)


def inverse(a: CoxElement) -> CoxElement:
    rev = tuple(reversed(a.word))
    # the reverse of a reduced word is reduced
    return CoxElement(a.graph, min(engine(a.graph).reduced_words_of(rev)))


def length(a: CoxElement) -> int:
    return len(a.word)


def descents(a: CoxElement, side: str = "right") -> frozenset:
    """Generators s with lg(as) < lg(a) (right) or lg(sa) < lg(a) (left)."""
    words = a.reduced_words()
    if side == "right":
        return frozenset(w[-1] for w in words if w)
    if side == "left":
        return frozenset(w[0] for w in words if w)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def is_minimal(w: CoxElement, X: Iterable[int], side: str = "right") -> bool:
    """(emptyset, X)-minimal for side='right', (X, emptyset)-minimal for 'left'."""
    return not (descents(w, side) & frozenset(X))


def min_coset_rep(w: CoxElement, X: Iterable[int], side: str = "right") -> CoxElement:
    """Unique shortest element of w W_X (side='right') or W_X w (side='left')."""
    X = frozenset(X)
    while True:
        d = descents(w, side) & X
        if not d:
            return w
        s = min(d)
        w = w.times_gen(s) if side == "right" else w.gen_times(s)


def min_double_coset_rep(X: Iterable[int], w: CoxElement, Y: Iterable[int]) -> CoxElement:
    """Unique shortest element of W_X w W_Y."""
    X, Y = frozenset(X), frozenset(Y)
    while True:
        dl = descents(w, "left") & X
        if dl:
            w = w.gen_times(min(dl))
            continue
        dr = descents(w, "right") & Y
        if dr:
            w = w.times_gen(min(dr))
            continue
        return w


def in_parabolic(w: CoxElement, X: Iterable[int]) -> bool:
    """w in W_X, decided as: the minimal representative of w W_X is 1."""
    return min_coset_rep(w, X).is_identity()


def enumerate_ball(graph: CoxeterGraph, radius: int, cap: int | None = None) -> list:
    """All elements of length <= radius in BFS (then ShortLex) order."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    cap = active_caps().group_order if cap is None else cap
    eng = engine(graph)
    out = [()]
    seen = {()}
    frontier = [()]
    for _ in range(radius):
        nxt = set()
        for u in frontier:
            for s in range(graph.rank):
                v = eng.times(u, s)
                if len(v) > len(u) and v not in seen:
                    nxt.add(v)
        if not nxt:
            break
        layer = sorted(nxt)
        seen.update(layer)
        out.extend(layer)
        if len(out) > cap:
            raise ResourceCapExceeded("ball enumeration", cap)
        frontier = layer
    return [CoxElement(graph, w) for w in out]


def enumerate_group(graph: CoxeterGraph, cap: int | None = None) -> list:
    """All of W, or ResourceCapExceeded if |W| > cap (in particular if W is
    infinite). The enumeration is complete once a sphere comes out empty."""
    cap = active_caps().group_order if cap is None else cap
    eng = engine(graph)
    out = [()]
    seen = {()}
    frontier = [()]
    while frontier:
        nxt = set()
        for u in frontier:
            for s in range(graph.rank):
                v = eng.times(u, s)
                if len(v) > len(u) and v not in seen:
                    nxt.add(v)
        layer = sorted(nxt)
        seen.update(layer)
        out.extend(layer)
        if len(out) > cap:
            raise ResourceCapExceeded("group enumeration", cap)
        frontier = layer
    return [CoxElement(graph, w) for w in out]


def parabolic_elements(graph: CoxeterGraph, X: Iterable[int], cap: int | None = None) -> list:
    """Elements of the (assumed finite) standard parabolic W_X, as elements of W."""
    X = sorted(set(X))
    local = [e.word for e in enumerate_group(_restricted(graph, tuple(X)), cap)]
    return [CoxElement(graph, tuple(X[i] for i in w)) for w in local]


@lru_cache(maxsize=None)
def _restricted(graph: CoxeterGraph, X: tuple) -> CoxeterGraph:
    from .coxgraph import subgraph

    return subgraph(graph, X)


def longest_element(graph: CoxeterGraph, cap: int | None = None) -> CoxElement:
    elems = enumerate_group(graph, cap)
    return max(elems, key=lambda e: e.shortlex_key())


def exchange_witness(w: CoxElement, s: int):
    """'lengthens' if lg(ws) = lg(w) + 1, else a 0-based index i such that
    deleting letter i of the normal form and appending s gives w again."""
    ws = w.times_gen(s)
    if len(ws) > len(w):
        return "lengthens"
    word = w.word
    for i in range(len(word)):
        cand = normal_form(w.graph, word[:i] + word[i + 1:] + (s,))
        if cand == w:
            return i
    raise AssertionError("exchange condition failed; engine bug")


# -- text form ------------------------------------------------------------

def format_word(graph: CoxeterGraph, word: Sequence[int]) -> str:
    return " ".join(graph.generators[i] for i in word)


def parse_word(graph: CoxeterGraph, text: str) -> Word:
    out = []
    for tok in text.split():
        if tok == "1":
            continue
        try:
            out.append(graph.index(tok))
        except KeyError:
            raise WordParseError(f"unknown generator {tok!r} in word {text!r}") from None
    return tuple(out)
