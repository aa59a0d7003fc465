"""Artin monoids A+ and, in spherical type, the word problem of A.

A positive word's class under the braid relations is finite (the relations
are homogeneous), so equality can always be decided by listing the class.
In spherical type that list grows exponentially with the length, so
equality, divisibility and quotients go through the left-greedy normal
form instead: a sequence of simple elements, each an element of W.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .config import active_caps
from .coxgraph import CoxeterGraph
from .errors import DomainError, ResourceCapExceeded, WordParseError
from .words import CoxElement, braid_moves, descents, enumerate_group, format_word
from .words import identity as _w_identity

LEFT, RIGHT = "left", "right"


class _Classes:
    """Per-graph cache: every word seen maps to its (shared) class."""

    def __init__(self, graph: CoxeterGraph):
        self.graph = graph
        self.of: dict = {(): frozenset({()})}

    def get(self, word: tuple, cap: int | None = None) -> frozenset:
        cls = self.of.get(word)
        if cls is not None:
            return cls
        cap = active_caps().monoid_class if cap is None else cap
        seen = {word}
        stack = [word]
        while stack:
            w = stack.pop()
            for v in braid_moves(self.graph, w):
                if v not in seen:
                    seen.add(v)
                    if len(seen) > cap:
                        raise ResourceCapExceeded("monoid class", cap)
                    stack.append(v)
        cls = frozenset(seen)
        for w in cls:
            self.of[w] = cls
        return cls


@lru_cache(maxsize=None)
def _classes(graph: CoxeterGraph) -> _Classes:
    return _Classes(graph)


def monoid_class(graph: CoxeterGraph, word: Sequence[int], cap: int | None = None) -> frozenset:
    return _classes(graph).get(tuple(word), cap)


@dataclass(frozen=True)
class MonoidElement:
    """Element of A+, held as the lexicographically least word of its class."""

    graph: CoxeterGraph
    canon: tuple

    def __len__(self):
        return len(self.canon)

    def __mul__(self, other: "MonoidElement") -> "MonoidElement":
        if self.graph != other.graph:
            raise ValueError("elements belong to different graphs")
        return canonicalize(self.graph, self.canon + other.canon)

    def words(self) -> frozenset:
        return monoid_class(self.graph, self.canon)

    def is_identity(self) -> bool:
        return not self.canon

    def __str__(self):
        return format_word(self.graph, self.canon) or "1"

    def __repr__(self):
        return f"MonoidElement({self})"


# -- left-greedy normal form (spherical type) ---------------------------------

@lru_cache(maxsize=None)
def _spherical(graph: CoxeterGraph) -> bool:
    from .sphericity import is_spherical

    return is_spherical(graph).finite


def _left_weight(a: CoxElement, b: CoxElement) -> tuple:
    """Move letters of b into a until D_L(b) is inside D_R(a); the product
    tau(a) tau(b) is unchanged and a becomes its largest simple prefix."""
    while True:
        moved = descents(b, "left") - descents(a, "right")
        if not moved:
            return a, b
        t = min(moved)
        a, b = a.times_gen(t), b.gen_times(t)


def _append(form: list, y: CoxElement) -> list:
    # one right-to-left pass restores left-weightedness after a simple factor
    seq = form + [y]
    for i in range(len(seq) - 2, -1, -1):
        seq[i], seq[i + 1] = _left_weight(seq[i], seq[i + 1])
    while seq and seq[-1].is_identity():
        seq.pop()
    return seq


def greedy_form(graph: CoxeterGraph, word: Iterable[int]) -> tuple:
    """Left-greedy normal form (x1, ..., xr) of a positive word: every xi is
    a nontrivial element of W and tau(xi) is the largest simple left divisor
    of tau(xi) ... tau(xr). Spherical type only."""
    if not _spherical(graph):
        raise DomainError("greedy normal form needs a spherical graph")
    word = tuple(word)
    for s in word:
        if not 0 <= s < graph.rank:
            raise IndexError(f"generator index {s} out of range")
    return _greedy(graph, word)


@lru_cache(maxsize=200_000)
def _greedy(graph: CoxeterGraph, word: tuple) -> tuple:
    if not word:
        return ()
    return tuple(_append(list(_greedy(graph, word[:-1])), _w_identity(graph).times_gen(word[-1])))


def _refold(form) -> list:
    out = []
    for x in form:
        if not x.is_identity():
            out = _append(out, x)
    return out


@lru_cache(maxsize=200_000)
def _peel(form: tuple, s: int):
    """Normal form of sigma_s^-1 a, or None when s does not left-divide a."""
    if not form or s not in descents(form[0], "left"):
        return None
    return tuple(_refold((form[0].gen_times(s),) + form[1:]))


def _least_word(form) -> tuple:
    # the least first letter of a is the least left descent of x1
    out, form = [], tuple(form)
    while form:
        s = min(descents(form[0], "left"))
        out.append(s)
        form = _peel(form, s)
    return tuple(out)


def _left_quotient_form(graph: CoxeterGraph, a: Sequence[int], b: Sequence[int]):
    """Normal form of a^-1 b when a left-divides b in A+, else None."""
    form = greedy_form(graph, b)
    for s in a:
        form = _peel(form, s)
        if form is None:
            return None
    return form


def canonicalize(graph: CoxeterGraph, word: Iterable[int]) -> MonoidElement:
    word = tuple(word)
    for s in word:
        if not 0 <= s < graph.rank:
            raise IndexError(f"generator index {s} out of range")
    if _spherical(graph):
        return MonoidElement(graph, _least_word(greedy_form(graph, word)))
    return MonoidElement(graph, min(monoid_class(graph, word)))


def monoid_equal(graph: CoxeterGraph, u: Sequence[int], v: Sequence[int]) -> bool:
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        return False
    if _spherical(graph):
        return greedy_form(graph, u) == greedy_form(graph, v)
    return v in monoid_class(graph, u)


def identity(graph: CoxeterGraph) -> MonoidElement:
    return MonoidElement(graph, ())


def sigma(graph: CoxeterGraph, s: int) -> MonoidElement:
    return MonoidElement(graph, (s,))


def tau(w: CoxElement) -> MonoidElement:
    """Positive lift of a reduced expression; the class of a reduced word is
    the set of reduced words of the element, whose least member is w.word."""
    return MonoidElement(w.graph, w.word)


def theta(a: MonoidElement) -> CoxElement:
    """Image of a positive element in W (sigma_s -> s)."""
    from .words import normal_form

    return normal_form(a.graph, a.canon)


def in_tau_image(a: MonoidElement) -> bool:
    """a = tau(w) for some w iff its words are reduced."""
    return len(theta(a)) == len(a)


def _check_side(side: str):
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def divides(a: MonoidElement, b: MonoidElement, side: str = LEFT) -> bool:
    """a <=_L b (a is a prefix of b) or a <=_R b (a is a suffix)."""
    _check_side(side)
    k = len(a)
    if k > len(b):
        return False
    if k == 0:
        return True
    if _spherical(b.graph):
        if side == LEFT:
            return _left_quotient_form(b.graph, a.canon, b.canon) is not None
        # reversal is an anti-automorphism of A+
        return _left_quotient_form(b.graph, a.canon[::-1], b.canon[::-1]) is not None
    if side == LEFT:
        return any(w[:k] == a.canon for w in b.words())
    return any(w[-k:] == a.canon for w in b.words())


def quotient(a: MonoidElement, b: MonoidElement, side: str = LEFT) -> MonoidElement:
    """The unique c with a c = b (left) or c a = b (right); cancellativity
    makes it unique."""
    _check_side(side)
    k = len(a)
    if _spherical(b.graph) and k <= len(b):
        if side == LEFT:
            form = _left_quotient_form(b.graph, a.canon, b.canon)
            if form is not None:
                return MonoidElement(b.graph, _least_word(form))
        else:
            form = _left_quotient_form(b.graph, a.canon[::-1], b.canon[::-1])
            if form is not None:
                rest = tuple(x for f in form for x in f.word)[::-1]
                return canonicalize(b.graph, rest)
        raise DomainError(f"{a} does not {side}-divide {b}")
    for w in b.words():
        if side == LEFT and w[:k] == a.canon:
            return canonicalize(b.graph, w[k:])
        if side == RIGHT and w[len(w) - k:] == a.canon:
            return canonicalize(b.graph, w[:len(w) - k])
    raise DomainError(f"{a} does not {side}-divide {b}")


def divisors(b: MonoidElement, side: str = LEFT) -> frozenset:
    _check_side(side)
    parts = set()
    for w in b.words():
        for k in range(len(w) + 1):
            parts.add(w[:k] if side == LEFT else w[k:])
    seen, out = set(), set()
    for p in parts:
        if p in seen:
            continue
        cls = monoid_class(b.graph, p)
        seen.update(cls)
        out.add(MonoidElement(b.graph, min(cls)))
    return frozenset(out)


def _same_graph(E) -> CoxeterGraph:
    E = list(E)
    if not E:
        raise ValueError("need a nonempty set of elements")
    g = E[0].graph
    if any(e.graph != g for e in E):
        raise ValueError("elements belong to different graphs")
    return g


def meet(E: Iterable[MonoidElement], side: str = LEFT) -> MonoidElement:
    """Greatest common divisor: the maximum of the intersected divisor sets."""
    E = list(E)
    _same_graph(E)
    common = None
    for e in E:
        d = divisors(e, side)
        common = d if common is None else common & d
    best = max(common, key=lambda c: (len(c), c.canon))
    for c in common:
        if not divides(c, best, side):
            raise AssertionError("common divisors have no maximum; lattice property violated")
    return best


@dataclass(frozen=True)
class JoinResult:
    """status is 'found', 'none' (proven not to exist) or 'unknown'
    (no common multiple up to the length cap)."""

    status: str
    element: MonoidElement | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"


def _generator_set(E) -> frozenset | None:
    if all(len(e) == 1 for e in E):
        return frozenset(e.canon[0] for e in E)
    return None


def common_multiples(E: Sequence[MonoidElement], side: str, max_length: int) -> list:
    """All common multiples (b with e <= b for every e) of length <= max_length."""
    g = _same_graph(E)
    E = sorted(set(E), key=lambda e: (-len(e), e.canon))
    base = E[0]
    level = {base.canon}
    out = []
    seen = set()
    for length in range(len(base), max_length + 1):
        for w in sorted(level):
            m = MonoidElement(g, w)
            if all(divides(e, m, side) for e in E[1:]):
                out.append(m)
        if length == max_length:
            break
        nxt = set()
        for w in level:
            for s in range(g.rank):
                v = w + (s,) if side == LEFT else (s,) + w
                if v in seen:
                    continue
                cls = monoid_class(g, v)
                seen.update(cls)
                nxt.add(min(cls))
        level = nxt
    return out


def join(E: Iterable[MonoidElement], side: str = LEFT, max_length: int = 12) -> JoinResult:
    """Least common multiple for <=_side, searched up to max_length.

    A common multiple of minimal length is the join when one exists; it is
    returned after checking it divides every other multiple found. When E is
    a set of generators X and W_X is infinite the join provably does not
    exist; otherwise an empty search is only 'unknown'.
    """
    _check_side(side)
    E = list(E)
    g = _same_graph(E)
    X = _generator_set(E)
    if X is not None and len(X) > 1:
        from .sphericity import is_spherical_subset

        if not is_spherical_subset(g, X):
            return JoinResult("none")
    found = common_multiples(E, side, max_length)
    if not found:
        return JoinResult("unknown")
    best = found[0]
    for m in found:
        if not divides(best, m, side):
            raise AssertionError(f"least common multiple {best} does not divide {m}")
    return JoinResult("found", best)


# -- spherical type -------------------------------------------------------

def _require_spherical(g: CoxeterGraph):
    from .sphericity import is_spherical

    if not is_spherical(g).finite:
        raise DomainError("operation requires a spherical (finite type) graph")


@lru_cache(maxsize=None)
def delta(g: CoxeterGraph) -> MonoidElement:
    """Garside element: located inside tau(W) as the element every generator
    left-divides, then checked to be both the left and the right lcm of the
    generators among its own divisors."""
    _require_spherical(g)
    everything = frozenset(range(g.rank))
    hits = [w for w in enumerate_group(g) if descents(w, "left") == everything]
    if len(hits) != 1:
        raise AssertionError("expected exactly one element with full left descent set")
    d = tau(hits[0])
    gens = [sigma(g, s) for s in range(g.rank)]
    for side in (LEFT, RIGHT):
        if not all(divides(x, d, side) for x in gens):
            raise AssertionError(f"a generator does not {side}-divide Delta")
        # the lcm divides d, so among divisors of d only d itself may be a common multiple
        for c in divisors(d, side):
            if c != d and all(divides(x, c, side) for x in gens):
                raise AssertionError(f"Delta is not the {side} lcm of the generators")
    return d


def longest_of_delta(g: CoxeterGraph) -> CoxElement:
    return theta(delta(g))


def end_set(a: MonoidElement) -> frozenset:
    """Generators that right-divide a."""
    out = frozenset(w[-1] for w in a.words() if w)
    if out:
        from .sphericity import is_spherical_subset

        if not is_spherical_subset(a.graph, out):
            raise AssertionError("End(a) is not spherical")
    return out


@lru_cache(maxsize=None)
def delta_automorphism(g: CoxeterGraph) -> tuple:
    """perm with Delta sigma_s = sigma_perm[s] Delta, each equation checked."""
    d = delta(g).canon
    perm = []
    for s in range(g.rank):
        partner = [t for t in range(g.rank) if monoid_equal(g, d + (s,), (t,) + d)]
        if len(partner) != 1:
            raise AssertionError(f"no unique partner for generator {g.generators[s]}")
        perm.append(partner[0])
    if sorted(perm) != list(range(g.rank)):
        raise AssertionError("Delta conjugation is not a permutation")
    return tuple(perm)


@lru_cache(maxsize=None)
def _complements(g: CoxeterGraph) -> tuple:
    """x_s with x_s sigma_s = Delta."""
    d = delta(g)
    return tuple(quotient(sigma(g, s), d, RIGHT).canon for s in range(g.rank))


@dataclass(frozen=True)
class GroupElement:
    """Delta^-k * alpha in a spherical Artin group."""

    k: int
    alpha: MonoidElement

    def __str__(self):
        a = str(self.alpha)
        return a if self.k == 0 else f"Delta^-{self.k} {a}"


def _strip(k: int, alpha: MonoidElement) -> tuple:
    d = delta(alpha.graph)
    while k > 0 and divides(d, alpha, LEFT):
        alpha = quotient(d, alpha, LEFT)
        k -= 1
    return k, alpha


def group_normalize(g: CoxeterGraph, word: Sequence[tuple]) -> GroupElement:
    """word is a sequence of (generator, +1 | -1). Scanning left to right,
    alpha sigma_s^-1 = Delta^-1 phi(alpha) x_s with phi the Delta twist."""
    _require_spherical(g)
    perm = delta_automorphism(g)
    comp = _complements(g)
    k, alpha = 0, ()
    for s, e in word:
        if e == 1:
            alpha = alpha + (s,)
        elif e == -1:
            alpha = tuple(perm[x] for x in alpha) + comp[s]
            k += 1
        else:
            raise ValueError(f"exponent must be +1 or -1, got {e}")
        k, a = _strip(k, canonicalize(g, alpha))
        alpha = a.canon
    return GroupElement(k, MonoidElement(g, alpha))


def group_equal(g: CoxeterGraph, w1: Sequence[tuple], w2: Sequence[tuple]) -> bool:
    """Compare Delta^-k alpha forms after padding both to a common k."""
    a, b = group_normalize(g, w1), group_normalize(g, w2)
    k = max(a.k, b.k)
    d = delta(g).canon
    left = d * (k - a.k) + a.alpha.canon
    right = d * (k - b.k) + b.alpha.canon
    if len(left) != len(right):
        return False
    # cancel a common prefix/suffix first: A+ is cancellative
    i = 0
    while i < len(left) and left[i] == right[i]:
        i += 1
    j = 0
    while j < len(left) - i and left[-1 - j] == right[-1 - j]:
        j += 1
    return monoid_equal(g, left[i:len(left) - j], right[i:len(right) - j])


def positive(word: Sequence[int]) -> list:
    return [(s, 1) for s in word]


def inverse_word(word: Sequence[tuple]) -> list:
    return [(s, -e) for s, e in reversed(word)]


def parse_signed_word(g: CoxeterGraph, text: str) -> list:
    out = []
    for tok in text.split():
        if tok == "1":
            continue
        name, e = (tok[:-3], -1) if tok.endswith("^-1") else (tok, 1)
        try:
            out.append((g.index(name), e))
        except KeyError:
            raise WordParseError(f"unknown generator {name!r} in word {text!r}") from None
    return out


def format_signed_word(g: CoxeterGraph, word: Sequence[tuple]) -> str:
    return " ".join(g.generators[s] + ("" if e == 1 else "^-1") for s, e in word)


def enumerate_monoid(g: CoxeterGraph, max_length: int) -> list:
    """All elements of length <= max_length, by length then canonical word."""
    level = [()]
    out = [MonoidElement(g, ())]
    for _ in range(max_length):
        nxt = set()
        for w in level:
            for s in range(g.rank):
                nxt.add(min(monoid_class(g, w + (s,))))
        level = sorted(nxt)
        out.extend(MonoidElement(g, w) for w in level)
    return out
