"""Finite posets, their order complexes and integral simplicial homology.

Homology goes through a Smith normal form over the integers: unit pivots
are eliminated sparsely first, whatever is left is finished densely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Callable, Iterable, Sequence

from .config import active_caps
from .errors import ResourceCapExceeded


class FinitePoset:
    """Elements are opaque labels; ``up[i]`` holds the indices strictly above i."""

    def __init__(self, elements: Sequence, less: Iterable[tuple], check: bool = True):
        self.elements = list(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("poset elements must be distinct")
        n = len(self.elements)
        self.up = [set() for _ in range(n)]
        for i, j in less:
            self.up[i].add(j)
        if check:
            self.check_axioms()

    @classmethod
    def from_leq(cls, elements: Sequence, leq: Callable, check: bool = True) -> "FinitePoset":
        elements = list(elements)
        less = [
            (i, j)
            for i, a in enumerate(elements)
            for j, b in enumerate(elements)
            if i != j and leq(a, b)
        ]
        return cls(elements, less, check)

    def __len__(self):
        return len(self.elements)

    def less(self, a, b) -> bool:
        return self.index[b] in self.up[self.index[a]]

    def leq(self, a, b) -> bool:
        return a == b or self.less(a, b)

    def check_axioms(self):
        """Irreflexive, antisymmetric, transitive; AssertionError otherwise."""
        for i, ups in enumerate(self.up):
            if i in ups:
                raise AssertionError(f"relation is not irreflexive at {self.elements[i]!r}")
            for j in ups:
                if i in self.up[j]:
                    raise AssertionError(
                        f"relation is not antisymmetric: {self.elements[i]!r}, {self.elements[j]!r}")
                if not self.up[j] <= ups:
                    k = next(iter(self.up[j] - ups))
                    raise AssertionError(
                        f"relation is not transitive: {self.elements[i]!r} < "
                        f"{self.elements[j]!r} < {self.elements[k]!r}")

    def covers(self) -> list:
        out = []
        for i, ups in enumerate(self.up):
            for j in ups:
                if not any(j in self.up[k] for k in ups):
                    out.append((i, j))
        return sorted(out)

    def subposet(self, keep: Iterable) -> "FinitePoset":
        wanted = set(keep)
        keep = [e for e in self.elements if e in wanted]
        pos = {e: k for k, e in enumerate(keep)}
        less = [(pos[a], pos[self.elements[j]])
                for a in keep for j in self.up[self.index[a]] if self.elements[j] in pos]
        return FinitePoset(keep, less, check=False)

    def maximum(self):
        n = len(self)
        for i in range(n):
            if all(i in self.up[j] for j in range(n) if j != i):
                return self.elements[i]
        return None

    def minimum(self):
        n = len(self)
        for i in range(n):
            if len(self.up[i]) == n - 1:
                return self.elements[i]
        return None

    def linear_extension(self) -> list:
        """Indices sorted by height (longest chain below), ties by index."""
        n = len(self)
        down_count = [0] * n
        for ups in self.up:
            for j in ups:
                down_count[j] += 1
        height = [0] * n
        ready = [i for i in range(n) if down_count[i] == 0]
        order = []
        while ready:
            ready.sort(key=lambda i: (height[i], i))
            nxt = []
            for i in ready:
                order.append(i)
                for j in self.up[i]:
                    height[j] = max(height[j], height[i] + 1)
                    down_count[j] -= 1
                    if down_count[j] == 0:
                        nxt.append(j)
            ready = nxt
        if len(order) != n:
            raise AssertionError("relation has a cycle")
        return sorted(range(n), key=lambda i: (height[i], i))

    def to_dict(self, label=str) -> dict:
        return {"elements": [label(e) for e in self.elements],
                "covers": [[i, j] for i, j in self.covers()]}


class SimplicialComplex:
    """Vertices carry labels; a simplex is a sorted tuple of vertex indices.
    The vertex order is the global order used for boundary signs."""

    def __init__(self, vertices: Sequence, simplices: Iterable[tuple]):
        self.vertices = list(vertices)
        by_dim: dict = {}
        for s in simplices:
            s = tuple(sorted(s))
            if not s:
                raise ValueError("the empty set is not a simplex")
            by_dim.setdefault(len(s) - 1, set()).add(s)
        self.simplices = {d: sorted(by_dim[d]) for d in sorted(by_dim)}

    @classmethod
    def from_maximal(cls, vertices: Sequence, maximal: Iterable[Iterable[int]], cap: int | None = None):
        cap = active_caps().simplices if cap is None else cap
        faces = set()
        for m in maximal:
            m = tuple(sorted(set(m)))
            for k in range(1, len(m) + 1):
                faces.update(combinations(m, k))
                if len(faces) > cap:
                    raise ResourceCapExceeded("simplex count", cap)
        return cls(vertices, faces)

    @property
    def dimension(self) -> int:
        return max(self.simplices, default=-1)

    def count(self, d: int) -> int:
        return len(self.simplices.get(d, ()))

    def f_vector(self) -> list:
        return [self.count(d) for d in range(self.dimension + 1)]

    def num_simplices(self) -> int:
        return sum(len(v) for v in self.simplices.values())

    def check_closed(self):
        for d, simps in self.simplices.items():
            if d == 0:
                continue
            lower = set(self.simplices.get(d - 1, ()))
            for s in simps:
                for i in range(len(s)):
                    if s[:i] + s[i + 1:] not in lower:
                        raise AssertionError(f"face of {s} missing")

    def maximal_simplices(self) -> list:
        out = []
        top = self.dimension
        covered = set()
        for d in range(top, -1, -1):
            for s in self.simplices.get(d, ()):
                if s not in covered:
                    out.append(s)
                if d > 0:
                    for i in range(len(s)):
                        covered.add(s[:i] + s[i + 1:])
        return sorted(out)

    def cone_vertex(self):
        """A vertex lying in every maximal simplex, or None."""
        maxi = self.maximal_simplices()
        if not maxi:
            return None
        common = set(maxi[0])
        for s in maxi[1:]:
            common &= set(s)
            if not common:
                return None
        return min(common)

    def to_dict(self, label=str) -> dict:
        return {"vertices": [label(v) for v in self.vertices],
                "maximal_simplices": [list(s) for s in self.maximal_simplices()]}


def order_complex(p: FinitePoset, cap: int | None = None) -> SimplicialComplex:
    """Simplices are the nonempty chains. Vertices are relabelled along a
    linear extension so every chain is an increasing index tuple."""
    cap = active_caps().simplices if cap is None else cap
    ext = p.linear_extension()
    pos = {old: new for new, old in enumerate(ext)}
    up = [sorted(pos[j] for j in p.up[old]) for old in ext]
    chains = []
    stack = [(i,) for i in range(len(ext))]
    while stack:
        c = stack.pop()
        chains.append(c)
        if len(chains) > cap:
            raise ResourceCapExceeded("simplex count", cap)
        last = c[-1]
        # a chain extends by anything above its top element
        for j in up[last]:
            stack.append(c + (j,))
    return SimplicialComplex([p.elements[old] for old in ext], chains)


# -- chain complexes and Smith normal form -------------------------------

@dataclass
class ChainComplex:
    """boundary[d] maps d-simplices to (d-1)-simplices, stored per column
    as {row: coefficient}."""

    sizes: dict
    boundary: dict = field(default_factory=dict)

    def check_dd_zero(self):
        for d in self.boundary:
            if d - 1 not in self.boundary:
                continue
            upper, lower = self.boundary[d], self.boundary[d - 1]
            for col in upper:
                acc: dict = {}
                for r, v in col.items():
                    for rr, vv in lower[r].items():
                        acc[rr] = acc.get(rr, 0) + v * vv
                if any(acc.values()):
                    raise AssertionError(f"boundary of boundary is nonzero in degree {d}")


def chain_complex(c: SimplicialComplex) -> ChainComplex:
    sizes = {d: len(s) for d, s in c.simplices.items()}
    cc = ChainComplex(sizes)
    for d in c.simplices:
        if d == 0:
            continue
        index = {s: k for k, s in enumerate(c.simplices[d - 1])}
        cols = []
        for s in c.simplices[d]:
            cols.append({index[s[:i] + s[i + 1:]]: (-1) ** i for i in range(len(s))})
        cc.boundary[d] = cols
    cc.check_dd_zero()
    return cc


def _dense_snf_diagonal(rows: list) -> list:
    """Nonzero diagonal of the Smith form of a small dense integer matrix."""
    A = [r[:] for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < m and t < n:
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        done = False
                        break
            if not done:
                continue
            p = A[t][t]
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        done = False
                        break
            if not done:
                continue
            # p must divide the rest; otherwise fold a bad row in and retry
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is not None:
                A[t] = [a + b for a, b in zip(A[t], A[bad])]
                continue
            break
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def invariant_factors(diag: Iterable[int]) -> list:
    """Normalize a diagonal so each entry divides the next."""
    d = sorted(abs(x) for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                a, b = d[i], d[j]
                if b % a:
                    g = gcd(a, b)
                    d[i], d[j] = g, a * b // g
                    changed = True
        d.sort()
    return d


def smith_diagonal(columns: list, nrows: int) -> list:
    """Invariant factors of a sparse integer matrix given as a list of
    {row: value} columns."""
    rows: dict = {}
    cols: dict = {}
    for c, col in enumerate(columns):
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[c] = v
                cols.setdefault(c, {})[r] = v
    diag = []
    progress = True
    while progress:
        progress = False
        for c in sorted(cols, key=lambda c: len(cols[c])):
            col = cols.get(c)
            if not col:
                continue
            units = [r for r, v in col.items() if abs(v) == 1]
            if not units:
                continue
            r = min(units, key=lambda r: (len(rows[r]), r))
            pivot_row = rows[r]
            pv = pivot_row[c]
            for r2 in [x for x in col if x != r]:
                f = rows[r2][c] * pv  # pv = +-1 so this is the multiplier
                row2 = rows[r2]
                for cc, v in pivot_row.items():
                    nv = row2.get(cc, 0) - f * v
                    if nv:
                        row2[cc] = nv
                        cols[cc][r2] = nv
                    else:
                        row2.pop(cc, None)
                        cols[cc].pop(r2, None)
                if not row2:
                    del rows[r2]
            # column c is now the single entry (r, c); clear row r by column ops
            for cc in pivot_row:
                cols[cc].pop(r, None)
                if not cols[cc]:
                    del cols[cc]
            del rows[r]
            diag.append(1)
            progress = True
    if rows:
        rlist = sorted(rows)
        clist = sorted(cols)
        cidx = {c: k for k, c in enumerate(clist)}
        dense = [[0] * len(clist) for _ in rlist]
        for k, r in enumerate(rlist):
            for c, v in rows[r].items():
                dense[k][cidx[c]] = v
        diag.extend(_dense_snf_diagonal(dense))
    return invariant_factors(diag)


@dataclass(frozen=True)
class HomologyGroup:
    dim: int
    betti: int
    torsion: tuple = ()

    def is_trivial(self) -> bool:
        return self.betti == 0 and not self.torsion

    def to_dict(self) -> dict:
        return {"dim": self.dim, "betti": self.betti, "torsion": list(self.torsion)}

    def __str__(self):
        parts = (["Z"] if self.betti == 1 else [f"Z^{self.betti}"] if self.betti else [])
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class HomologyResult:
    groups: tuple
    reduced: bool

    def __getitem__(self, d: int) -> HomologyGroup:
        for g in self.groups:
            if g.dim == d:
                return g
        return HomologyGroup(d, 0)

    def betti(self) -> list:
        return [g.betti for g in self.groups]

    def to_dict(self) -> dict:
        return {"reduced": self.reduced, "groups": [g.to_dict() for g in self.groups]}


def homology(c: SimplicialComplex, reduced: bool = False) -> HomologyResult:
    cc = chain_complex(c)
    top = c.dimension
    ranks = {}
    torsion = {}
    for d in range(1, top + 1):
        f = smith_diagonal(cc.boundary[d], cc.sizes.get(d - 1, 0))
        ranks[d] = len(f)
        torsion[d] = tuple(x for x in f if x > 1)
    groups = []
    if top < 0:
        if reduced:
            groups.append(HomologyGroup(-1, 1))
        return HomologyResult(tuple(groups), reduced)
    for d in range(top + 1):
        z = cc.sizes.get(d, 0) - ranks.get(d, 0)
        if d == 0 and reduced:
            z -= 1  # kernel of the augmentation
        b = z - ranks.get(d + 1, 0)
        groups.append(HomologyGroup(d, b, torsion.get(d + 1, ())))
    euler_from_betti = sum((-1) ** g.dim * g.betti for g in groups) + (1 if reduced else 0)
    if euler_from_betti != euler_characteristic(c):
        raise AssertionError("Euler characteristic from Betti numbers disagrees with face count")
    return HomologyResult(tuple(groups), reduced)


def euler_characteristic(c: SimplicialComplex) -> int:
    return sum((-1) ** d * len(s) for d, s in c.simplices.items())


def is_acyclic(c: SimplicialComplex, verify: bool = False) -> bool:
    """Trivial reduced homology. A cone is acyclic outright unless verify=True,
    in which case the full computation always runs."""
    if not c.simplices:
        return False  # reduced H_{-1} of the empty complex is Z
    if not verify and c.cone_vertex() is not None:
        return True
    return all(g.is_trivial() for g in homology(c, reduced=True).groups)


def sphere_homology(c: SimplicialComplex, n: int) -> bool:
    """Reduced homology equal to that of S^n."""
    h = homology(c, reduced=True)
    for g in h.groups:
        want = 1 if g.dim == n else 0
        if g.betti != want or g.torsion:
            return False
    return h[n].betti == 1
