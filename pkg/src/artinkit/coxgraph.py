"""Coxeter graphs: construction, validation, the text/JSON document formats,
full subgraphs and connected components.

Generators are addressed by index; the order of ``generators`` is the total
order used by every lexicographic convention elsewhere in the package.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .errors import GraphParseError


class _Infinity:
    """Marker for m = infinity. Deliberately supports no arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

Order = Union[int, _Infinity]
GenSet = frozenset  # frozenset[int] of generator indices


def _check_order(m) -> Order:
    if m is INF:
        return m
    if isinstance(m, bool) or not isinstance(m, int):
        raise ValueError(f"order must be an integer >= 2 or INF, got {m!r}")
    if m < 2:
        raise ValueError(f"off-diagonal order must be >= 2 or INF, got {m}")
    return m


@dataclass(frozen=True)
class CoxeterGraph:
    """Symmetric Coxeter matrix over a list of named generators.

    ``matrix[i][j]`` holds m_{i,j}; the diagonal is 1 and every off-diagonal
    entry is stored explicitly (absent edges as 2).
    """

    generators: tuple
    matrix: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if len(set(gens)) != len(gens):
            dup = next(g for g in gens if gens.count(g) > 1)
            raise ValueError(f"duplicate generator {dup!r}")
        for g in gens:
            if not isinstance(g, str) or not g or re.search(r"\s|#|\^", g):
                raise ValueError(f"invalid generator name {g!r}")
        n = len(gens)
        rows = tuple(tuple(r) for r in self.matrix)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("matrix shape does not match generator count")
        for i in range(n):
            if rows[i][i] != 1:
                raise ValueError(f"diagonal entry m[{gens[i]}][{gens[i]}] must be 1")
            for j in range(i + 1, n):
                a, b = rows[i][j], rows[j][i]
                if a != b and not (a is INF and b is INF):
                    raise ValueError(
                        f"asymmetric orders: m[{gens[i]}][{gens[j]}]={a} but "
                        f"m[{gens[j]}][{gens[i]}]={b}"
                    )
                _check_order(a)
        object.__setattr__(self, "matrix", rows)

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_edges(cls, generators: Iterable[str], edges: Mapping | Iterable = ()) -> "CoxeterGraph":
        """Build from generator names and (name, name, order) triples or a
        {(name, name): order} mapping. Missing pairs default to 2."""
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            dup = next(g for g in gens if gens.count(g) > 1)
            raise ValueError(f"duplicate generator {dup!r}")
        idx = {g: i for i, g in enumerate(gens)}
        n = len(gens)
        m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        seen: dict = {}
        items = edges.items() if isinstance(edges, Mapping) else ((tuple(e[:2]), e[2]) for e in edges)
        for (a, b), order in items:
            if a not in idx or b not in idx:
                raise ValueError(f"edge references unknown generator: {a!r}, {b!r}")
            if a == b:
                raise ValueError(f"self-edge on {a!r}")
            order = _check_order(order)
            key = frozenset((a, b))
            if key in seen and seen[key] != order:
                raise ValueError(f"asymmetric orders for pair {a!r}, {b!r}: {seen[key]} vs {order}")
            seen[key] = order
            i, j = idx[a], idx[b]
            m[i][j] = m[j][i] = order
        return cls(gens, tuple(tuple(r) for r in m))

    # -- access -------------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.generators)

    def m(self, i: int, j: int) -> Order:
        return self.matrix[i][j]

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def all_gens(self) -> frozenset:
        return frozenset(range(self.rank))

    def edges(self):
        """(i, j, m) for i < j with m >= 3 or INF, in index order."""
        out = []
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                mij = self.matrix[i][j]
                if mij is INF or mij >= 3:
                    out.append((i, j, mij))
        return out

    def names(self, subset: Iterable[int]) -> list:
        return [self.generators[i] for i in sorted(subset)]

    def subset(self, names: Iterable[str]) -> frozenset:
        return frozenset(self.index(n) for n in names)

    def __str__(self):
        return serialize_graph(self)


# -- document formats -----------------------------------------------------

_NAME = r"[^\s#^]+"


def parse_graph(text: str) -> CoxeterGraph:
    """Parse a graph document (line format or its JSON equivalent)."""
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphParseError(exc.msg, exc.lineno, exc.colno) from None
        return graph_from_dict(data)

    generators = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        key, sep, rest = line.strip().partition(":")
        if not sep:
            raise GraphParseError("expected 'generators:' or 'edge:' statement", lineno, col)
        key = key.strip()
        fields = rest.split()
        if key == "generators":
            if generators is not None:
                raise GraphParseError("'generators' declared twice", lineno, col)
            if len(set(fields)) != len(fields):
                dup = next(f for f in fields if fields.count(f) > 1)
                raise GraphParseError(f"duplicate generator {dup!r}", lineno, col + line.strip().index(dup))
            generators = fields
        elif key == "edge":
            if generators is None:
                raise GraphParseError("'edge' before 'generators'", lineno, col)
            if len(fields) != 3:
                raise GraphParseError("edge needs exactly: name name order", lineno, col)
            a, b, o = fields
            for name in (a, b):
                if name not in generators:
                    raise GraphParseError(f"unknown generator {name!r}", lineno, col + line.strip().index(name))
            if a == b:
                raise GraphParseError(f"self-edge on {a!r}", lineno, col)
            if o == "inf":
                order = INF
            elif re.fullmatch(r"\d+", o):
                order = int(o)
                if order < 2:
                    raise GraphParseError(f"order out of range: {o}", lineno, col + line.strip().rindex(o))
            else:
                raise GraphParseError(f"invalid order {o!r}", lineno, col + line.strip().rindex(o))
            edges.append((a, b, order, lineno))
        else:
            raise GraphParseError(f"unknown statement {key!r}", lineno, col)
    if generators is None:
        raise GraphParseError("missing 'generators' statement", None)
    seen = {}
    for a, b, order, lineno in edges:
        key = frozenset((a, b))
        if key in seen and seen[key] != order:
            raise GraphParseError(f"asymmetric orders for {a}, {b}: {seen[key]} vs {order}", lineno)
        seen[key] = order
    return CoxeterGraph.from_edges(generators, [(a, b, o) for a, b, o, _ in edges])


def serialize_graph(g: CoxeterGraph) -> str:
    lines = ["generators: " + " ".join(g.generators)]
    for i, j, m in g.edges():
        lines.append(f"edge: {g.generators[i]} {g.generators[j]} {m}")
    return "\n".join(lines) + "\n"


def graph_to_dict(g: CoxeterGraph) -> dict:
    return {
        "generators": list(g.generators),
        "edges": [[g.generators[i], g.generators[j], "inf" if m is INF else m] for i, j, m in g.edges()],
    }


def graph_from_dict(data) -> CoxeterGraph:
    if not isinstance(data, dict) or "generators" not in data:
        raise GraphParseError("structured graph needs a 'generators' list")
    gens = data["generators"]
    if not isinstance(gens, list) or not all(isinstance(x, str) for x in gens):
        raise GraphParseError("'generators' must be a list of names")
    edges = []
    for e in data.get("edges", []):
        if not isinstance(e, list) or len(e) != 3:
            raise GraphParseError(f"edge must be [name, name, order], got {e!r}")
        a, b, o = e
        if o == "inf":
            o = INF
        elif isinstance(o, bool) or not isinstance(o, int):
            raise GraphParseError(f"invalid order {o!r}")
        edges.append((a, b, o))
    try:
        return CoxeterGraph.from_edges(gens, edges)
    except ValueError as exc:
        raise GraphParseError(str(exc)) from None


# -- structure ------------------------------------------------------------

def subgraph(g: CoxeterGraph, X: Iterable[int]) -> CoxeterGraph:
    """Full subgraph on X, generators kept in parent order."""
    idx = sorted(set(X))
    for i in idx:
        if not 0 <= i < g.rank:
            raise IndexError(f"generator index {i} out of range for rank {g.rank}")
    return CoxeterGraph(
        tuple(g.generators[i] for i in idx),
        tuple(tuple(g.matrix[i][j] for j in idx) for i in idx),
    )


def connected_components(g: CoxeterGraph) -> list:
    """Partition of the generators under the edge relation m >= 3."""
    parent = list(range(g.rank))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, _ in g.edges():
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups: dict = {}
    for i in range(g.rank):
        groups.setdefault(find(i), set()).add(i)
    return [frozenset(c) for _, c in sorted(groups.items())]


def free_of_infinity(g: CoxeterGraph, X: Iterable[int]) -> bool:
    X = sorted(X)
    return all(g.matrix[a][b] is not INF for k, a in enumerate(X) for b in X[k + 1:])


# -- named graphs ---------------------------------------------------------

def _path(n: int, labels: dict | None = None, prefix: str = "s") -> CoxeterGraph:
    gens = [f"{prefix}{i}" for i in range(1, n + 1)]
    labels = labels or {}
    edges = [(gens[i], gens[i + 1], labels.get(i, 3)) for i in range(n - 1)]
    return CoxeterGraph.from_edges(gens, edges)


def type_A(n: int) -> CoxeterGraph:
    return _path(n)


def type_B(n: int) -> CoxeterGraph:
    if n < 2:
        raise ValueError("B_n needs n >= 2")
    return _path(n, {n - 2: 4})


def type_D(n: int) -> CoxeterGraph:
    if n < 4:
        raise ValueError("D_n needs n >= 4")
    gens = [f"s{i}" for i in range(1, n + 1)]
    edges = [(gens[i], gens[i + 1], 3) for i in range(n - 2)]
    edges.append((gens[n - 3], gens[n - 1], 3))
    return CoxeterGraph.from_edges(gens, edges)


def type_E(n: int) -> CoxeterGraph:
    if n not in (6, 7, 8):
        raise ValueError("E_n needs n in 6..8")
    # Bourbaki labelling: s1-s3-s4-s5-...; s2 hangs off s4
    gens = [f"s{i}" for i in range(1, n + 1)]
    chain = [1, 3, 4] + list(range(5, n + 1))
    edges = [(f"s{a}", f"s{b}", 3) for a, b in zip(chain, chain[1:])]
    edges.append(("s2", "s4", 3))
    return CoxeterGraph.from_edges(gens, edges)


def type_F4() -> CoxeterGraph:
    return _path(4, {1: 4})


def type_H(n: int) -> CoxeterGraph:
    if n not in (3, 4):
        raise ValueError("H_n needs n in (3, 4)")
    return _path(n, {0: 5})


def dihedral(p: Order, names=("s", "t")) -> CoxeterGraph:
    return CoxeterGraph.from_edges(names, [(names[0], names[1], p)])


def figure_1_4() -> CoxeterGraph:
    """Two infinite-order edges s0-s1 and s0'-s1' (the affine grid group)."""
    return CoxeterGraph.from_edges(
        ["s0", "s1", "s0'", "s1'"], [("s0", "s1", INF), ("s0'", "s1'", INF)]
    )


def named_graph(name: str) -> CoxeterGraph:
    """Resolve names such as ``A3``, ``B2``, ``D4``, ``E6``, ``F4``, ``H3``,
    ``I2(5)``, ``I2(inf)``, ``fig14``."""
    key = name.strip()
    if key.lower() in ("fig14", "fig1.4"):
        return figure_1_4()
    mt = re.fullmatch(r"I2\((\d+|inf)\)", key)
    if mt:
        p = INF if mt.group(1) == "inf" else int(mt.group(1))
        return dihedral(p)
    mt = re.fullmatch(r"([ABDEFH])(\d+)", key)
    if not mt:
        raise KeyError(f"unknown graph name {name!r}")
    fam, n = mt.group(1), int(mt.group(2))
    if fam == "A":
        return type_A(n)
    if fam == "B":
        return type_B(n)
    if fam == "D":
        return type_D(n)
    if fam == "E":
        return type_E(n)
    if fam == "F" and n == 4:
        return type_F4()
    if fam == "H":
        return type_H(n)
    raise KeyError(f"unknown graph name {name!r}")
