import os
import random
from itertools import combinations

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from artinkit.coxgraph import INF, CoxeterGraph

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ORDERS = [2, 3, 4, 5, 6, INF]


@st.composite
def graphs(draw, min_rank=1, max_rank=4, orders=ORDERS):
    n = draw(st.integers(min_rank, max_rank))
    gens = [f"g{i}" for i in range(n)]
    edges = []
    for i, j in combinations(range(n), 2):
        m = draw(st.sampled_from(orders))
        if m != 2:
            edges.append((gens[i], gens[j], m))
    return CoxeterGraph.from_edges(gens, edges)


def words(g, max_len=10):
    return st.lists(st.integers(0, g.rank - 1), max_size=max_len).map(tuple)


def signed_words(g, max_len=10):
    return st.lists(st.tuples(st.integers(0, g.rank - 1), st.sampled_from([1, -1])),
                    max_size=max_len)


def perm_of_word(n, word):
    """Image of a word in A_n under s_i -> (i, i+1), as a tuple in S_{n+1}."""
    p = list(range(n + 1))
    for i in word:
        p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


def rank_three_corpus():
    orders = [2, 3, 4, 5, 6, INF]
    out = []
    for a in orders:
        for b in orders:
            for c in orders:
                out.append(CoxeterGraph.from_edges(
                    ["a", "b", "c"],
                    [e for e in (("a", "b", a), ("b", "c", b), ("a", "c", c)) if e[2] != 2]))
    return out


@pytest.fixture
def rng():
    return random.Random(20261014)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
