"""Acceptance criteria, one test each, with the stated runtime limits.

Each test prints (and records for the terminal summary) a single line
``criterion N: PASS|FAIL``. Run alone with ``pytest tests/test_acceptance.py``
or as a script with ``python3 tests/test_acceptance.py``.
"""

import functools
import random
import sys
import time
from itertools import combinations

import pytest

from artinkit import monoid as mon
from artinkit import parabolic as par
from artinkit import salvetti as sal
from artinkit.coxgraph import INF, CoxeterGraph, dihedral, figure_1_4, named_graph, type_A, type_B
from artinkit.sphericity import (
    classified_order,
    enumerate_sf,
    enumeration_closes,
    is_spherical,
    numeric_pd_check,
)
from artinkit.topology import (
    FinitePoset,
    euler_characteristic,
    homology,
    is_acyclic,
    order_complex,
    sphere_homology,
)
from artinkit.words import braid_moves, enumerate_group, normal_form, pi_word

RESULTS = {}


def criterion(number, limit, title):
    """Time the wrapped check, record PASS/FAIL and enforce the time limit."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            ok, note = False, ""
            try:
                fn(*args, **kwargs)
                ok = True
            except AssertionError as exc:
                note = str(exc).splitlines()[0] if str(exc) else "assertion failed"
                raise
            finally:
                elapsed = time.perf_counter() - start
                if ok and elapsed >= limit:
                    ok, note = False, f"too slow ({elapsed:.1f}s >= {limit}s)"
                line = (f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}  "
                        f"[{elapsed:.2f}s / limit {limit}s]" + (f"  {note}" if note else ""))
                RESULTS[number] = line
                print(line)
            assert elapsed < limit, f"criterion {number} took {elapsed:.1f}s, limit {limit}s"

        return run

    return wrap


# -- helpers -----------------------------------------------------------------

def perm_image(n, word):
    p = list(range(n + 1))
    for i in word:
        p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


def equal_by_relations(g, word, rng, max_len):
    """A word equal to ``word`` in W, made by inserting/deleting ss and
    applying braid moves at random."""
    w = list(word)
    for _ in range(rng.randint(1, 6)):
        op = rng.random()
        if op < 0.35 and len(w) + 2 <= max_len:
            i = rng.randint(0, len(w))
            s = rng.randrange(g.rank)
            w[i:i] = [s, s]
        elif op < 0.6:
            pairs = [i for i in range(len(w) - 1) if w[i] == w[i + 1]]
            if pairs:
                i = rng.choice(pairs)
                del w[i:i + 2]
        else:
            moves = sorted(braid_moves(g, tuple(w)))
            if moves:
                w = list(rng.choice(moves))
    return tuple(w)


def rank_le_3_corpus():
    out = [named_graph("A1")]
    out += [dihedral(p) for p in list(range(2, 13)) + [INF]]
    orders = [2, 3, 4, 5, 6, INF]
    for a in orders:
        for b in orders:
            for c in orders:
                edges = [e for e in (("a", "b", a), ("b", "c", b), ("a", "c", c)) if e[2] != 2]
                out.append(CoxeterGraph.from_edges(["a", "b", "c"], edges))
    return out


def left_multiples(elems_by_canon, a, max_length):
    """Brute force: every a*x with lg(a*x) <= max_length."""
    return {a * x for x in elems_by_canon if len(a) + len(x) <= max_length}


def right_multiples(elems_by_canon, a, max_length):
    return {x * a for x in elems_by_canon if len(a) + len(x) <= max_length}


# -- criteria -------------------------------------------------------------------

@criterion(1, 30, "word engine agrees with the symmetric group on A_n, n <= 4")
def test_c01_word_engine_vs_permutations():
    rng = random.Random(1)
    checked = equal_pairs = 0
    for n in (1, 2, 3, 4):
        g = type_A(n)
        for k in range(2500):
            u = tuple(rng.randrange(n) for _ in range(rng.randint(0, 12)))
            if k % 2 == 0:
                v = equal_by_relations(g, u, rng, 12)
            else:
                v = tuple(rng.randrange(n) for _ in range(rng.randint(0, 12)))
            assert len(u) <= 12 and len(v) <= 12
            same_nf = normal_form(g, u) == normal_form(g, v)
            same_perm = perm_image(n, u) == perm_image(n, v)
            assert same_nf == same_perm, (n, u, v)
            equal_pairs += same_perm
            checked += 1
    assert checked == 10000
    assert equal_pairs >= 5000


@criterion(2, 10, "group orders by enumeration match the classification")
def test_c02_group_orders():
    expected = {"A2": 6, "B2": 8, "A3": 24, "B3": 48, "H3": 120}
    for name, order in expected.items():
        g = named_graph(name)
        v = is_spherical(g)
        assert v.finite
        assert classified_order(v) == order
        assert len(enumerate_group(g)) == order


@criterion(3, 60, "classification = positive definiteness = enumeration closure, rank <= 3")
def test_c03_triple_sphericity():
    corpus = rank_le_3_corpus()
    assert len(corpus) == 1 + 12 + 216
    finite = 0
    for g in corpus:
        a = is_spherical(g).finite
        b = numeric_pd_check(g)
        c = enumeration_closes(g, 500)
        assert a == b == c, (g, a, b, c)
        finite += a
    assert finite > 0


@criterion(4, 20, "Coxeter complexes: I2(m) has 2m vertices/edges and circle homology; Cox(A3) ~ S^2")
def test_c04_coxeter_complexes():
    for m in range(3, 9):
        c = sal.coxeter_complex(dihedral(m))
        assert c.f_vector() == [2 * m, 2 * m]
        h = homology(c)
        assert [(x.betti, x.torsion) for x in h.groups] == [(1, ()), (1, ())]
    assert sphere_homology(sal.coxeter_complex(type_A(3)), 2)


@criterion(5, 60, "order complex of P acyclic and of P0 a homology sphere for A2, B2, A3")
def test_c05_coset_posets():
    for g in (type_A(2), type_B(2), type_A(3)):
        assert is_acyclic(order_complex(sal.coset_poset(g, "P")), verify=True)
        assert sphere_homology(order_complex(sal.coset_poset(g, "P0")), g.rank - 1)


@criterion(6, 60, "Sal(A2): 24 elements, chi = 0, H1 = abelianized pure presentation = Z^3")
def test_c06_salvetti_a2():
    g = type_A(2)
    p = sal.salvetti_poset(g)
    assert len(p) == 24
    c = order_complex(p)
    assert euler_characteristic(c) == 0
    h1 = homology(c)[1]
    rank, torsion = sal.abelianization(sal.extract_pure_presentation(g))
    assert (h1.betti, h1.torsion) == (rank, torsion) == (3, ())


@criterion(7, 10, "extracted Artin presentations have the braid relators, rank <= 3 corpus")
def test_c07_presentations():
    for g in rank_le_3_corpus():
        pres = sal.extract_artin_presentation(g)
        assert pres.generators == tuple(f"a_{n}" for n in g.generators)
        expected = []
        for s, t in combinations(range(g.rank), 2):
            m = g.matrix[s][t]
            if m is INF:
                continue
            rel = tuple((x, 1) for x in pi_word(s, t, m)) + \
                tuple((x, -1) for x in reversed(pi_word(t, s, m)))
            expected.append(sal.cyclic_normal_form(rel))
        got = [sal.cyclic_normal_form(r) for r in pres.relators]
        assert sorted(got) == sorted(expected), g


@criterion(8, 120, "meet/join lattice laws against brute force on A+(A2), A+(B2)")
def test_c08_lattice_laws():
    for g in (dihedral(3), dihedral(4)):
        small = mon.enumerate_monoid(g, 4)
        upto8 = mon.enumerate_monoid(g, 8)
        for side in (mon.LEFT, mon.RIGHT):
            mult = left_multiples if side == mon.LEFT else right_multiples
            # brute-force divisor sets: x divides b iff b is among x's multiples
            multiples = {a: mult(upto8, a, 8) for a in small}
            divisors = {b: {a for a in small if b in multiples[a]} for b in small}
            for a in small:
                for b in small:
                    m = mon.meet([a, b], side)
                    common = divisors[a] & divisors[b]
                    assert m in common
                    assert all(m in multiples[d] for d in common)
                    j = mon.join([a, b], side, max_length=8)
                    if j.found:
                        above = multiples[a] & multiples[b]
                        assert j.element in above
                        jm = mult(upto8, j.element, 8)
                        assert above <= jm


@criterion(9, 30, "Garside element: Delta(A2), Delta(I2(m)) = Pi(s,t:m), Delta = join_L = join_R, none for m = inf")
def test_c09_garside():
    assert mon.delta(dihedral(3)).words() == {(0, 1, 0), (1, 0, 1)}
    for m in range(2, 7):
        g = dihedral(m)
        d = mon.delta(g)
        assert d == mon.canonicalize(g, pi_word(0, 1, m))
        gens = [mon.sigma(g, s) for s in range(g.rank)]
        assert mon.join(gens, mon.LEFT).element == d
        assert mon.join(gens, mon.RIGHT).element == d
        # brute force: the shortest common left/right multiple of both generators
        elems = mon.enumerate_monoid(g, m)
        for mult in (left_multiples, right_multiples):
            common = mult(elems, gens[0], m) & mult(elems, gens[1], m)
            shortest = min(len(x) for x in common)
            assert [x for x in common if len(x) == shortest] == [d]
    g = dihedral(INF)
    assert mon.join([mon.sigma(g, 0), mon.sigma(g, 1)]).status == "none"


@criterion(10, 120, "spherical Artin group word problem on A(A2), A(B2)")
def test_c10_group_word_problem():
    rng = random.Random(10)
    for g in (dihedral(3), dihedral(4)):
        positive_checked = 0
        for k in range(5000):
            if k % 2 == 0:
                # both sides positive, equal half of the time
                u = [(rng.randrange(2), 1) for _ in range(rng.randint(0, 5))]
                v = [(rng.randrange(2), 1) for _ in range(rng.randint(0, 5))]
                uv = tuple(s for s, _ in u + v)
                if k % 4 == 0:
                    moves = sorted(braid_moves(g, uv))
                    w_word = rng.choice(moves) if moves else uv
                else:
                    w_word = tuple(rng.randrange(2) for _ in range(len(uv)))
                w = mon.positive(w_word)
                assert mon.group_equal(g, u + v, w) == mon.monoid_equal(g, uv, w_word)
                positive_checked += 1
            else:
                u = [(rng.randrange(2), rng.choice((1, -1))) for _ in range(rng.randint(0, 5))]
                v = [(rng.randrange(2), rng.choice((1, -1))) for _ in range(rng.randint(0, 5))]
                w = [(rng.randrange(2), rng.choice((1, -1))) for _ in range(rng.randint(0, 10))]
                # u v = w iff u = w v^-1
                assert mon.group_equal(g, u + v, w) == mon.group_equal(g, u, w + mon.inverse_word(v))
        assert positive_checked == 2500
        for _ in range(1000):
            x = [(rng.randrange(2), rng.choice((1, -1))) for _ in range(rng.randint(0, 10))]
            assert mon.group_equal(g, x + mon.inverse_word(x), [])


@criterion(11, 300, "universal-cover order, level lemmas and sal_level(A2, n) acyclic for n <= 3")
def test_c11_universal_cover():
    g = type_A(2)
    p = sal.pos_salvetti_poset(g, 4, check=False)
    els = p.elements
    leq = {(a, b): a == b or sal.pos_leq(a, b) for a in els for b in els}
    for a in els:
        assert leq[a, a]
        for b in els:
            if a != b and leq[a, b]:
                assert not leq[b, a]
                for c in els:
                    if leq[b, c]:
                        assert leq[a, c]
    FinitePoset.from_leq(els, sal.pos_leq)  # independent axiom check
    alphas = mon.enumerate_monoid(g, 3)
    for a in alphas:
        assert sal.lemma_4_7_holds(a)
        if len(a) >= 1:
            assert sal.lemma_4_9_holds(a)
        for b in alphas:
            if a != b and len(a) == len(b) >= 1:
                assert sal.lemma_4_8_holds(a, b)
    for n in range(4):
        assert is_acyclic(sal.sal_level(g, n), verify=True)


@criterion(12, 60, "retraction laws for A2, A3, B2 and every T; pi_T(s3,{s3}) = (1, {})")
def test_c12_retraction():
    for g in (type_A(2), type_A(3), type_B(2)):
        for k in range(g.rank + 1):
            for T in combinations(range(g.rank), k):
                rep = par.retraction_suite(g, T)
                assert rep.passed, (g.generators, T, rep.counterexample)
    g = type_A(3)
    ctx = par.ParabolicContext(g, {0, 1})
    v = sal.SalVertex(normal_form(g, (2,)), frozenset({2}))
    out = par.pi(ctx, v)
    assert out.u.is_identity() and out.X == frozenset()


@criterion(13, 5, "FC decomposition of the two-infinity square graph and |S^f| = 9")
def test_c13_fc_bookkeeping():
    from artinkit.coxgraph import free_of_infinity

    g = figure_1_4()
    node = par.fc_decomposition(g)
    leaves = node.leaves()
    assert leaves and all(free_of_infinity(g, x.subset) for x in leaves)
    stack = [node]
    while stack:
        x = stack.pop()
        if x.pair is not None:
            assert x.union_ok and x.intersection_ok
        stack.extend(x.children)
    # exhaustive over all 16 subsets, independent of enumerate_sf
    sf = [X for k in range(5) for X in map(frozenset, combinations(range(4), k))
          if not ({0, 1} <= X or {2, 3} <= X)]
    assert len(sf) == 9 and sorted(map(sorted, enumerate_sf(g))) == sorted(map(sorted, sf))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
