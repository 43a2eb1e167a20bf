import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lamancount.errors import InvalidInputError
from lamancount.graph import (Multigraph, SimpleGraph, canonical_key, components, dim, henneberg1, henneberg2,
                              permute, quotient, restrict)
from lamancount.constructions import fixture_graph, FIXTURE_EDGES
from lamancount.pebble import is_laman

from oracles import edge_rank, random_relabel

A, B, C, D, E, F = range(6)


def fig3a():
    # d-a, a-b, b-c, e-f and a double edge d-c; ids 0..5
    return Multigraph.from_records([(0, D, A), (1, A, B), (2, B, C), (3, E, F), (4, D, C), (5, D, C)],
                                   vertices=range(6))


def pairs(g: Multigraph):
    return sorted(tuple(sorted((a, b))) for _, a, b in g.edges)


@st.composite
def multigraphs(draw, max_n=7, max_m=10):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    recs = [(i, draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))) for i in range(m)]
    return Multigraph.from_records(recs, vertices=range(n))


class TestTypes:
    def test_simple_graph_rejects_loops_and_foreign_endpoints(self):
        with pytest.raises(InvalidInputError):
            SimpleGraph.from_edges([(1, 1)])
        with pytest.raises(InvalidInputError):
            SimpleGraph((0, 1), frozenset({(0, 2)}))
        with pytest.raises(InvalidInputError):
            SimpleGraph((0, 1), frozenset({(1, 0)}))

    def test_multigraph_allows_loops_and_parallels(self):
        g = Multigraph.from_records([(0, 0, 1), (1, 0, 1), (2, 1, 1)])
        assert g.m == 3 and g.has_loop()

    def test_multigraph_rejects_duplicate_ids(self):
        with pytest.raises(InvalidInputError):
            Multigraph.from_records([(0, 0, 1), (0, 1, 2)])

    def test_multigraph_rejects_unknown_endpoint(self):
        with pytest.raises(InvalidInputError):
            Multigraph((0, 1), ((0, 0, 5),))


class TestComponentsAndDim:
    def test_empty(self):
        g = SimpleGraph.from_edges([])
        assert components(g) == [] and dim(g) == 0

    def test_prism_connected(self):
        g = fixture_graph("f6")
        assert components(g) == [list(range(6))]
        assert dim(g) == 5

    def test_disjoint_edges(self):
        g = SimpleGraph.from_edges([(0, 1), (2, 3)])
        assert components(g) == [[0, 1], [2, 3]]
        assert dim(g) == 2

    def test_single_loop(self):
        g = Multigraph.from_records([(0, 7, 7)])
        assert dim(g) == 0 and components(g) == [[7]]

    def test_isolated_vertices_are_singletons(self):
        g = SimpleGraph.from_edges([(0, 1)], vertices=range(3))
        assert components(g) == [[0, 1], [2]]


class TestQuotientRestrict:
    def test_figure3_quotient(self):
        q = quotient(fig3a(), {0, 4})
        assert q.vertices == (0, 1, 2, 3)
        # {a,c,d} -> 0 with a loop, two parallels to b -> 1, e-f -> 2-3
        assert pairs(q) == [(0, 0), (0, 1), (0, 1), (2, 3)]
        assert sorted(q.edge_ids()) == [1, 2, 3, 5]

    def test_figure3_restrict(self):
        r = restrict(fig3a(), {0, 4})
        assert r.vertices == tuple(range(6))
        assert pairs(r) == [(A, B), (B, C), (C, D), (E, F)]
        assert sorted(r.edge_ids()) == [1, 2, 3, 5]

    def test_empty_set_is_identity(self):
        g = fig3a()
        assert quotient(g, set()) == g
        assert restrict(g, set()) == g

    def test_full_contraction_of_triangle(self):
        t = fixture_graph("triangle").to_multigraph()
        q = quotient(t, t.edge_ids())
        assert q.n == 1 and q.m == 0
        assert restrict(t, t.edge_ids()).n == 0

    def test_isolated_vertex_survives_quotient(self):
        g = Multigraph.from_records([(0, 0, 1)], vertices=range(3))
        assert quotient(g, {0}).n == 2

    def test_unknown_id(self):
        with pytest.raises(InvalidInputError):
            quotient(fig3a(), {99})
        with pytest.raises(InvalidInputError):
            restrict(fig3a(), {99})

    @settings(max_examples=200, deadline=None)
    @given(multigraphs(), st.data())
    def test_rank_identity(self, g, data):
        s = data.draw(st.sets(st.sampled_from(sorted(g.edge_ids())))) if g.m else set()
        rank_s = edge_rank((a, b) for e, a, b in g.edges if e in s)
        assert dim(quotient(g, s)) == dim(g) - rank_s
        rest = g.edge_ids() - s
        assert quotient(g, s).edge_ids() == rest
        assert restrict(g, s).edge_ids() == rest


class TestHenneberg:
    def test_triangle_to_h1_to_h2(self):
        h1 = henneberg1(fixture_graph("triangle"), 1, 2)
        assert (h1.n, h1.m) == (4, 5) and is_laman(h1)
        assert canonical_key(h1) == canonical_key(fixture_graph("h1"))
        h2 = henneberg1(h1, 0, 3)
        assert (h2.n, h2.m) == (5, 7) and is_laman(h2)
        assert canonical_key(h2) == canonical_key(fixture_graph("h2"))

    def test_errors(self):
        t = fixture_graph("triangle")
        with pytest.raises(InvalidInputError):
            henneberg1(t, 0, 0)
        with pytest.raises(InvalidInputError):
            henneberg1(t, 0, 9)
        with pytest.raises(InvalidInputError):
            henneberg2(t, 0, 1, 1)

    def test_preserves_laman(self, rng):
        for name in FIXTURE_EDGES:
            g = fixture_graph(name)
            for _ in range(5):
                u, v = rng.sample(g.vertices, 2)
                assert is_laman(henneberg1(g, u, v))
                (a, b) = rng.choice(g.sorted_edges())
                x = rng.choice([w for w in g.vertices if w not in (a, b)])
                assert is_laman(henneberg2(g, a, b, x))


class TestCanonicalKey:
    def test_permutation_invariance(self, rng):
        for name in ("f6", "f9", "f12", "h2"):
            g = fixture_graph(name)
            key = canonical_key(g)
            for _ in range(100):
                assert canonical_key(random_relabel(g, rng)) == key

    def test_permute_alias(self):
        g = fixture_graph("h1")
        assert canonical_key(permute(g, {0: 3, 1: 2, 2: 1, 3: 0})) == canonical_key(g)

    def test_triangle_vs_path(self):
        assert canonical_key(fixture_graph("triangle")) != canonical_key(
            SimpleGraph.from_edges([(0, 1), (1, 2), (2, 3)]))

    def test_multiplicity_matters(self):
        single = Multigraph.from_records([(0, 0, 1)])
        double = Multigraph.from_records([(0, 0, 1), (1, 0, 1)])
        assert canonical_key(single) != canonical_key(double)

    def test_loops_matter(self):
        a = Multigraph.from_records([(0, 0, 1), (1, 0, 0)])
        b = Multigraph.from_records([(0, 0, 1), (1, 0, 1)])
        assert canonical_key(a) != canonical_key(b)

    def test_deterministic(self):
        g = fixture_graph("f10")
        assert canonical_key(g) == canonical_key(fixture_graph("f10"))

    def test_distinguishes_all_small_graphs(self):
        from oracles import atlas
        keys = [canonical_key(g) for g in atlas(6)]
        assert len(set(keys)) == len(keys)

    def test_hard_regular_pair(self):
        # two 3-regular graphs on 6 vertices: prism and K_{3,3}; refinement alone cannot split them
        k33 = SimpleGraph.from_edges([(a, b) for a in range(3) for b in range(3, 6)])
        assert canonical_key(k33) != canonical_key(fixture_graph("f6"))
        rng = random.Random(1)
        for _ in range(20):
            assert canonical_key(random_relabel(k33, rng)) == canonical_key(k33)
