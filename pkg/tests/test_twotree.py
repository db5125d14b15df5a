"""2-tree and 2d-tree recognition against brute-force order search."""

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tripletcover import (
    SimpleGraph,
    degree_two_vertices,
    is_two_d_tree,
    is_two_tree,
)

from conftest import brute_force_two_d_tree, brute_force_two_tree

K3 = SimpleGraph.from_edges([("1", "2"), ("1", "3"), ("2", "3")])
C4 = SimpleGraph.from_edges([("1", "2"), ("2", "3"), ("3", "4"), ("1", "4")])
# 2d-tree but not 2-tree: vertex 5 attaches to the non-adjacent pair 3, 4
D5 = SimpleGraph.from_edges(
    [("1", "2"), ("1", "3"), ("2", "3"), ("1", "4"), ("2", "4"), ("3", "5"), ("4", "5")]
)


def random_sparse_graph(seed: int) -> SimpleGraph:
    """A random graph with the 2-tree edge count 2|V| - 3."""
    rng = random.Random(seed)
    k = rng.randint(4, 7)
    verts = [str(i) for i in range(1, k + 1)]
    edges = rng.sample(list(combinations(verts, 2)), 2 * k - 3)
    return SimpleGraph(verts, edges)


class TestIsTwoTree:
    def test_triangle(self):
        order = is_two_tree(K3)
        assert order is not None
        assert len(order.order) == 3
        assert order.validate(K3)

    def test_single_edge(self):
        g = SimpleGraph.from_edges([("a", "b")])
        assert is_two_tree(g) is not None

    def test_four_cycle_rejected(self):
        assert is_two_tree(C4) is None

    def test_five_leaf_cover_graph(self, five_leaf_cover):
        order = is_two_tree(five_leaf_cover.cover_graph())
        assert order is not None
        assert order.validate(five_leaf_cover.cover_graph())

    def test_caterpillar8_cover_graph(self, caterpillar8_cover):
        assert is_two_tree(caterpillar8_cover.cover_graph()) is None

    def test_d5_rejected(self):
        assert is_two_tree(D5) is None

    def test_too_few_vertices(self):
        with pytest.raises(ValueError):
            is_two_tree(SimpleGraph("a", []))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 100_000))
    def test_agrees_with_brute_force(self, seed):
        g = random_sparse_graph(seed)
        order = is_two_tree(g)
        assert (order is not None) == brute_force_two_tree(g)
        if order is not None:
            assert order.validate(g)

    @pytest.mark.parametrize("k", [4, 5])
    def test_exhaustive_oracle_equivalence(self, k):
        # every graph on k vertices with 2k-3 edges, against the order search
        verts = [str(i) for i in range(1, k + 1)]
        for edges in combinations(list(combinations(verts, 2)), 2 * k - 3):
            g = SimpleGraph(verts, edges)
            assert (is_two_tree(g) is not None) == brute_force_two_tree(g)
            assert (is_two_d_tree(g) is not None) == brute_force_two_d_tree(g)

    def test_growing_two_trees_always_accepted(self):
        # grow genuine 2-trees and check the greedy never rejects one
        for seed in range(40):
            rng = random.Random(seed)
            verts = ["1", "2"]
            edges = [("1", "2")]
            for i in range(3, rng.randint(4, 10)):
                p, q = rng.choice(edges)
                v = str(i)
                verts.append(v)
                edges.extend([(p, v), (q, v)])
            g = SimpleGraph(verts, edges)
            order = is_two_tree(g)
            assert order is not None and order.validate(g)


class TestIsTwoDTree:
    def test_every_two_tree_is_a_2d_tree(self, five_leaf_cover):
        for g in (K3, five_leaf_cover.cover_graph()):
            assert is_two_tree(g) is not None
            assert is_two_d_tree(g) is not None

    def test_witness_graph(self):
        order = is_two_d_tree(D5)
        assert order is not None
        # replay: each vertex after the first two has exactly 2 earlier neighbors
        placed = {order[0], order[1]}
        assert D5.has_edge(order[0], order[1])
        for v in order[2:]:
            assert len(D5.neighbors(v) & placed) == 2
            placed.add(v)

    def test_four_cycle_rejected(self):
        assert is_two_d_tree(C4) is None

    def test_too_few_vertices(self):
        with pytest.raises(ValueError):
            is_two_d_tree(SimpleGraph("a", []))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 100_000))
    def test_agrees_with_brute_force(self, seed):
        g = random_sparse_graph(seed)
        assert (is_two_d_tree(g) is not None) == brute_force_two_d_tree(g)


class TestDegreeTwoVertices:
    def test_triangle(self):
        assert degree_two_vertices(K3) == ("1", "2", "3")

    def test_five_leaf_cover_graph(self, five_leaf_cover):
        assert "a" in degree_two_vertices(five_leaf_cover.cover_graph())

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 100_000))
    def test_accepted_two_trees_have_two_degree_two_vertices(self, seed):
        g = random_sparse_graph(seed)
        if is_two_tree(g) is not None and g.n_vertices >= 3:
            assert len(degree_two_vertices(g)) >= 2
