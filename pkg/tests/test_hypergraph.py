import math
from itertools import combinations

import pytest

from bergeham.generators import binomial, complete, two_cliques
from bergeham.hypergraph import (
    VERIFIED,
    VIOLATED,
    CapacityError,
    Hypergraph,
    ParseError,
    VertexSet,
    check_codegree_condition,
    check_min_degree_conditions,
    is_expander,
    parse,
    serialize,
)
from bergeham.rng import SplitMix64


def brute_degree(H, v):
    return sum(1 for e in H.edges if v in e)


def brute_codegree(H, u, v):
    return sum(1 for e in H.edges if u in e and v in e)


class TestConstruction:
    def test_edges_are_canonical_sorted_tuples(self):
        H = Hypergraph(5, 3, [(2, 0, 4), (1, 3, 2)])
        assert H.edges == ((0, 2, 4), (1, 2, 3))

    def test_incidence_is_sorted_and_exact(self):
        H = Hypergraph(4, 3, [(0, 1, 2), (0, 2, 3), (1, 2, 3)])
        assert H.incidence[2] == (0, 1, 2)
        assert H.incidence[0] == (0, 1)

    def test_rejects_wrong_arity(self):
        with pytest.raises(ValueError, match="3 distinct vertices"):
            Hypergraph(4, 3, [(0, 1)])
        with pytest.raises(ValueError, match="3 distinct vertices"):
            Hypergraph(4, 3, [(0, 1, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            Hypergraph(3, 3, [(0, 1, 3)])

    def test_rejects_duplicate_edges_as_sets(self):
        with pytest.raises(ValueError, match="duplicate"):
            Hypergraph(4, 3, [(0, 1, 2), (2, 1, 0)])


class TestDegrees:
    def test_complete_graph_degree(self):
        H = complete(6, 3)
        assert H.degree(0) == 10  # C(5, 2), confirmed by enumeration
        assert all(H.degree(v) == brute_degree(H, v) for v in range(6))

    def test_empty_graph_degree(self):
        H = Hypergraph(4, 3, [])
        assert H.degree(2) == 0

    def test_two_cliques_degree(self):
        H = two_cliques(12, 3)
        assert all(H.degree(v) == 10 for v in range(12))

    def test_degree_out_of_range(self):
        with pytest.raises(ValueError):
            complete(4, 3).degree(4)

    def test_complete_codegree(self):
        H = complete(6, 3)
        for u, v in combinations(range(6), 2):
            assert H.codegree(u, v) == 4  # C(4, 1)
            assert H.codegree(u, v) == brute_codegree(H, u, v)

    def test_cross_clique_codegree_zero(self):
        H = two_cliques(12, 3)
        assert H.codegree(0, 6) == 0

    def test_single_edge_codegree(self):
        H = Hypergraph(3, 3, [(0, 1, 2)])
        assert H.codegree(0, 1) == 1

    def test_codegree_same_vertex_rejected(self):
        with pytest.raises(ValueError):
            complete(4, 3).codegree(1, 1)

    def test_degree_codegree_identity(self):
        # degree(v) * (r-1) == sum of codegrees with all other vertices
        for seed in range(5):
            H = binomial(9, 3, 0.3, seed=seed)
            for v in range(H.n):
                total = sum(H.codegree(u, v) for u in range(H.n) if u != v)
                assert total == H.degree(v) * (H.r - 1)


class TestNeighborhood:
    def test_single_edge(self):
        H = Hypergraph(3, 3, [(0, 1, 2)])
        assert set(H.neighborhood([0])) == {1, 2}

    def test_empty_graph(self):
        H = Hypergraph(5, 3, [])
        assert len(H.neighborhood([0, 1])) == 0

    def test_whole_clique_has_no_outside_neighbors(self):
        H = two_cliques(8, 3)
        assert len(H.neighborhood(range(4))) == 0

    def test_never_intersects_input(self):
        for seed in range(5):
            H = binomial(10, 3, 0.4, seed=seed)
            rng = SplitMix64(seed)
            S = set(rng.choose(list(range(10)), 3))
            assert S.isdisjoint(set(H.neighborhood(S)))


class TestVertexSet:
    def test_roundtrip_and_ops(self):
        a = VertexSet.of(8, [1, 3, 5])
        b = VertexSet.of(8, [3, 4])
        assert list(a) == [1, 3, 5]
        assert len(a | b) == 4
        assert list(a & b) == [3]
        assert list(a - b) == [1, 5]
        assert 5 in a and 4 not in a

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            VertexSet.of(4, [4])


class TestConnectivity:
    def test_complete_connected(self):
        assert complete(5, 3).is_connected

    def test_two_cliques_disconnected(self):
        assert not two_cliques(8, 3).is_connected

    def test_isolated_vertex_disconnects(self):
        H = Hypergraph(4, 3, [(0, 1, 2)])
        assert not H.is_connected
        assert (3,) in H.components

    def test_single_vertex_no_edges_connected(self):
        assert Hypergraph(1, 2, []).is_connected


class TestExpander:
    def test_complete_small_expander(self):
        assert is_expander(complete(4, 3), k=1, alpha=2).status == VERIFIED

    def test_isolated_vertex_witness(self):
        # complete(4,3) plus isolated vertex 4: only X={4} (with Y empty)
        # violates, since no single Y-vertex covers a clique vertex's edges
        H = Hypergraph(5, 3, list(combinations(range(4), 3)))
        res = is_expander(H, k=1, alpha=2)
        assert res.status == VIOLATED
        X, Y = res.witness
        assert X == (4,) and Y == ()

    def test_two_cliques_violated(self):
        res = is_expander(two_cliques(8, 3), k=4, alpha=2)
        assert res.status == VIOLATED

    def test_witness_verifies_against_definition(self):
        for seed in range(8):
            H = binomial(8, 3, 0.25, seed=seed)
            res = is_expander(H, k=3, alpha=2)
            if res.status != VIOLATED:
                continue
            X, Y = res.witness
            assert set(X).isdisjoint(Y)
            assert len(Y) < 2 * len(X) and len(X) <= 3
            for e in H.edges:
                in_x = sum(1 for v in e if v in X)
                in_y = sum(1 for v in e if v in Y)
                assert not (in_x == 1 and in_y == 0)

    def test_sampled_witness_agrees_with_exhaustive(self):
        H = two_cliques(8, 3)
        res = is_expander(H, k=4, alpha=2, exhaustive=False, trials=3000, seed=1)
        if res.status == VIOLATED:
            X, Y = res.witness
            for e in H.edges:
                in_x = sum(1 for v in e if v in X)
                in_y = sum(1 for v in e if v in Y)
                assert not (in_x == 1 and in_y == 0)

    def test_guard(self):
        with pytest.raises(CapacityError):
            is_expander(complete(20, 3), k=2, alpha=2)


class TestDegreeConditions:
    def test_complete_passes_codegree_condition(self):
        assert check_codegree_condition(complete(20, 3), 0.1).status == VERIFIED

    def test_two_cliques_fails(self):
        res = check_codegree_condition(two_cliques(20, 3), 0.1)
        assert res.status == VIOLATED
        assert res.witness is not None

    def test_empty_fails(self):
        H = Hypergraph(6, 3, [])
        assert check_codegree_condition(H, 0.1).status == VIOLATED

    def test_complete_min_degree_conditions(self):
        rep = check_min_degree_conditions(complete(20, 3), 0.05)
        assert rep.delta1_ok and rep.delta2_ok
        assert rep.min_degree == math.comb(19, 2)
        assert rep.min_codegree == 18

    def test_two_cliques_delta2_fails(self):
        rep = check_min_degree_conditions(two_cliques(20, 3), 0.05)
        assert not rep.delta2_ok

    def test_single_edge_both_fail(self):
        rep = check_min_degree_conditions(Hypergraph(6, 3, [(0, 1, 2)]), 0.05)
        assert not rep.delta1_ok and not rep.delta2_ok


class TestTextFormat:
    def test_parse_single_edge(self):
        H = parse("3 3 1\n0 1 2\n")
        assert H.n == 3 and H.edges == ((0, 1, 2),)

    def test_serialize_parse_roundtrip(self):
        for seed in range(4):
            H = binomial(9, 3, 0.3, seed=seed)
            assert parse(serialize(H)) == H

    def test_canonical_fixed_point(self):
        text = "4 3 2\n0 1 2\n1 2 3\n"
        assert serialize(parse(text)) == text

    def test_comments_and_blank_lines(self):
        H = parse("# host\n3 3 1\n\n0 1 2  # the only edge\n")
        assert H.num_edges == 1

    def test_duplicate_edge_rejected_with_line(self):
        with pytest.raises(ParseError, match="line 3"):
            parse("3 3 2\n0 1 2\n2 1 0\n")

    def test_wrong_arity_rejected(self):
        with pytest.raises(ParseError, match="distinct vertices"):
            parse("3 3 1\n0 1\n")

    def test_out_of_range_rejected(self):
        with pytest.raises(ParseError, match="out of range"):
            parse("3 3 1\n0 1 5\n")

    def test_wrong_edge_count_rejected(self):
        with pytest.raises(ParseError, match="edge lines"):
            parse("3 3 2\n0 1 2\n")
