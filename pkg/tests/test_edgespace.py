import random
from fractions import Fraction as F

import pytest

from nbwalks import (
    Polynomial,
    build_edge_space,
    build_unweighted,
    non_k_cycling,
    perron_radius,
    v_similar,
    weighted_hashimoto,
)
from nbwalks.errors import WeightedUnsupportedError

from helpers import (
    bowtie,
    complete_undirected,
    directed_cycle,
    example1,
    random_digraph,
    single_recip_edge,
    two_squares,
    weighted_3cycle,
)


class TestBuildEdgeSpace:
    def test_single_reciprocal_edge(self):
        es = build_edge_space(single_recip_edge())
        assert es.m == 2
        assert es.unreciprocated_count == 0
        assert es.reciprocal_pair_count == 1
        assert es.hashimoto.is_zero()

    def test_directed_3cycle_is_permutation(self):
        es = build_edge_space(directed_cycle(3))
        assert es.m == 3
        # exactly one continuation per edge, no backtracks possible
        assert [sum(row) for row in es.hashimoto.data] == [1, 1, 1]
        assert es.backtrack.is_zero()

    def test_example1_counts_and_factorization(self):
        g = example1()
        es = build_edge_space(g)
        assert (es.m, es.unreciprocated_count, es.reciprocal_pair_count) == (5, 3, 1)
        assert es.source.transpose() * es.target == g.adjacency()
        assert es.source.transpose() * es.weight_diag * es.target == g.adjacency()

    def test_incidence_rows_are_unit(self):
        es = build_edge_space(example1())
        for mat in (es.source, es.target):
            for row in mat.data:
                assert sum(row) == 1 and all(x in (0, 1) for x in row)

    def test_m_equals_a_plus_2b(self):
        rng = random.Random(3)
        for _ in range(30):
            g = random_digraph(rng, rng.randint(2, 6), rng.choice([0.3, 0.6]))
            es = build_edge_space(g)
            assert es.m == es.unreciprocated_count + 2 * es.reciprocal_pair_count

    def test_reciprocal_mask_is_backtrack_squared(self):
        rng = random.Random(9)
        for _ in range(20):
            g = random_digraph(rng, rng.randint(2, 5), 0.5)
            es = build_edge_space(g)
            assert es.backtrack * es.backtrack == es.reciprocal_mask
            for e in range(es.m):
                for f in range(es.m):
                    if e != f:
                        assert es.reciprocal_mask.data[e][f] == 0

    def test_line_graph_compression_to_a_squared(self):
        rng = random.Random(13)
        for _ in range(20):
            g = random_digraph(rng, rng.randint(2, 5), 0.5)
            es = build_edge_space(g)
            lt = es.source.transpose()
            assert lt * es.line_graph * es.target == g.adjacency() * g.adjacency()

    def test_empty_graph(self):
        es = build_edge_space(build_unweighted([], vertices=[1, 2]))
        assert es.m == 0 and es.hashimoto.nrows == 0


class TestWeightedMatrices:
    def test_unit_weights_reduce_to_hashimoto(self):
        es = build_edge_space(example1())
        assert weighted_hashimoto(es) == es.hashimoto
        assert v_similar(es) == es.hashimoto

    def test_weighted_3cycle_entries(self):
        es = build_edge_space(weighted_3cycle())
        wh = weighted_hashimoto(es)
        entries = sorted(x for row in wh.data for x in row if x)
        assert entries == [6, 10, 15]

    def test_single_reciprocal_any_weights(self):
        es = build_edge_space(single_recip_edge(F(7, 2), F(5, 3)))
        assert weighted_hashimoto(es).is_zero()
        assert v_similar(es).is_zero()

    def test_v_similar_spectrum(self):
        es = build_edge_space(weighted_3cycle())
        cp = Polynomial(v_similar(es).char_poly())
        assert cp == Polynomial([-30, 0, 0, 1])

    def test_v_similar_zero_without_continuations(self):
        g = build_unweighted([(1, 2)])
        es = build_edge_space(g)
        assert es.reciprocal_pair_count == 0
        assert v_similar(es).is_zero()


class TestNonKCycling:
    def test_k1_is_adjacency(self):
        g = example1()
        nk = non_k_cycling(g, 1)
        assert nk.matrix == g.adjacency()
        assert nk.paths == tuple((v,) for v in range(g.n))

    def test_k2_matches_hashimoto(self):
        for g in (example1(), directed_cycle(3), bowtie(), complete_undirected(4)):
            es = build_edge_space(g)
            nk = non_k_cycling(g, 2)
            assert nk.matrix == es.hashimoto
            assert nk.paths == tuple((u, v) for u, v, _ in g.edges)

    def test_directed_3cycle_k3_zero(self):
        nk = non_k_cycling(directed_cycle(3), 3)
        assert nk.matrix.nrows == 3
        assert nk.matrix.is_zero()

    def test_k4_rowsums(self):
        nk = non_k_cycling(complete_undirected(4), 2)
        assert nk.matrix.nrows == 12
        assert all(sum(row) == 2 for row in nk.matrix.data)

    def test_k_above_order_empty(self):
        nk = non_k_cycling(directed_cycle(3), 4)
        assert nk.matrix.nrows == 0 and nk.paths == ()

    def test_weighted_rejected(self):
        with pytest.raises(WeightedUnsupportedError):
            non_k_cycling(weighted_3cycle(), 2)


class TestSpectralGapTheorem:
    """Strongly connected graphs with two long-enough distinct-vertex cycles
    push the non-k-cycling radius above one."""

    def test_two_triangles_k2(self):
        nk = non_k_cycling(bowtie(), 2)
        pr = perron_radius(nk.matrix)
        assert pr.lower > 1

    def test_two_squares_k3(self):
        nk = non_k_cycling(two_squares(), 3)
        pr = perron_radius(nk.matrix)
        assert pr.lower > 1
