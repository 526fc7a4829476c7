import pytest

from services.coloring import chromatic_index, even_2_factor_exists, find_3_edge_coloring, search_order
from services.fs_family import build
from services.matchings import matching_from_serials
from services.graph_core import cube, inflate_vertex, k33, petersen
from utils.classification import chromatic_index_closed


def assert_proper(graph, coloring):
    assert len(coloring.colors) == len(graph.edges)
    for v in graph.vertices:
        assert sorted(coloring.colors[s] for s in graph.incidence[v]) == [0, 1, 2]


class TestSearchOrder:
    def test_is_a_permutation_starting_at_first_vertex(self):
        g = build(2, 5).graph
        order = search_order(g)
        assert sorted(order) == list(range(len(g.edges)))
        assert order[:3] == list(g.incidence[g.vertices[0]])

    def test_each_edge_touches_earlier_ones(self):
        g = build(1, 6).graph
        order = search_order(g)
        reached = set(g.edges[order[0]].endpoints)
        for s in order[1:]:
            e = g.edges[s]
            assert e.u in reached or e.v in reached
            reached.update(e.endpoints)


class TestFixtures:
    def test_petersen_is_class_two(self):
        assert find_3_edge_coloring(petersen()) is None
        assert chromatic_index(petersen()) == 4

    @pytest.mark.parametrize("graph", [k33(), cube()])
    def test_class_one(self, graph):
        coloring = find_3_edge_coloring(graph)
        assert coloring is not None
        assert_proper(graph, coloring)

    def test_inflation_keeps_class_two(self):
        assert chromatic_index(inflate_vertex(petersen(), 0)) == 4


class TestFamily:
    @pytest.mark.parametrize("k", range(2, 8))
    @pytest.mark.parametrize("j", [1, 2, 3])
    def test_matches_closed_form(self, j, k):
        fs = build(j, k)
        assert chromatic_index(fs) == chromatic_index_closed(j, k)

    @pytest.mark.parametrize("j,k", [(1, 3), (1, 4), (2, 4), (3, 5), (2, 2), (3, 2)])
    def test_colouring_is_proper(self, j, k):
        fs = build(j, k)
        coloring = find_3_edge_coloring(fs)
        assert_proper(fs.graph, coloring)
        classes = coloring.classes()
        assert [len(c) for c in classes] == [2 * k] * 3
        for serials in classes:
            matching_from_serials(fs, serials)

    def test_first_vertex_fixed(self):
        fs = build(1, 4)
        coloring = find_3_edge_coloring(fs)
        assert [coloring.colors[s] for s in fs.graph.incidence[fs.graph.vertices[0]]] == [0, 1, 2]

    @pytest.mark.parametrize("j,k,expected", [(2, 3, False), (2, 5, False), (1, 4, True), (3, 3, True), (2, 4, True)])
    def test_even_two_factor_iff_class_one(self, j, k, expected):
        assert even_2_factor_exists(build(j, k)) == expected
        assert (chromatic_index(build(j, k)) == 3) == expected

    @pytest.mark.slow
    @pytest.mark.parametrize("k", range(2, 10))
    @pytest.mark.parametrize("j", [1, 2, 3])
    def test_colouring_agrees_with_even_two_factor(self, j, k):
        fs = build(j, k)
        coloring = find_3_edge_coloring(fs)
        assert (coloring is not None) == even_2_factor_exists(fs)
        if coloring is None:
            return
        assert_proper(fs.graph, coloring)
        for serials in coloring.classes():
            assert matching_from_serials(fs, serials).serials == tuple(serials)

    @pytest.mark.slow
    @pytest.mark.parametrize("k", [8, 9])
    @pytest.mark.parametrize("j", [1, 2, 3])
    def test_matches_closed_form_larger(self, j, k):
        assert chromatic_index(build(j, k)) == chromatic_index_closed(j, k)
