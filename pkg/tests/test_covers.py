import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from readk.covers import (
    BicliqueCover, CoverSearchStats, chain_cover_recursive, cover_to_formula,
    double_factorial_odd, extend_cover_to_duplicate, grid_chessboard_cover,
    local_cover_number, merge_shared_sides, min_local_cover_decide, r_lower_bound,
    r_upper_bound, validate_cover,
)
from readk.errors import BudgetExceeded
from readk.formula import occurrences, parse_formula
from readk.graphs import (
    Graph, chain_graph, complete_bipartite, duplicate_vertex, grid_graph,
)
from readk.sop import equivalent, phi_of_graph, sop

G3_COVER = BicliqueCover(((["x1"], ["y1"]), (["x1", "x2"], ["y2", "y3"]), (["x3"], ["y3"])))


def test_validate_examples():
    ok, m = validate_cover(chain_graph(3), G3_COVER)
    assert (ok, m) == (True, 2)
    assert G3_COVER.profile["x1"] == 2 and G3_COVER.profile["y3"] == 2
    k22 = BicliqueCover(((["a1", "a2"], ["b1", "b2"]),))
    assert validate_cover(complete_bipartite(2, 2), k22) == (True, 1)
    ok, _ = validate_cover(chain_graph(2), BicliqueCover(((["x1", "x2"], ["y1", "y2"]),)))
    assert not ok


def test_validate_incomplete_and_unknown():
    assert not validate_cover(chain_graph(2), BicliqueCover(((["x1"], ["y1", "y2"]),)))[0]
    with pytest.raises(ValueError):
        validate_cover(chain_graph(1), BicliqueCover(((["x1"], ["y9"]),)))


@pytest.mark.parametrize("bad", [((), ("b",)), (("a",), ("a",))])
def test_biclique_shape(bad):
    with pytest.raises(ValueError):
        BicliqueCover((bad,))


def test_json_roundtrip():
    doc = G3_COVER.to_json()
    assert doc[1] == {"left": ["x1", "x2"], "right": ["y2", "y3"]}
    assert BicliqueCover.from_json(doc) == G3_COVER


def test_chain_recursive_examples():
    one = chain_cover_recursive(1)
    assert len(one) == 1 and validate_cover(chain_graph(1), one) == (True, 1)
    assert validate_cover(chain_graph(2), chain_cover_recursive(2)) == (True, 2)
    assert validate_cover(chain_graph(3), chain_cover_recursive(3)) == (True, 2)
    ok, m = validate_cover(chain_graph(64), chain_cover_recursive(64))
    assert ok and m <= 7


@pytest.mark.parametrize("n", range(1, 65))
def test_chain_recursive_bound(n):
    ok, m = validate_cover(chain_graph(n), chain_cover_recursive(n))
    assert ok and m <= r_upper_bound(n)


def test_merge_shared_sides():
    c = BicliqueCover(((["x1"], ["y1"]), (["x1"], ["y2"]), (["x2"], ["y2"])))
    merged = merge_shared_sides(c)
    assert len(merged) == 2 and merged.multiplicity == 2
    assert merged.edges() == c.edges()


def test_chessboard_examples():
    one = grid_chessboard_cover(1, 1)
    assert len(one) == 1 and validate_cover(grid_graph(1, 1), one) == (True, 1)
    two = grid_chessboard_cover(2, 2)
    assert len(two.edges()) == 12
    assert validate_cover(grid_graph(2, 2), two) == (True, 2)


@pytest.mark.parametrize("rows,cols", list(itertools.product(range(1, 6), repeat=2)))
def test_chessboard_grids(rows, cols):
    g = grid_graph(rows, cols)
    c = grid_chessboard_cover(rows, cols)
    ok, m = validate_cover(g, c)
    assert ok and m <= 2
    f = cover_to_formula(c)
    assert sop(f) == phi_of_graph(g)
    assert occurrences(f).read_index == m


def test_cover_to_formula_examples():
    k = BicliqueCover(((["a1", "a2", "a3"], ["b1", "b2"]),))
    f = cover_to_formula(k)
    assert f == parse_formula("(a1+a2+a3)*(b1+b2)")
    assert occurrences(f).read_index == 1
    f3 = cover_to_formula(G3_COVER)
    assert f3 == parse_formula("x1*y1+(x1+x2)*(y2+y3)+x3*y3")
    assert occurrences(f3).read_index == 2
    assert equivalent(f3, parse_formula(phi_of_graph(chain_graph(3)).to_text()))
    assert cover_to_formula(BicliqueCover(((["x1"], ["y1"]),))) == parse_formula("x1*y1")


def test_extend_to_duplicate():
    d = extend_cover_to_duplicate(G3_COVER, "x1", "x1d")
    assert validate_cover(duplicate_vertex(chain_graph(3), "x1", "x1d"), d) == (True, 2)
    assert d.profile["x1d"] == 2
    d = extend_cover_to_duplicate(G3_COVER, "x3", "x3d")
    assert d.multiplicity == 2
    k = BicliqueCover(((["a1", "a2"], ["b1", "b2"]),))
    dk = extend_cover_to_duplicate(k, "a1", "a3")
    assert validate_cover(duplicate_vertex(complete_bipartite(2, 2), "a1", "a3"), dk) == (True, 1)


@given(st.integers(1, 10), st.data())
def test_duplicate_keeps_multiplicity(n, data):
    g = chain_graph(n)
    c = chain_cover_recursive(n)
    v = data.draw(st.sampled_from(g.vertices))
    ok, m = validate_cover(duplicate_vertex(g, v, "w"), extend_cover_to_duplicate(c, v, "w"))
    assert ok and m == c.multiplicity


def test_decide_examples():
    assert min_local_cover_decide(chain_graph(2), 1) is None
    c = min_local_cover_decide(chain_graph(2), 2)
    assert validate_cover(chain_graph(2), c) == (True, 2)
    c = min_local_cover_decide(chain_graph(3), 2)
    assert validate_cover(chain_graph(3), c)[0] and c.multiplicity <= 2


def test_decide_budget_is_unknown():
    with pytest.raises(BudgetExceeded):
        min_local_cover_decide(chain_graph(6), 2, max_nodes=5)


def test_decide_stats_and_errors():
    stats = CoverSearchStats()
    min_local_cover_decide(chain_graph(3), 1, stats=stats)
    assert stats.nodes > 0
    tri = Graph.from_edges([("a", "b"), ("b", "c"), ("a", "c")])
    with pytest.raises(ValueError):
        min_local_cover_decide(tri, 2)
    assert min_local_cover_decide(Graph.from_edges([], ["a"]), 0) == BicliqueCover(())


def test_local_cover_number_small():
    assert [local_cover_number(chain_graph(n)) for n in range(1, 6)] == [1, 2, 2, 2, 2]
    assert local_cover_number(complete_bipartite(3, 2)) == 1
    assert local_cover_number(grid_graph(2, 2)) == 2


@pytest.mark.parametrize("n,want", [(1, 1), (64, 7), (3, 3), (2, 2), (5, 4)])
def test_r_upper(n, want):
    assert r_upper_bound(n) == want


@pytest.mark.parametrize("n,want", [(3, 2), (15, 3), (14, 2), (1, 1), (105, 4), (104, 3)])
def test_r_lower(n, want):
    assert r_lower_bound(n) == want


def test_double_factorial():
    assert [double_factorial_odd(k) for k in range(0, 5)] == [1, 1, 3, 15, 105]
    with pytest.raises(ValueError):
        r_lower_bound(0)
