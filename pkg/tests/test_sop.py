import numpy as np
import pytest
from hypothesis import given, settings

from readk.errors import BudgetExceeded
from readk.formula import Const, make_nonredundant, normalize_tree, parse_formula
from readk.graphs import Graph, chain_graph, complete_bipartite, grid_graph
from readk.sop import (
    SopForm, csop, equivalent, extension_violations, graph_of_function,
    is_extension_of_chain, is_normal, phi_of_graph, sop,
)
from readk.truthtable import minimal_true_points, truth_table, variable_order

from .helpers import formulas

EXT3 = "x1*(y1+y2+y3)+y3*(x2+x3)+x2*y2+x1*x2*x3+y1*y3"
PSI3 = "x1*(y1+y2+y3)+y3*(x2+x3)+x2*y2+x2*y1*(x2+y3)"
TRIANGLE = Graph.from_edges([("a1", "a2"), ("a2", "a3"), ("a1", "a3")])


def terms(*words):
    return frozenset(frozenset(w.split("*")) for w in words)


@pytest.mark.parametrize("src,want", [
    ("a1*(a1+a2)", terms("a1", "a1*a2")),
    ("a1+a2", terms("a1", "a2")),
    ("(a1+a2)*(a3+a4)", terms("a1*a3", "a1*a4", "a2*a3", "a2*a4")),
])
def test_csop(src, want):
    assert csop(parse_formula(src)) == want


@pytest.mark.parametrize("src,want", [
    ("a1*(a1+a2)", terms("a1")),
    ("a1*a2*a3", terms("a1*a2*a3")),
    (EXT3, terms("x1*y1", "x1*y2", "x1*y3", "x2*y2", "x2*y3", "x3*y3", "x1*x2*x3", "y1*y3")),
])
def test_sop(src, want):
    assert sop(parse_formula(src)).terms == want


def test_sop_text_and_json():
    s = sop(parse_formula(EXT3))
    assert s.to_text() == "x1*x2*x3 + x1*y1 + x1*y2 + x1*y3 + x2*y2 + x2*y3 + x3*y3 + y1*y3"
    assert SopForm.from_json(s.to_json()) == s
    assert SopForm.from_text(s.to_text()) == s
    assert str(SopForm(frozenset())) == "0"


def test_sopform_rejects_non_antichain():
    with pytest.raises(ValueError):
        SopForm(terms("a", "a*b"))
    assert SopForm.from_terms([["a"], ["a", "b"]]).terms == terms("a")


def test_constants_rejected():
    with pytest.raises(ValueError):
        sop(Const(True))


def test_budget():
    f = parse_formula("*".join(f"(a{i}+b{i})" for i in range(1, 12)))
    with pytest.raises(BudgetExceeded):
        sop(f, budget=1000)
    with pytest.raises(BudgetExceeded):
        csop(f, budget=1000)


@pytest.mark.parametrize("f,g,want", [
    ("(a1+a2)*(a1+a3)", "a1+a2*a3", True),
    ("a1", "a2", False),
    ("(a1+a2)*(b1+b2)", "a1*b1+a1*b2+a2*b1+a2*b2", True),
])
def test_equivalent(f, g, want):
    assert equivalent(parse_formula(f), parse_formula(g)) is want


def test_graph_of_function():
    tri = graph_of_function(terms("a1*a2*a3"))
    assert tri.edges == TRIANGLE.edges
    assert graph_of_function(terms("a1*a2", "a2*a3", "a1*a3")).edges == TRIANGLE.edges
    single = graph_of_function(terms("a1"))
    assert single.vertices == ("a1",) and not single.edges


def test_phi_of_graph():
    assert phi_of_graph(TRIANGLE).terms == terms("a1*a2*a3")
    assert phi_of_graph(chain_graph(2)).terms == terms("x1*y1", "x1*y2", "x2*y2")
    assert phi_of_graph(Graph.from_edges([], ["a1"])).terms == terms("a1")


def test_is_normal():
    assert is_normal(terms("a1*a2*a3"))
    assert not is_normal(terms("a1*a2", "a2*a3", "a1*a3"))
    for g in (chain_graph(4), grid_graph(2, 3), complete_bipartite(2, 3)):
        assert is_normal(phi_of_graph(g))


@pytest.mark.parametrize("n", range(1, 9))
def test_trivial_extension(n):
    assert is_extension_of_chain(phi_of_graph(chain_graph(n)), n)


def test_extension_examples():
    assert is_extension_of_chain(parse_formula(EXT3), 3)
    bad = extension_violations(parse_formula(PSI3), 3)
    assert ("extra", frozenset({"x2", "y1"})) in bad
    assert is_extension_of_chain(parse_formula("x1*y1"), 1)
    assert extension_violations(parse_formula("x1*(y1+y2)"), 2) == [("missing", frozenset({"x2", "y2"}))]
    with pytest.raises(ValueError):
        extension_violations(parse_formula("x1*w1"), 1)


@given(formulas(max_vars=9, max_leaves=16))
@settings(max_examples=200)
def test_sop_is_minimal_true_points(f):
    f = normalize_tree(f)
    if isinstance(f, Const):
        return
    names = variable_order(f)
    assert sop(f).terms == minimal_true_points(truth_table(f, names), names)


@given(formulas(max_vars=6, max_leaves=14))
def test_sop_invariant_under_rewrites(f):
    f = normalize_tree(f)
    if isinstance(f, Const):
        return
    assert sop(make_nonredundant(f)) == sop(f)
    s = sop(f)
    for t in s.terms:
        assert not any(u < t for u in s.terms)


@given(formulas(max_vars=6, max_leaves=12))
def test_terms_sit_inside_cliques(f):
    f = normalize_tree(f)
    if isinstance(f, Const):
        return
    s = sop(f)
    cliques = phi_of_graph(graph_of_function(s)).terms
    assert all(any(t <= c for c in cliques) for t in s.terms)


def test_minimal_true_points_small():
    f = parse_formula("a*(a+b)+b*c")
    names = ("a", "b", "c")
    table = truth_table(f, names)
    assert table.dtype == np.bool_ and table.shape == (8,)
    assert minimal_true_points(table, names) == terms("a", "b*c")
