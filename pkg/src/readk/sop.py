"""Sum-of-products forms of monotone formulas.

``csop`` is the full distributive expansion (idempotency applied inside
each product, nothing absorbed); ``sop`` keeps only the minimal terms,
which are the minterms of the function and so identify it uniquely.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import BudgetExceeded
from .formula import Const, Formula, Sum, Var, natural_key, parse_formula
from .graphs import Graph, maximal_cliques

Term = frozenset  # frozenset[str]

DEFAULT_TERM_BUDGET = 1 << 20


def term_key(t: Term) -> tuple:
    return tuple(natural_key(v) for v in sorted(t, key=natural_key))


def absorb(terms: Iterable[Term]) -> frozenset[Term]:
    """Drop every term that contains another term."""
    kept: list[Term] = []
    for t in sorted(set(terms), key=len):
        if not any(k <= t for k in kept):
            kept.append(t)
    return frozenset(kept)


@dataclass(frozen=True)
class SopForm:
    """An antichain of nonempty terms; the empty form is constant false."""

    terms: frozenset[Term]

    def __post_init__(self):
        terms = frozenset(frozenset(t) for t in self.terms)
        if any(not t for t in terms):
            raise ValueError("terms must be nonempty")
        for a in terms:
            for b in terms:
                if a < b:
                    raise ValueError(f"term {format_term(b)} is absorbed by {format_term(a)}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_terms(cls, terms: Iterable[Iterable[str]]) -> "SopForm":
        """Build from arbitrary terms, applying absorption."""
        return cls(absorb(frozenset(t) for t in terms))

    def __iter__(self) -> Iterator[Term]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, t) -> bool:
        return frozenset(t) in self.terms

    @property
    def variables(self) -> frozenset[str]:
        return frozenset().union(*self.terms)

    def sorted_terms(self) -> list[Term]:
        return sorted(self.terms, key=term_key)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(format_term(t) for t in self.sorted_terms())

    def to_json(self) -> list[list[str]]:
        return [sorted(t, key=natural_key) for t in self.sorted_terms()]

    @classmethod
    def from_json(cls, doc) -> "SopForm":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(frozenset(frozenset(t) for t in doc))

    @classmethod
    def from_text(cls, text: str) -> "SopForm":
        """Read ``a*b + c``-style text; the terms must already be an antichain."""
        if text.strip() == "0":
            return cls(frozenset())
        return cls(csop(parse_formula(text)))

    def __str__(self) -> str:
        return self.to_text()


def format_term(t: Iterable[str]) -> str:
    return "*".join(sorted(t, key=natural_key))


def _check_constant_free(f: Formula) -> None:
    if isinstance(f, Const):
        raise ValueError("constant formulas have no sum of products here")


def csop(f: Formula, budget: int = DEFAULT_TERM_BUDGET) -> frozenset[Term]:
    """Complete sum of products: the distributive expansion of `f`."""
    _check_constant_free(f)

    def expand(g: Formula) -> frozenset[Term]:
        if isinstance(g, Var):
            return frozenset([frozenset([g.name])])
        parts = [expand(c) for c in g.children]
        if isinstance(g, Sum):
            out = frozenset().union(*parts)
        else:
            acc = {frozenset()}
            for p in parts:
                if len(acc) * len(p) > budget:
                    raise BudgetExceeded(f"expansion exceeds {budget} terms")
                acc = {a | b for a in acc for b in p}
            out = frozenset(acc)
        if len(out) > budget:
            raise BudgetExceeded(f"expansion exceeds {budget} terms")
        return out

    return expand(f)


def sop(f: Formula, budget: int = DEFAULT_TERM_BUDGET) -> SopForm:
    """Minterms of `f`, obtained by expansion plus absorption.

    Absorption is applied at every node, which gives the same antichain as
    absorbing the full :func:`csop` but keeps intermediate sets small.
    """
    _check_constant_free(f)

    def expand(g: Formula) -> frozenset[Term]:
        if isinstance(g, Var):
            return frozenset([frozenset([g.name])])
        parts = [expand(c) for c in g.children]
        if isinstance(g, Sum):
            return absorb(frozenset().union(*parts))
        acc = frozenset([frozenset()])
        for p in parts:
            if len(acc) * len(p) > budget:
                raise BudgetExceeded(f"expansion exceeds {budget} terms")
            acc = absorb(a | b for a in acc for b in p)
        return acc

    return SopForm(expand(f))


def equivalent(f: Formula, g: Formula, budget: int = DEFAULT_TERM_BUDGET) -> bool:
    return sop(f, budget) == sop(g, budget)


def as_sop(x) -> SopForm:
    if isinstance(x, SopForm):
        return x
    if isinstance(x, Formula):
        return sop(x)
    if isinstance(x, str):
        return sop(parse_formula(x))
    return SopForm.from_terms(x)


def graph_of_function(s) -> Graph:
    """Co-occurrence graph: variables adjacent iff they share a minterm."""
    s = as_sop(s)
    edges = set()
    for t in s.terms:
        for u in t:
            for v in t:
                if u != v:
                    edges.add(frozenset((u, v)))
    return Graph(tuple(s.variables), frozenset(edges))


def phi_of_graph(g: Graph) -> SopForm:
    """The function whose minterms are the maximal cliques of `g`."""
    return SopForm(frozenset(maximal_cliques(g)))


def is_normal(s) -> bool:
    s = as_sop(s)
    return s == phi_of_graph(graph_of_function(s))


# --------------------------------------------------------------------------
# extensions of chain graphs


def chain_edges(n: int) -> set[Term]:
    return {frozenset((f"x{i}", f"y{j}")) for i in range(1, n + 1) for j in range(i, n + 1)}


def extension_violations(f, n: int) -> list[tuple[str, Term]]:
    """Reasons `f` fails to extend the chain graph on ``2n`` vertices.

    Each item is ``("missing", edge)`` or ``("extra", term)``; an empty
    list means `f` is an extension.
    """
    s = as_sop(f)
    xs = {f"x{i}" for i in range(1, n + 1)}
    ys = {f"y{j}" for j in range(1, n + 1)}
    stray = s.variables - xs - ys
    if stray:
        raise ValueError(f"variables {sorted(stray, key=natural_key)} are not chain vertices for n={n}")
    edges = chain_edges(n)
    out: list[tuple[str, Term]] = [("missing", e) for e in sorted(edges - s.terms, key=term_key)]
    for t in s.sorted_terms():
        if t in edges:
            continue
        pure = t <= xs or t <= ys
        if not (pure and len(t) >= 2):
            out.append(("extra", t))
    return out


def is_extension_of_chain(f, n: int) -> bool:
    """SOP is all chain edges plus optional pure-x / pure-y products of size >= 2."""
    return not extension_violations(f, n)
