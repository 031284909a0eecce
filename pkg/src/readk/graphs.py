"""Simple graphs over named vertices: constructors and predicates.

Vertex names share the formula variable namespace, so a graph's vertices
can be read directly as formula variables.  Bipartite constructors tag the
two colour classes as ``x_side`` and ``y_side``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .formula import _NAME_RE, natural_key


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]
    x_side: tuple[str, ...] | None = None
    y_side: tuple[str, ...] | None = None

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices), key=natural_key))
        for v in verts:
            if not isinstance(v, str) or not _NAME_RE.fullmatch(v):
                raise ValueError(f"invalid vertex name {v!r}")
        edges = frozenset(frozenset(e) for e in self.edges)
        vs = set(verts)
        for e in edges:
            if len(e) != 2:
                raise ValueError(f"not a simple edge: {sorted(e)}")
            if not e <= vs:
                raise ValueError(f"edge {sorted(e, key=natural_key)} references an unknown vertex")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        if (self.x_side is None) != (self.y_side is None):
            raise ValueError("x_side and y_side must be given together")
        if self.x_side is not None:
            xs = tuple(sorted(set(self.x_side), key=natural_key))
            ys = tuple(sorted(set(self.y_side), key=natural_key))
            if set(xs) & set(ys) or set(xs) | set(ys) != vs:
                raise ValueError("x_side and y_side must partition the vertices")
            for e in edges:
                if len(e & set(xs)) != 1:
                    raise ValueError(f"edge {sorted(e)} is not across the bipartition")
            object.__setattr__(self, "x_side", xs)
            object.__setattr__(self, "y_side", ys)

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[str]], vertices: Iterable[str] = (),
                   x_side=None, y_side=None) -> "Graph":
        edges = [tuple(e) for e in edges]
        verts = set(vertices)
        for e in edges:
            verts.update(e)
        return cls(tuple(verts), frozenset(frozenset(e) for e in edges), x_side, y_side)

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(n) for v, n in adj.items()}

    def neighbors(self, v: str) -> frozenset[str]:
        return self.adjacency[v]

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    @property
    def is_bipartite_tagged(self) -> bool:
        return self.x_side is not None

    def sorted_edges(self) -> list[tuple[str, str]]:
        out = []
        for e in self.edges:
            u, v = sorted(e, key=natural_key)
            if self.x_side is not None and v in self.x_side:
                u, v = v, u
            out.append((u, v))
        return sorted(out, key=lambda p: (natural_key(p[0]), natural_key(p[1])))

    def to_json(self) -> dict:
        doc = {"vertices": list(self.vertices), "edges": [list(e) for e in self.sorted_edges()]}
        if self.x_side is not None:
            doc["x_side"] = list(self.x_side)
            doc["y_side"] = list(self.y_side)
        return doc

    @classmethod
    def from_json(cls, doc: dict | str) -> "Graph":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls.from_edges(doc.get("edges", []), doc.get("vertices", []),
                              doc.get("x_side"), doc.get("y_side"))


# --------------------------------------------------------------------------
# constructors


def chain_graph(n: int) -> Graph:
    """The chain graph with edges ``x_i y_j`` for ``i <= j``."""
    if n < 1:
        raise ValueError("chain_graph needs n >= 1")
    xs = [f"x{i}" for i in range(1, n + 1)]
    ys = [f"y{j}" for j in range(1, n + 1)]
    edges = [(xs[i], ys[j]) for i in range(n) for j in range(i, n)]
    return Graph.from_edges(edges, xs + ys, xs, ys)


def complete_bipartite(m: int, n: int) -> Graph:
    if m < 1 or n < 1:
        raise ValueError("complete_bipartite needs positive part sizes")
    a = [f"a{i}" for i in range(1, m + 1)]
    b = [f"b{j}" for j in range(1, n + 1)]
    return Graph.from_edges(itertools.product(a, b), a + b, a, b)


def grid_vertex(r: int, c: int) -> str:
    return f"g{r}_{c}"


def grid_graph(rows: int, cols: int) -> Graph:
    """Rectangular lattice with `rows` x `cols` unit squares.

    The vertex grid is ``(rows+1) x (cols+1)``; vertex ``g{r}_{c}`` is on
    the x side when ``r + c`` is even.
    """
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be positive")
    verts = [(r, c) for r in range(rows + 1) for c in range(cols + 1)]
    edges = []
    for r, c in verts:
        if r < rows:
            edges.append((grid_vertex(r, c), grid_vertex(r + 1, c)))
        if c < cols:
            edges.append((grid_vertex(r, c), grid_vertex(r, c + 1)))
    xs = [grid_vertex(r, c) for r, c in verts if (r + c) % 2 == 0]
    ys = [grid_vertex(r, c) for r, c in verts if (r + c) % 2 == 1]
    return Graph.from_edges(edges, xs + ys, xs, ys)


def duplicate_vertex(g: Graph, v: str, new: str) -> Graph:
    """Add `new` with exactly the neighbourhood of `v` (not adjacent to `v`)."""
    if v not in g.adjacency:
        raise ValueError(f"unknown vertex {v!r}")
    if new in g.adjacency:
        raise ValueError(f"vertex {new!r} already exists")
    edges = set(g.edges) | {frozenset((new, u)) for u in g.neighbors(v)}
    xs = ys = None
    if g.x_side is not None:
        xs, ys = list(g.x_side), list(g.y_side)
        (xs if v in xs else ys).append(new)
    return Graph(g.vertices + (new,), frozenset(edges), xs, ys)


# --------------------------------------------------------------------------
# predicates


def is_triangle_free(g: Graph) -> bool:
    adj = g.adjacency
    for e in g.edges:
        u, v = tuple(e)
        if adj[u] & adj[v]:
            return False
    return True


def is_bipartite(g: Graph) -> bool:
    colour: dict[str, int] = {}
    for s in g.vertices:
        if s in colour:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    stack.append(w)
                elif colour[w] == colour[u]:
                    return False
    return True


def induced_p4s(g: Graph) -> Iterator[tuple[str, ...]]:
    """Vertex quartets inducing a path on four vertices."""
    for quad in itertools.combinations(g.vertices, 4):
        degs = sorted(sum(g.has_edge(u, w) for w in quad if w != u) for u in quad)
        # with three edges, degrees (1,1,2,2) rule out the star and the triangle
        if degs == [1, 1, 2, 2]:
            yield quad


def is_cograph(g: Graph) -> bool:
    """True iff `g` has no induced P4 (exhaustive quartet scan)."""
    return next(induced_p4s(g), None) is None


def maximal_cliques(g: Graph) -> list[frozenset[str]]:
    """All maximal cliques, isolated vertices included as singletons.

    Bron-Kerbosch with pivoting; triangle-free graphs take a shortcut
    (their maximal cliques are the edges and the isolated vertices).
    """
    adj = g.adjacency
    if is_triangle_free(g):
        return [frozenset(e) for e in g.edges] + [frozenset([v]) for v in g.vertices if not adj[v]]
    out: list[frozenset[str]] = []

    def expand(r: set[str], p: set[str], x: set[str]) -> None:
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in list(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p.discard(v)
            x.add(v)

    expand(set(), set(g.vertices), set())
    return out


def read1_check(s) -> bool:
    """Read-once test for a monotone function given by its minterms:
    normal, with a P4-free co-occurrence graph."""
    from .sop import graph_of_function, is_normal

    return is_normal(s) and is_cograph(graph_of_function(s))
