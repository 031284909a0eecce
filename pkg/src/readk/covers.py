"""Biclique edge covers with bounded per-vertex multiplicity.

A cover of a graph is a list of complete bipartite subgraphs whose edges
together are exactly the graph's edges.  Its multiplicity is the largest
number of bicliques sharing one vertex.  Compiling a cover gives a
formula whose read index equals that multiplicity, so covers give
constructive upper bounds on readability.
"""
from __future__ import annotations

import itertools
import json
import math
import time
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import BudgetExceeded
from .formula import Formula, Prod, Sum, Var, natural_key, normalize_tree
from .graphs import Graph, grid_vertex, is_bipartite


class Biclique(NamedTuple):
    left: frozenset[str]
    right: frozenset[str]

    def edges(self) -> set[frozenset[str]]:
        return {frozenset((u, v)) for u in self.left for v in self.right}

    @property
    def vertices(self) -> frozenset[str]:
        return self.left | self.right

    def to_json(self) -> dict:
        return {"left": sorted(self.left, key=natural_key),
                "right": sorted(self.right, key=natural_key)}


def _biclique(left: Iterable[str], right: Iterable[str]) -> Biclique:
    b = Biclique(frozenset(left), frozenset(right))
    if not b.left or not b.right:
        raise ValueError("biclique sides must be nonempty")
    if b.left & b.right:
        raise ValueError("biclique sides must be disjoint")
    return b


@dataclass(frozen=True)
class BicliqueCover:
    bicliques: tuple[Biclique, ...]

    def __post_init__(self):
        object.__setattr__(self, "bicliques",
                           tuple(_biclique(b[0], b[1]) for b in self.bicliques))

    def __len__(self) -> int:
        return len(self.bicliques)

    def __iter__(self):
        return iter(self.bicliques)

    @property
    def profile(self) -> Counter:
        """Number of bicliques containing each vertex."""
        return Counter(v for b in self.bicliques for v in b.vertices)

    @property
    def multiplicity(self) -> int:
        return max(self.profile.values(), default=0)

    @property
    def vertices(self) -> frozenset[str]:
        return frozenset().union(*(b.vertices for b in self.bicliques))

    def edges(self) -> set[frozenset[str]]:
        return set().union(*(b.edges() for b in self.bicliques))

    def to_json(self) -> list[dict]:
        return [b.to_json() for b in self.bicliques]

    @classmethod
    def from_json(cls, doc) -> "BicliqueCover":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(tuple((b["left"], b["right"]) for b in doc))


def validate_cover(g: Graph, c: BicliqueCover) -> tuple[bool, int]:
    """Check that `c` spans only edges of `g` and covers all of them.

    Returns ``(valid, multiplicity)``.  Raises ValueError if a biclique
    mentions a vertex that is not in `g`.
    """
    unknown = c.vertices - set(g.vertices)
    if unknown:
        raise ValueError(f"cover references unknown vertices {sorted(unknown, key=natural_key)}")
    covered = set()
    ok = True
    for b in c.bicliques:
        e = b.edges()
        if not e <= g.edges:
            ok = False
        covered |= e
    ok = ok and covered == set(g.edges)
    return ok, c.multiplicity


def cover_to_formula(c: BicliqueCover) -> Formula:
    """Sum over bicliques of (sum of left side) * (sum of right side)."""
    if not c.bicliques:
        raise ValueError("cannot compile an empty cover")
    terms = [Prod((Sum(tuple(Var(v) for v in b.left)), Sum(tuple(Var(v) for v in b.right))))
             for b in c.bicliques]
    return normalize_tree(Sum(tuple(terms)))


def extend_cover_to_duplicate(c: BicliqueCover, v: str, new: str) -> BicliqueCover:
    """Cover of ``duplicate_vertex(g, v, new)`` from a cover of ``g``."""
    if v not in c.vertices:
        raise ValueError(f"vertex {v!r} is not covered")
    if new in c.vertices:
        raise ValueError(f"vertex {new!r} already occurs in the cover")
    out = []
    for b in c.bicliques:
        left = b.left | {new} if v in b.left else b.left
        right = b.right | {new} if v in b.right else b.right
        out.append((left, right))
    return BicliqueCover(tuple(out))


# --------------------------------------------------------------------------
# constructions


def chain_cover_recursive(n: int) -> BicliqueCover:
    """Halving construction for the chain graph.

    Cover the first ``ceil(n/2)`` and last ``floor(n/2)`` indices
    recursively with separate bicliques, then add one biclique joining
    the first half's x vertices to the second half's y vertices.
    Multiplicity is ``1 + ceil(log2 n)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    out: list[tuple[list[str], list[str]]] = []

    def build(lo: int, hi: int) -> None:
        if hi - lo == 1:
            out.append(([f"x{lo}"], [f"y{lo}"]))
            return
        mid = lo + (hi - lo + 1) // 2
        build(lo, mid)
        build(mid, hi)
        out.append(([f"x{i}" for i in range(lo, mid)], [f"y{j}" for j in range(mid, hi)]))

    build(1, n + 1)
    return merge_shared_sides(BicliqueCover(tuple(out)))


def merge_shared_sides(c: BicliqueCover) -> BicliqueCover:
    """Merge bicliques with an identical left (or right) side.

    ``L x R1`` and ``L x R2`` span the same edges as ``L x (R1 | R2)``, and
    the merge lowers the count of every vertex of ``L`` by one.
    """
    items = [(b.left, b.right) for b in c.bicliques]
    changed = True
    while changed:
        changed = False
        for side in (0, 1):
            seen: dict[frozenset, int] = {}
            merged: list[list[frozenset]] = []
            for b in items:
                key = b[side]
                if key in seen:
                    m = merged[seen[key]]
                    m[1 - side] = m[1 - side] | b[1 - side]
                    changed = True
                else:
                    seen[key] = len(merged)
                    merged.append(list(b))
            items = [tuple(m) for m in merged]
    return BicliqueCover(tuple(items))


def grid_chessboard_cover(rows: int, cols: int) -> BicliqueCover:
    """Cover a grid by the 4-cycles of its black squares plus stars.

    Square ``(i, j)`` is black when ``i + j`` is even.  Boundary edges left
    uncovered are then taken as stars, largest first, so two uncovered
    edges meeting at a vertex become one ``K_{1,2}``.
    """
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be positive")
    out: list[tuple[list[str], list[str]]] = []
    covered = set()
    for i in range(rows):
        for j in range(cols):
            if (i + j) % 2:
                continue
            a, b = grid_vertex(i, j), grid_vertex(i + 1, j + 1)
            c, d = grid_vertex(i, j + 1), grid_vertex(i + 1, j)
            left, right = [a, b], [c, d]
            out.append((left, right))
            covered |= {frozenset((u, w)) for u in left for w in right}
    edges = []
    for r in range(rows + 1):
        for c in range(cols + 1):
            if r < rows:
                edges.append(frozenset((grid_vertex(r, c), grid_vertex(r + 1, c))))
            if c < cols:
                edges.append(frozenset((grid_vertex(r, c), grid_vertex(r, c + 1))))
    todo = {e for e in edges if e not in covered}
    while todo:
        inc = Counter(v for e in todo for v in e)
        centre = min(inc, key=lambda v: (-inc[v], natural_key(v)))
        star = sorted((next(iter(e - {centre})) for e in todo if centre in e), key=natural_key)
        out.append(([centre], star))
        todo = {e for e in todo if centre not in e}
    return BicliqueCover(tuple(out))


# --------------------------------------------------------------------------
# exact search


@dataclass
class CoverSearchStats:
    nodes: int = 0
    elapsed_ms: float = 0.0


def _candidate_bicliques(g, x, y, uncovered, cap):
    """Bicliques containing edge (x, y), within capacity, in which every
    vertex has an uncovered edge."""
    adj = g.adjacency
    lefts = sorted((u for u in adj[y] if cap[u] > 0 and u != x), key=natural_key)
    seen = set()
    # larger left sides first
    for r in range(len(lefts), -1, -1):
        for extra in itertools.combinations(lefts, r):
            left = frozenset((x,) + extra)
            common = frozenset.intersection(*(adj[u] for u in left))
            rights = sorted((w for w in common if cap[w] > 0 and w != y), key=natural_key)
            for s in range(len(rights), -1, -1):
                for rextra in itertools.combinations(rights, s):
                    right = frozenset((y,) + rextra)
                    new = {frozenset((u, w)) for u in left for w in right} & uncovered
                    if any(not any(u in e for e in new) for u in left | right):
                        continue
                    b = (left, right)
                    if b not in seen:
                        seen.add(b)
                        yield b, new


def min_local_cover_decide(g: Graph, k: int, max_nodes: int = 2_000_000,
                           time_limit_ms: float | None = None,
                           stats: CoverSearchStats | None = None) -> BicliqueCover | None:
    """Find a cover of `g` with multiplicity at most `k`, or prove none exists.

    Exhaustive branch and bound: the uncovered edge with the least
    remaining endpoint capacity is covered next, trying every biclique
    through it whose vertices all have capacity left and all gain an
    uncovered edge.  Dropping a vertex that gains nothing never breaks a
    cover, so this loses no solutions.

    Returns None when no such cover exists.  Raises BudgetExceeded when the
    node or time budget runs out, which says nothing about existence.
    """
    if not is_bipartite(g):
        raise ValueError("exact cover search is restricted to bipartite graphs")
    if k < 0:
        raise ValueError("k must be nonnegative")
    stats = stats if stats is not None else CoverSearchStats()
    start = time.perf_counter()
    deadline = None if time_limit_ms is None else start + time_limit_ms / 1000
    if not g.edges:
        return BicliqueCover(())
    if k == 0:
        return None
    cap = {v: k for v in g.vertices}
    failed: set = set()
    chosen: list[tuple[frozenset, frozenset]] = []

    def state_key(uncovered):
        return frozenset(uncovered), tuple(cap[v] for v in g.vertices)

    def rec(uncovered: set) -> bool:
        if not uncovered:
            return True
        stats.nodes += 1
        if stats.nodes > max_nodes:
            raise BudgetExceeded(f"cover search exceeded {max_nodes} nodes")
        if deadline is not None and time.perf_counter() > deadline:
            raise BudgetExceeded(f"cover search exceeded {time_limit_ms} ms")
        for e in uncovered:
            u, w = tuple(e)
            if cap[u] == 0 or cap[w] == 0:
                return False
        key = state_key(uncovered)
        if key in failed:
            return False
        x, y = min((tuple(sorted(e, key=natural_key)) for e in uncovered),
                   key=lambda p: (min(cap[p[0]], cap[p[1]]), natural_key(p[0]), natural_key(p[1])))
        for (left, right), new in _candidate_bicliques(g, x, y, uncovered, cap):
            for v in left | right:
                cap[v] -= 1
            chosen.append((left, right))
            if rec(uncovered - new):
                return True
            chosen.pop()
            for v in left | right:
                cap[v] += 1
        failed.add(key)
        return False

    try:
        found = rec(set(g.edges))
    finally:
        stats.elapsed_ms = (time.perf_counter() - start) * 1000
    return BicliqueCover(tuple(chosen)) if found else None


def local_cover_number(g: Graph, **budget) -> int:
    """Smallest multiplicity of a biclique cover of `g` (exact search)."""
    k = 0 if not g.edges else 1
    while min_local_cover_decide(g, k, **budget) is None:
        k += 1
    return k


# --------------------------------------------------------------------------
# bounds on the chain-graph cover number


def r_upper_bound(n: int) -> int:
    """``1 + ceil(log2 n)``, the multiplicity reached by halving."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 1 + (n - 1).bit_length()


def double_factorial_odd(k: int) -> int:
    """``(2k-1)!! = (2k-1)(2k-3)...3*1``; equals 1 for ``k = 0``."""
    return math.prod(range(2 * k - 1, 0, -2))


def r_lower_bound(n: int) -> int:
    """Largest ``k`` with ``(2k-1)!! <= n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = 1
    while double_factorial_odd(k + 1) <= n:
        k += 1
    return k
