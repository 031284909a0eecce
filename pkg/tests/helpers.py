"""Random formulas and corpora shared by the test modules."""
from __future__ import annotations

import functools
import itertools

import numpy as np
from hypothesis import strategies as st

from readk.covers import BicliqueCover, cover_to_formula, validate_cover
from readk.formula import (
    Formula, Prod, Sum, Var, is_nonredundant, make_nonredundant, normalize_tree, prod_of,
    sum_of,
)
from readk.graphs import Graph, chain_graph
from readk.sop import is_extension_of_chain


def random_formula(rng: np.random.Generator, n_vars: int, max_leaves: int,
                   prefix: str = "v") -> Formula:
    """Random monotone tree with 1..max_leaves leaves over n_vars names."""
    leaves = int(rng.integers(1, max_leaves + 1))

    def build(m: int) -> Formula:
        if m == 1:
            return Var(f"{prefix}{int(rng.integers(1, n_vars + 1))}")
        parts = int(rng.integers(2, min(m, 4) + 1))
        cuts = sorted(rng.choice(np.arange(1, m), size=parts - 1, replace=False).tolist())
        sizes = [b - a for a, b in zip([0] + cuts, cuts + [m])]
        kids = tuple(build(s) for s in sizes)
        return Sum(kids) if rng.random() < 0.5 else Prod(kids)

    return build(leaves)


@st.composite
def formulas(draw, max_vars: int = 6, max_leaves: int = 12, prefix: str = "v"):
    """Hypothesis strategy for raw (possibly unnormalized) formula trees."""
    names = [f"{prefix}{i}" for i in range(1, max_vars + 1)]
    leaf = st.sampled_from(names).map(Var)

    def extend(children):
        kids = st.lists(children, min_size=2, max_size=3).map(tuple)
        return st.one_of(kids.map(Sum), kids.map(Prod))

    return draw(st.recursive(leaf, extend, max_leaves=max_leaves))


# --------------------------------------------------------------------------
# extensions of chain graphs


def _sub_bicliques(n: int):
    """All bicliques of G(n): {x_i : i in L} x {y_j : j in R} with max L <= min R."""
    out = []
    idx = range(1, n + 1)
    for lsize in range(1, n + 1):
        for left in itertools.combinations(idx, lsize):
            for rsize in range(1, n + 1):
                for right in itertools.combinations(idx, rsize):
                    if max(left) <= min(right):
                        out.append((frozenset(f"x{i}" for i in left),
                                    frozenset(f"y{j}" for j in right)))
    return out


def random_chain_cover(rng: np.random.Generator, n: int) -> BicliqueCover:
    """Random biclique cover of G(n): pick bicliques until every edge is hit."""
    pool = _sub_bicliques(n)
    g = chain_graph(n)
    chosen = []
    covered: set = set()
    while covered != set(g.edges):
        left, right = pool[int(rng.integers(len(pool)))]
        new = {frozenset((u, v)) for u in left for v in right}
        if new - covered:
            chosen.append((left, right))
            covered |= new
    c = BicliqueCover(tuple(chosen))
    assert validate_cover(g, c)[0]
    return c


def _factor_pass(rng: np.random.Generator, summands: list[Formula]) -> list[Formula]:
    """Merge two summands sharing a factor c into c*(rest1 + rest2)."""
    pairs = []
    for a, b in itertools.combinations(range(len(summands)), 2):
        fa, fb = summands[a], summands[b]
        ka = fa.children if isinstance(fa, Prod) else (fa,)
        kb = fb.children if isinstance(fb, Prod) else (fb,)
        for c in set(ka) & set(kb):
            if len(ka) > 1 and len(kb) > 1:
                pairs.append((a, b, c, ka, kb))
    if not pairs:
        return summands
    a, b, c, ka, kb = pairs[int(rng.integers(len(pairs)))]
    ra = prod_of(*[k for k in ka if k != c])
    rb = prod_of(*[k for k in kb if k != c])
    merged = prod_of(c, sum_of(ra, rb))
    return [s for i, s in enumerate(summands) if i not in (a, b)] + [merged]


def random_extension(rng: np.random.Generator, n: int) -> Formula:
    """Random non-redundant extension of G(n): a random cover formula, plus
    optional pure-x / pure-y products, then random factoring steps."""
    f = cover_to_formula(random_chain_cover(rng, n))
    summands = list(f.children) if isinstance(f, Sum) else [f]
    for side in "xy":
        if n >= 2 and rng.random() < 0.5:
            size = int(rng.integers(2, n + 1))
            pick = rng.choice(np.arange(1, n + 1), size=size, replace=False)
            summands.append(prod_of(*[Var(f"{side}{i}") for i in sorted(pick.tolist())]))
    for _ in range(int(rng.integers(0, 4))):
        summands = _factor_pass(rng, summands)
    out = make_nonredundant(normalize_tree(sum_of(*summands)))
    assert is_extension_of_chain(out, n) and is_nonredundant(out)
    return out


def extension_corpus(seed: int, per_n: dict[int, int]) -> list[tuple[int, Formula]]:
    """Distinct random extensions, `per_n[n]` attempts for each n."""
    rng = np.random.default_rng(seed)
    seen: dict[Formula, int] = {}
    for n, count in per_n.items():
        for _ in range(count):
            seen.setdefault(random_extension(rng, n), n)
    return [(n, f) for f, n in seen.items()]


def peel_corpus(seed: int, count: int) -> list[tuple[int, Formula, object]]:
    """Formulas ``base + (x1+..+xn)*(y1+..+yn)*P`` with a handle on the
    two block factors.  P is a chain edge, or a pure product of size >= 2
    containing x1 (pure x) or yn (pure y), so that f still extends G(n)."""
    from readk.formula import Subformula, _walk

    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(2, 5))
        base = cover_to_formula(random_chain_cover(rng, n))
        xs = sum_of(*[Var(f"x{i}") for i in range(1, n + 1)])
        ys = sum_of(*[Var(f"y{i}") for i in range(1, n + 1)])
        kind = rng.integers(3)
        if kind == 2:
            i = int(rng.integers(1, n + 1))
            j = int(rng.integers(i, n + 1))
            extra = [Var(f"x{i}"), Var(f"y{j}")]
        else:
            # x1 (resp. yn) keeps every term x_a*y_b*P above a chain edge
            side, anchor = ("x", 1) if kind == 0 else ("y", n)
            others = [i for i in range(1, n + 1) if i != anchor]
            size = int(rng.integers(1, n))
            pick = sorted([anchor] + rng.choice(others, size=size, replace=False).tolist())
            extra = [Var(f"{side}{i}") for i in pick]
        f = normalize_tree(sum_of(base, Prod((xs, ys, *extra))))
        handle = None
        for path, node in _walk(f):
            if isinstance(node, Prod) and xs in node.children and ys in node.children:
                keep = (node.children.index(xs), node.children.index(ys))
                handle = Subformula(path, tuple(sorted(keep)))
                break
        assert handle is not None
        out.append((n, f, handle))
    return out


# --------------------------------------------------------------------------
# small graphs


@functools.lru_cache(maxsize=None)
def triangle_free_graphs(order: int) -> tuple[Graph, ...]:
    """All triangle-free graphs on `order` vertices, one per isomorphism class."""
    names = [f"v{i}" for i in range(1, order + 1)]
    pairs = list(itertools.combinations(range(order), 2))
    perms = list(itertools.permutations(range(order)))
    seen = set()
    out = []
    for mask in range(1 << len(pairs)):
        es = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        adj = {v: set() for v in range(order)}
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
        if any(adj[u] & adj[v] for u, v in es):
            continue
        canon = min(tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in es)) for p in perms)
        if canon in seen:
            continue
        seen.add(canon)
        out.append(Graph.from_edges([(names[u], names[v]) for u, v in canon], names))
    return tuple(out)
