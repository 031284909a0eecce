"""Bounded exhaustive search for read-k formulas, and executable forms of
the structural lemmas about extensions of chain graphs.

Formulas are synthesised bottom-up by leaf count.  A candidate is a pair
(truth table, exact occurrence vector); one representative formula is kept
per pair, which loses nothing because swapping a subformula for another
with the same function and the same leaf counts changes neither the
function nor the counts of the whole.  A node whose value equals one of
its operands is never built: dropping the useless operand gives a smaller
formula for the same function with no more occurrences.  The search is
therefore complete up to the leaf bound ``k * |V|``, and a "no" is a
proof.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from .covers import cover_to_formula, min_local_cover_decide
from .errors import BudgetExceeded
from .formula import (
    TRUE, Const, Formula, Prod, Sum, Var, enumerate_2mult, isolates, is_nonredundant,
    node_at, normalize_tree, occurrences, subformula_at, substitute_subformula,
)
from .graphs import Graph, chain_graph, is_bipartite, is_triangle_free
from .sop import SopForm, extension_violations, format_term, phi_of_graph, sop

__all__ = [
    "SearchBudget", "SearchResult", "PeelError", "DegeneratePeel",
    "decide_readability", "has_read_k_extension", "readability",
    "closure_readability_oracle", "find_2mult_for_edge", "scan_2mult_for_edge",
    "peel_step", "main_theorem_bound", "not_read_k_threshold",
    "recursion_length_suffices",
]


@dataclass(frozen=True)
class SearchBudget:
    """Limits for one search call.

    `max_candidates` counts candidates built by this call; layers cached
    from earlier calls over the same variables are reused for free.
    """

    max_leaves: int | None = None  # default: k * |V|
    max_candidates: int = 20_000_000
    time_limit_ms: float | None = 120_000

    def __post_init__(self):
        for name in ("max_leaves", "max_candidates", "time_limit_ms"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass
class SearchResult:
    outcome: str  # "yes", "no" or "unknown"
    witness: Formula | None = None
    stats: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.outcome == "yes"

    def to_json(self) -> dict:
        doc = {"outcome": self.outcome}
        if self.witness is not None:
            doc["witness"] = str(self.witness)
        doc["stats"] = self.stats
        return doc


# --------------------------------------------------------------------------
# truth tables as Python ints


def _var_tables(n: int) -> list[int]:
    size = 1 << n
    return [sum(1 << p for p in range(size) if p >> i & 1) for i in range(n)]


def _minterms_of_int(tt: int, variables: Sequence[str]) -> frozenset[frozenset[str]]:
    out = []
    p = tt
    while p:
        low = p & -p
        point = low.bit_length() - 1
        p ^= low
        if all(not (tt >> (point ^ (1 << i)) & 1) for i in range(len(variables)) if point >> i & 1):
            out.append(frozenset(v for i, v in enumerate(variables) if point >> i & 1))
    return frozenset(out)


def _table_of_sop(s: SopForm, variables: Sequence[str]) -> int:
    index = {v: i for i, v in enumerate(variables)}
    tt = 0
    for p in range(1 << len(variables)):
        if any(all(p >> index[v] & 1 for v in t) for t in s.terms):
            tt |= 1 << p
    return tt


# --------------------------------------------------------------------------
# bottom-up synthesis


class _Synthesis:
    """Layered enumeration of (table, occurrence vector) pairs."""

    def __init__(self, variables: tuple[str, ...], k: int):
        self.variables = variables
        self.k = k
        n = len(variables)
        self.width = (2 * k + 1).bit_length() + 1
        w = self.width
        bias_field = (1 << (w - 1)) - 1 - k
        self.bias = sum(bias_field << (w * i) for i in range(n))
        self.high = sum(1 << (w * i + w - 1) for i in range(n))
        self.origin: dict[tuple[int, int], tuple] = {}
        self.layers: list[list[tuple[int, int]]] = [[]]
        layer = []
        for i, t in enumerate(_var_tables(n)):
            key = (t, 1 << (w * i))
            self.origin[key] = ("var", variables[i])
            layer.append(key)
        self.layers.append(layer)
        self.candidates = 0

    def grow(self, deadline: float | None, max_candidates: int) -> list[tuple[int, int]]:
        """Build the next layer; raises BudgetExceeded when out of budget.

        Nothing is committed unless the whole layer completes.
        """
        size = len(self.layers)
        origin = self.origin
        pending: dict[tuple[int, int], tuple] = {}
        bias, high = self.bias, self.high
        candidates = self.candidates
        for a in range(1, size // 2 + 1):
            la, lb = self.layers[a], self.layers[size - a]
            same = a == size - a
            for ia, (ta, oa) in enumerate(la):
                if deadline is not None and time.perf_counter() > deadline:
                    raise BudgetExceeded("search time limit reached")
                for tb, ob in (lb[ia:] if same else lb):
                    occ = oa + ob
                    if (occ + bias) & high:
                        continue
                    candidates += 1
                    for op, t in (("*", ta & tb), ("+", ta | tb)):
                        if t != ta and t != tb:
                            key = (t, occ)
                            if key not in origin and key not in pending:
                                pending[key] = (op, (ta, oa), (tb, ob))
                if candidates > max_candidates:
                    raise BudgetExceeded(f"search exceeded {max_candidates} candidates")
        self.candidates = candidates
        origin.update(pending)
        new = list(pending)
        self.layers.append(new)
        return new

    def formula(self, key: tuple[int, int]) -> Formula:
        kind, *rest = self.origin[key]
        if kind == "var":
            return Var(rest[0])
        cls = Prod if kind == "*" else Sum
        return normalize_tree(cls((self.formula(rest[0]), self.formula(rest[1]))))


@lru_cache(maxsize=16)
def _synthesis(variables: tuple[str, ...], k: int) -> _Synthesis:
    return _Synthesis(variables, k)


def _run_synthesis(variables: tuple[str, ...], k: int, accept: Callable[[int], bool],
                   budget: SearchBudget) -> SearchResult:
    start = time.perf_counter()
    deadline = None if budget.time_limit_ms is None else start + budget.time_limit_ms / 1000
    syn = _synthesis(variables, k)
    max_leaves = k * len(variables) if budget.max_leaves is None else budget.max_leaves
    truncated = budget.max_leaves is not None and budget.max_leaves < k * len(variables)
    base = syn.candidates

    def stats(**extra):
        return {"candidates": syn.candidates - base, "states": len(syn.origin),
                "elapsed_ms": round((time.perf_counter() - start) * 1000, 3), **extra}

    size = 1
    while size <= max_leaves:
        if size >= len(syn.layers):
            try:
                syn.grow(deadline, base + budget.max_candidates)
            except BudgetExceeded as exc:
                return SearchResult("unknown", None, stats(reason=str(exc)))
        for key in syn.layers[size]:
            if accept(key[0]):
                return SearchResult("yes", syn.formula(key), stats(method="synthesis"))
        size += 1
    if truncated:
        return SearchResult("unknown", None, stats(reason="leaf budget below k*|V|"))
    return SearchResult("no", None, stats(method="synthesis"))


def _cover_first(g: Graph, k: int) -> Formula | None:
    if not g.edges or not is_bipartite(g) or any(not g.neighbors(v) for v in g.vertices):
        return None
    try:
        c = min_local_cover_decide(g, k, max_nodes=20_000)
    except BudgetExceeded:
        return None
    return None if c is None else cover_to_formula(c)


def decide_readability(g: Graph, k: int, budget: SearchBudget | None = None) -> SearchResult:
    """Decide whether the maximal-clique function of triangle-free `g` has a
    read-`k` formula.

    "yes" carries a witness ``f`` with ``sop(f) == phi_of_graph(g)`` and
    read index at most `k`; "no" means the exhaustive search found none;
    "unknown" means the budget ran out.
    """
    if not is_triangle_free(g):
        raise ValueError("readability search expects a triangle-free graph")
    if k < 1:
        raise ValueError("k must be >= 1")
    budget = budget or SearchBudget()
    target = phi_of_graph(g)
    if not g.vertices:
        raise ValueError("empty graph")
    w = _cover_first(g, k)
    if w is not None:
        return SearchResult("yes", w, {"method": "cover", "candidates": 0})
    variables = tuple(g.vertices)
    tt = _table_of_sop(target, variables)
    res = _run_synthesis(variables, k, lambda t: t == tt, budget)
    if res.witness is not None:
        assert sop(res.witness) == target and occurrences(res.witness).read_index <= k
    return res


def readability(g: Graph, budget: SearchBudget | None = None, k_max: int = 4) -> int | None:
    """Smallest k with a "yes"; None if some smaller k came back unknown."""
    for k in range(1, k_max + 1):
        res = decide_readability(g, k, budget)
        if res.outcome == "yes":
            return k
        if res.outcome == "unknown":
            return None
    return None


def has_read_k_extension(n: int, k: int, budget: SearchBudget | None = None) -> SearchResult:
    """Search for a read-`k` formula extending the chain graph ``G(n)``.

    Every read-k formula for ``G(n)`` is an extension, so "no" here also
    rules out readability `k`.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    budget = budget or SearchBudget()
    w = _cover_first(chain_graph(n), k)
    if w is not None:
        return SearchResult("yes", w, {"method": "cover", "candidates": 0})
    variables = tuple([f"x{i}" for i in range(1, n + 1)] + [f"y{j}" for j in range(1, n + 1)])
    verdicts: dict[int, bool] = {}

    def accept(t: int) -> bool:
        v = verdicts.get(t)
        if v is None:
            s = SopForm(_minterms_of_int(t, variables))
            v = verdicts[t] = not extension_violations(s, n)
        return v

    res = _run_synthesis(variables, k, accept, budget)
    if res.witness is not None:
        assert not extension_violations(res.witness, n)
        assert occurrences(res.witness).read_index <= k
    return res


@lru_cache(maxsize=8)
def _pareto_closure(n: int, k: int, max_states: int) -> dict[int, tuple[tuple[int, ...], ...]]:
    front: dict[int, list[tuple[int, ...]]] = {}
    buckets: dict[tuple[int, ...], set[int]] = {}

    def insert(t: int, o: tuple[int, ...]) -> bool:
        vecs = front.setdefault(t, [])
        for v in vecs:
            if all(a <= b for a, b in zip(v, o)):
                return False
        vecs[:] = [v for v in vecs if not all(a <= b for a, b in zip(o, v))]
        vecs.append(o)
        buckets.setdefault(o, set()).add(t)
        return True

    fresh = []
    for i, t in enumerate(_var_tables(n)):
        o = tuple(int(j == i) for j in range(n))
        insert(t, o)
        fresh.append((t, o))
    states = len(fresh)
    while fresh:
        nxt = []
        for t, o in fresh:
            for o2, ts in list(buckets.items()):
                occ = tuple(a + b for a, b in zip(o, o2))
                if max(occ) > k:
                    continue
                for t2 in list(ts):
                    for r in (t & t2, t | t2):
                        if insert(r, occ):
                            nxt.append((r, occ))
                            states += 1
            if states > max_states:
                raise BudgetExceeded("oracle state budget exceeded")
        fresh = nxt
    return {t: tuple(v) for t, v in front.items()}


def closure_readability_oracle(g: Graph, k: int, max_states: int = 5_000_000) -> bool:
    """Independent check of read-k-ness by a fixpoint over functions.

    For every monotone function reachable with AND/OR it keeps the Pareto
    front of occurrence vectors bounded by `k`, and combines new pairs
    until nothing new appears.  No leaf layering, no packed vectors, no
    witnesses; the closure depends only on the number of variables and
    is cached.
    """
    variables = tuple(g.vertices)
    target = _table_of_sop(phi_of_graph(g), variables)
    return target in _pareto_closure(len(variables), k, max_states)


# --------------------------------------------------------------------------
# 2-mult subformulas for chain edges


def _has_term(f: Formula, term: frozenset[str]) -> bool:
    return term in sop(f).terms


def scan_2mult_for_edge(f: Formula, i: int, j: int) -> list[tuple[int, ...]]:
    """All 2-mult nodes whose factors isolate ``x_i`` and ``y_j``."""
    x, y = f"x{i}", f"y{j}"
    out = []
    for path in enumerate_2mult(f):
        a, b = node_at(f, path).children
        if (isolates(a, x) and isolates(b, y)) or (isolates(a, y) and isolates(b, x)):
            out.append(path)
    return out


def find_2mult_for_edge(f: Formula, i: int, j: int, n: int | None = None) -> tuple[int, ...]:
    """Locate a 2-mult subformula ``(x_i + phi1)*(y_j + phi2)`` by descent.

    Starting at the root, keep to a node whose minterms include
    ``x_i*y_j``.  At a sum, move to a child carrying the term.  At a
    product, the children true on ``{x_i, y_j}`` either contain one of the
    two variables as a singleton minterm, which in a non-redundant formula
    means they isolate it, or carry the whole term; descend into one of
    the latter if any, otherwise the node has exactly the two isolating
    factors and is the answer.

    Requires `f` to be a non-redundant extension of the chain graph
    (``n`` defaults to the largest index present); raises ValueError
    otherwise.
    """
    if not 1 <= i <= j:
        raise ValueError("need 1 <= i <= j")
    if n is None:
        n = max(int(v[1:]) for v in f.variables)
    if j > n:
        raise ValueError(f"edge index {j} exceeds n={n}")
    bad = extension_violations(f, n)
    if bad:
        kind, term = bad[0]
        raise ValueError(f"not an extension of G({n}): {kind} term {format_term(term)}")
    if not is_nonredundant(f):
        raise ValueError("formula is redundant; apply make_nonredundant first")
    x, y = f"x{i}", f"y{j}"
    edge = frozenset((x, y))
    path: tuple[int, ...] = ()
    node = f
    for _ in range(f.size + 1):
        if isinstance(node, Sum):
            nxt = [c for c, g in enumerate(node.children) if _has_term(g, edge)]
            assert nxt, "sum node lost the edge term"
            path, node = path + (nxt[0],), node.children[nxt[0]]
            continue
        assert isinstance(node, Prod), "descent reached a leaf"
        whole, xs, ys = [], [], []
        for c, g in enumerate(node.children):
            terms = sop(g).terms
            if frozenset([x]) in terms:
                xs.append(c)
            elif frozenset([y]) in terms:
                ys.append(c)
            elif edge in terms:
                whole.append(c)
            else:
                raise AssertionError("product factor is false on the edge")
        if whole:
            path, node = path + (whole[0],), node.children[whole[0]]
            continue
        assert len(xs) == 1 and len(ys) == 1 and len(node.children) == 2, \
            "product without a unique isolating factor pair"
        assert isolates(node.children[xs[0]], x) and isolates(node.children[ys[0]], y)
        return path
    raise AssertionError("descent did not terminate")


# --------------------------------------------------------------------------
# peeling


class PeelError(ValueError):
    def __init__(self, message: str, term: frozenset[str] | None = None):
        super().__init__(message if term is None else f"{message}: {format_term(term)}")
        self.term = term


class DegeneratePeel(PeelError):
    """The peeled subformula carries the whole function (e.g. ``G(1)``)."""


def _is_chain_block(factor: Formula, prefix: str, n: int) -> bool:
    need = {Var(f"{prefix}{i}") for i in range(1, n + 1)}
    if n == 1 and factor in need:
        return True
    return isinstance(factor, Sum) and need <= set(factor.children)


def peel_step(f: Formula, h, n: int, fresh: str = "z") -> Formula:
    """Replace a subformula ``(x1+...+xn+phi1)*(y1+...+yn+phi2)`` by true.

    Checks the hypotheses first: `f` extends ``G(n)``, the subformula has
    the stated form, and substituting a fresh variable ``z`` for it leaves
    no minterm ``z*x_i`` or ``z*y_j`` (nor ``z`` alone).  The result then
    extends ``G(n)`` and every variable occurs less often than in `f`.
    """
    bad = extension_violations(f, n)
    if bad:
        kind, term = bad[0]
        raise PeelError(f"not an extension of G({n}) ({kind} term)", term)
    sub = subformula_at(f, h)
    if not (isinstance(sub, Prod) and len(sub.children) == 2):
        raise PeelError("subformula is not a product of two factors")
    a, b = sub.children
    if not ((_is_chain_block(a, "x", n) and _is_chain_block(b, "y", n))
            or (_is_chain_block(a, "y", n) and _is_chain_block(b, "x", n))):
        raise PeelError("factors do not contain all of x1..xn and y1..yn as summands")
    while fresh in f.variables:
        fresh += "_"
    replaced = substitute_subformula(f, h, fresh)
    for t in sop(replaced).sorted_terms():
        if fresh in t and len(t) == 1:
            raise DegeneratePeel("the substituted variable is itself a minterm", t)
        if fresh in t and len(t) == 2:
            raise PeelError("hypothesis fails, minterm", t)
    psi = substitute_subformula(f, h, TRUE)
    if isinstance(psi, Const):
        raise DegeneratePeel("peeling leaves a constant formula")
    return psi


# --------------------------------------------------------------------------
# bound arithmetic


def _hyperfactorial(k: int) -> int:
    return math.prod(i ** i for i in range(1, k + 1))


def main_theorem_bound(n: int) -> int:
    """Largest k with ``1^1 * 2^2 * ... * k^k <= n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = 1
    while _hyperfactorial(k + 1) <= n:
        k += 1
    return k


def not_read_k_threshold(k: int) -> int:
    """``2^k * 1^1 * ... * (k-1)^(k-1)``: chain graphs this long or longer
    have no read-k extension, starting from ``G(2)`` having none for k=1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return 2 ** k * _hyperfactorial(k - 1)


def recursion_length_suffices(m: int, n: int, k: int) -> bool:
    """``m >= 2 n k^k``: the length step lifting "no read-(k-1) extension
    of G(n)" to "no read-k extension of G(m)"."""
    return m >= 2 * n * k ** k
