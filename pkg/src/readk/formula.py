"""Monotone Boolean formulas as parse trees.

A formula is an immutable tree of :class:`Var` leaves and n-ary
:class:`Sum` (OR) and :class:`Prod` (AND) nodes.  Every public operation
returns trees in *normal form*:

* internal nodes have at least two children,
* a ``Sum`` never has a ``Sum`` child and a ``Prod`` never has a ``Prod``
  child, so root-to-leaf paths alternate between ``+`` and ``*``,
* siblings are distinct and sorted by :func:`sort_key`.

The constants :data:`TRUE` and :data:`FALSE` only ever appear as a whole
result (e.g. of :func:`substitute_const`), never nested inside a tree.
"""
from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, NamedTuple, Sequence, Union

__all__ = [
    "Formula", "Var", "Sum", "Prod", "Const", "TRUE", "FALSE",
    "FormulaSyntaxError", "OccurrenceProfile", "Subformula",
    "natural_key", "sort_key", "parse_formula", "render", "normalize_tree",
    "occurrences", "is_isolated", "isolates", "node_at", "subformula_at",
    "iter_subformulas", "enumerate_2mult", "find_redundancy",
    "is_nonredundant", "make_nonredundant", "substitute_subformula",
    "substitute_const", "sum_of", "prod_of",
]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def natural_key(name: str) -> tuple:
    """Sort key ordering ``x2`` before ``x10``."""
    parts = re.split(r"(\d+)", name)
    return tuple(int(p) if i % 2 else p for i, p in enumerate(parts))


class Formula:
    """Base class of all formula nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return render(self)

    @property
    def is_leaf(self) -> bool:
        return isinstance(self, (Var, Const))

    @cached_property
    def variables(self) -> frozenset[str]:
        if isinstance(self, Var):
            return frozenset([self.name])
        if isinstance(self, Const):
            return frozenset()
        return frozenset().union(*(c.variables for c in self.children))

    @cached_property
    def size(self) -> int:
        """Number of leaves."""
        if self.is_leaf:
            return 1
        return sum(c.size for c in self.children)


@dataclass(frozen=True, eq=True)
class Var(Formula):
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not _NAME_RE.fullmatch(self.name):
            raise ValueError(f"invalid variable name {self.name!r}")

    def __repr__(self) -> str:
        return f"Var({self.name!r})"


@dataclass(frozen=True, eq=True)
class Const(Formula):
    value: bool

    def __repr__(self) -> str:
        return "TRUE" if self.value else "FALSE"


@dataclass(frozen=True, eq=True)
class Sum(Formula):
    children: tuple[Formula, ...] = field(default=())

    def __repr__(self) -> str:
        return f"Sum{list(self.children)!r}"

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(('Sum', self.children))
            object.__setattr__(self, "_hash", h)
        return h


@dataclass(frozen=True, eq=True)
class Prod(Formula):
    children: tuple[Formula, ...] = field(default=())

    def __repr__(self) -> str:
        return f"Prod{list(self.children)!r}"

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(('Prod', self.children))
            object.__setattr__(self, "_hash", h)
        return h


TRUE = Const(True)
FALSE = Const(False)

_KIND_RANK = {Const: 0, Var: 1, Sum: 2, Prod: 3}


def sort_key(f: Formula) -> tuple:
    """Total order on formulas used for canonical child ordering."""
    key = f.__dict__.get("_sort_key")
    if key is None:
        if isinstance(f, Var):
            key = (1, natural_key(f.name))
        elif isinstance(f, Const):
            key = (0, (int(f.value),))
        else:
            key = (_KIND_RANK[type(f)], tuple(sort_key(c) for c in f.children))
        object.__setattr__(f, "_sort_key", key)
    return key


# --------------------------------------------------------------------------
# normalization


def normalize_tree(f: Formula) -> Formula:
    """Flatten, simplify constants, merge duplicate siblings and sort.

    The result is logically equivalent to `f`.  Leaf counts per variable
    are unchanged unless `f` had identical siblings (``a+a``), which are
    merged; counts never increase.
    """
    if f.is_leaf:
        return f
    cls = type(f)
    absorbing, neutral = (TRUE, FALSE) if cls is Sum else (FALSE, TRUE)
    flat: dict[Formula, None] = {}
    for child in f.children:
        c = normalize_tree(child)
        if c == absorbing:
            return absorbing
        if c == neutral:
            continue
        if type(c) is cls:
            for g in c.children:
                flat[g] = None
        else:
            flat[c] = None
    if not flat:
        return neutral
    if len(flat) == 1:
        return next(iter(flat))
    return cls(tuple(sorted(flat, key=sort_key)))


def sum_of(*children: Formula) -> Formula:
    return normalize_tree(Sum(tuple(children)))


def prod_of(*children: Formula) -> Formula:
    return normalize_tree(Prod(tuple(children)))


# --------------------------------------------------------------------------
# parsing and rendering


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == m.start() or (m.group(1) is None and m.group(2) is None):
            break
        if m.group(1) is not None:
            tokens.append(("name", m.group(1), m.start(1)))
        else:
            ch = m.group(2)
            if ch not in "+*()":
                raise FormulaSyntaxError(f"unexpected character {ch!r}", m.start(2))
            tokens.append((ch, ch, m.start(2)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise FormulaSyntaxError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def sum(self) -> Formula:
        terms = [self.prod()]
        while self.peek()[0] == "+":
            self.i += 1
            terms.append(self.prod())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def prod(self) -> Formula:
        factors = [self.atom()]
        while self.peek()[0] == "*":
            self.i += 1
            factors.append(self.atom())
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def atom(self) -> Formula:
        kind, value, pos = self.peek()
        if kind == "name":
            self.i += 1
            return Var(value)
        if kind == "(":
            self.i += 1
            inner = self.sum()
            self.take(")")
            return inner
        what = "end of input" if kind == "end" else repr(value)
        raise FormulaSyntaxError(f"expected a variable or '(', found {what}", pos)


def parse_formula(text: str) -> Formula:
    """Parse ``a1*(a2+a3)``-style text into a normalized formula.

    ``*`` binds tighter than ``+``; whitespace is ignored.

    >>> render(parse_formula("((a1))"))
    'a1'
    """
    if not text or not text.strip():
        raise FormulaSyntaxError("empty formula", 0)
    p = _Parser(text)
    tree = p.sum()
    p.take("end")
    return normalize_tree(tree)


def render(f: Formula) -> str:
    """Text form with minimal parentheses, children in stored order."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Const):
        return "1" if f.value else "0"
    if isinstance(f, Sum):
        return "+".join(render(c) for c in f.children)
    parts = []
    for c in f.children:
        s = render(c)
        parts.append(f"({s})" if isinstance(c, Sum) else s)
    return "*".join(parts)


# --------------------------------------------------------------------------
# occurrence accounting


@dataclass(frozen=True)
class OccurrenceProfile:
    counts: dict[str, int]

    @property
    def read_index(self) -> int:
        return max(self.counts.values(), default=0)

    def __getitem__(self, name: str) -> int:
        return self.counts.get(name, 0)


def _leaves(f: Formula) -> Iterator[str]:
    if isinstance(f, Var):
        yield f.name
    elif not f.is_leaf:
        for c in f.children:
            yield from _leaves(c)


def occurrences(f: Formula) -> OccurrenceProfile:
    """Leaf count of every variable and the read index (max count)."""
    return OccurrenceProfile(dict(Counter(_leaves(f))))


# --------------------------------------------------------------------------
# structural predicates and handles


class Subformula(NamedTuple):
    """A node (`path` of child indices from the root) with optionally only
    the children listed in `keep` retained."""

    path: tuple[int, ...]
    keep: tuple[int, ...] | None = None


Handle = Union[Sequence[int], Subformula]


def _as_subformula(h: Handle) -> Subformula:
    if isinstance(h, Subformula):
        return Subformula(tuple(h.path), None if h.keep is None else tuple(h.keep))
    return Subformula(tuple(h))


def is_isolated(v: str, f: Formula) -> bool:
    """True iff `f` is a sum having the leaf `v` among its children."""
    return isinstance(f, Sum) and Var(v) in f.children


def isolates(factor: Formula, v: str) -> bool:
    """True iff `factor` has the shape ``v + phi`` (``phi`` possibly absent)."""
    return factor == Var(v) or is_isolated(v, factor)


def node_at(f: Formula, path: Sequence[int]) -> Formula:
    node = f
    for i in path:
        if node.is_leaf or not 0 <= i < len(node.children):
            raise IndexError(f"stale handle {tuple(path)}")
        node = node.children[i]
    return node


def subformula_at(f: Formula, h: Handle) -> Formula:
    """Materialize the subformula a handle points to."""
    sf = _as_subformula(h)
    node = node_at(f, sf.path)
    if sf.keep is None:
        return node
    if node.is_leaf or len(sf.keep) < 2 or len(set(sf.keep)) != len(sf.keep):
        raise IndexError(f"invalid child selection {sf.keep} at {sf.path}")
    try:
        return type(node)(tuple(node.children[i] for i in sorted(sf.keep)))
    except IndexError:
        raise IndexError(f"stale handle {sf}") from None


def _walk(f: Formula, path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], Formula]]:
    yield path, f
    if not f.is_leaf:
        for i, c in enumerate(f.children):
            yield from _walk(c, path + (i,))


def iter_subformulas(f: Formula, kinds: tuple[type, ...] = (Var, Sum, Prod)) -> Iterator[Subformula]:
    """All subformulas: every leaf, and every internal node with every
    selection of at least two of its children (full selection first).

    `kinds` restricts which node types are reported.  The count is
    exponential in the fan-out, so keep inputs small.
    """
    for path, node in _walk(f):
        if not isinstance(node, kinds):
            continue
        if node.is_leaf:
            yield Subformula(path)
            continue
        n = len(node.children)
        yield Subformula(path)
        for r in range(n - 1, 1, -1):
            for keep in itertools.combinations(range(n), r):
                yield Subformula(path, keep)


def enumerate_2mult(f: Formula) -> list[tuple[int, ...]]:
    """Paths of all product nodes having exactly two children."""
    return [p for p, node in _walk(f) if isinstance(node, Prod) and len(node.children) == 2]


# --------------------------------------------------------------------------
# non-redundancy


def _strip(s: Sum, v: str) -> Formula:
    rest = tuple(c for c in s.children if c != Var(v))
    return rest[0] if len(rest) == 1 else Sum(rest)


def find_redundancy(node: Formula, degenerate: bool = True):
    """Locate a redundant pattern directly under product node `node`.

    Returns ``(i, j, v)``: children `i` and `j` both isolate variable `v`
    (the pattern ``(v+phi1)*(v+phi2)``).  With `degenerate` the leaf-case
    ``v*(v+phi)`` counts as well (child `i` is then the leaf itself).
    Returns None when no pattern is present.
    """
    if not isinstance(node, Prod):
        return None
    kids = node.children
    seen: dict[str, int] = {}
    leaves = {c.name: i for i, c in enumerate(kids) if isinstance(c, Var)}
    for j, c in enumerate(kids):
        if not isinstance(c, Sum):
            continue
        for g in c.children:
            if not isinstance(g, Var):
                continue
            if degenerate and g.name in leaves:
                return leaves[g.name], j, g.name
            if g.name in seen:
                return seen[g.name], j, g.name
            seen[g.name] = j
    return None


def is_nonredundant(f: Formula, degenerate: bool = True) -> bool:
    """No product node (or child selection of one) of the form
    ``(v+phi1)*(v+phi2)``; with `degenerate` also no ``v*(v+phi)``."""
    return all(find_redundancy(node, degenerate) is None for _, node in _walk(f))


def _rewrite_node(node: Prod) -> Formula | None:
    hit = find_redundancy(node)
    if hit is None:
        return None
    i, j, v = hit
    kids = list(node.children)
    if isinstance(kids[i], Var):
        # v*(v+phi) == v
        del kids[j]
        return normalize_tree(Prod(tuple(kids)))
    merged = Sum((Var(v), Prod((_strip(kids[i], v), _strip(kids[j], v)))))
    rest = [c for k, c in enumerate(kids) if k not in (i, j)]
    return normalize_tree(Prod(tuple(rest) + (merged,)))


def _rewrite_once(f: Formula) -> Formula | None:
    if f.is_leaf:
        return None
    for i, c in enumerate(f.children):
        new = _rewrite_once(c)
        if new is not None:
            kids = f.children[:i] + (new,) + f.children[i + 1:]
            return normalize_tree(type(f)(kids))
    if isinstance(f, Prod):
        return _rewrite_node(f)
    return None


def make_nonredundant(f: Formula) -> Formula:
    """Rewrite ``(v+phi1)*(v+phi2)`` to ``v + phi1*phi2`` (and ``v*(v+phi)``
    to ``v``) innermost-first until none remain.

    The result is equivalent to `f` and no variable occurs more often than
    in `f`.  Each step removes at least one leaf, so the loop terminates.
    """
    f = normalize_tree(f)
    for _ in range(f.size ** 2 + 1):
        g = _rewrite_once(f)
        if g is None:
            return f
        f = g
    raise AssertionError("non-redundancy rewrite did not converge")


# --------------------------------------------------------------------------
# substitution


def _replace(f: Formula, path: tuple[int, ...], new: Formula) -> Formula:
    if not path:
        return new
    i = path[0]
    kids = list(f.children)
    kids[i] = _replace(kids[i], path[1:], new)
    return type(f)(tuple(kids))


def substitute_subformula(f: Formula, h: Handle, replacement: Formula | str) -> Formula:
    """Replace the subformula at `h` by `replacement` and renormalize.

    `replacement` is typically a fresh variable name (it must not occur in
    `f`) or one of the constants.  For a child selection, the selected
    children are removed from their node and `replacement` is added in
    their place.
    """
    if isinstance(replacement, str):
        if replacement in f.variables:
            raise ValueError(f"variable {replacement!r} already occurs in the formula")
        replacement = Var(replacement)
    sf = _as_subformula(h)
    subformula_at(f, sf)  # validates the handle
    if sf.keep is None:
        out = _replace(f, sf.path, replacement)
    else:
        node = node_at(f, sf.path)
        rest = tuple(c for i, c in enumerate(node.children) if i not in sf.keep)
        out = _replace(f, sf.path, type(node)(rest + (replacement,)))
    return normalize_tree(out)


def _subst_var(f: Formula, v: str, c: Const) -> Formula:
    if isinstance(f, Var):
        return c if f.name == v else f
    if f.is_leaf:
        return f
    return type(f)(tuple(_subst_var(g, v, c) for g in f.children))


def substitute_const(f: Formula, v: str, value: bool | int) -> Formula:
    """Set variable `v` to a constant and simplify.

    The result is constant-free or is exactly :data:`TRUE`/:data:`FALSE`.
    """
    c = TRUE if value else FALSE
    return normalize_tree(_subst_var(f, v, c))
