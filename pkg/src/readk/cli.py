"""Command-line front end.

Every subcommand wraps one library operation.  Formulas are given as text,
graphs and covers as JSON; an argument ``-`` (or an omitted graph/cover
argument) reads stdin, ``@path`` reads a file.  Construction commands emit
JSON so they can be piped::

    readk gen chain 3 | readk cover recursive | readk cover validate

Exit codes: 0 success, 1 definite negative, 2 usage or input error,
3 unknown (budget exhausted), 4 internal assertion.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from . import covers, formula, graphs, search, sop
from .errors import BudgetExceeded

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_UNKNOWN, EXIT_INTERNAL = 0, 1, 2, 3, 4


@dataclass
class CommandResult:
    status: str  # "ok", "no", "unknown", "error"
    payload: object = None
    text: str = ""
    diagnostics: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK
    json_mode: bool = False


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(arg: str | None, stdin) -> str:
    if arg is None or arg == "-":
        return stdin.read()
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            return fh.read()
    return arg


def _json(arg, stdin):
    text = _read(arg, stdin)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"expected JSON input: {exc}") from None


def _graph(doc) -> graphs.Graph:
    if isinstance(doc, dict) and "graph" in doc:
        doc = doc["graph"]
    return graphs.Graph.from_json(doc)


def _bundle(g: graphs.Graph, c: covers.BicliqueCover) -> dict:
    return {"graph": g.to_json(), "cover": c.to_json()}


def _cover_from_text(text: str) -> covers.BicliqueCover:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.count("|") != 1:
            raise ValueError(f"cover line needs exactly one '|': {line!r}")
        left, right = line.split("|")
        out.append((left.replace(",", " ").split(), right.replace(",", " ").split()))
    return covers.BicliqueCover(tuple(out))


def _ints(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    return tuple(int(p) for p in text.split(",") if p != "")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="readk", description="Read-k monotone formulas and chain graphs.")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("--budget-leaves", type=int, default=None)
    p.add_argument("--budget-candidates", type=int, default=None)
    p.add_argument("--budget-ms", type=float, default=None)
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    for name in ("parse", "render", "sop", "csop", "nonredundant"):
        sub.add_parser(name).add_argument("formula")
    eq = sub.add_parser("equiv")
    eq.add_argument("f")
    eq.add_argument("g")

    gen = sub.add_parser("gen")
    gen.add_argument("kind", choices=["chain", "grid", "kbip"])
    gen.add_argument("dims", type=int, nargs="+")

    gc = sub.add_parser("graph-check")
    gc.add_argument("check", choices=["trianglefree", "cograph", "read1"])
    gc.add_argument("graph", nargs="?")

    cv = sub.add_parser("cover")
    cv.add_argument("action", choices=["recursive", "chessboard", "validate", "tojson",
                                       "toformula", "decide"])
    cv.add_argument("args", nargs="*")
    cv.add_argument("--graph", dest="graph_arg")
    cv.add_argument("--cover", dest="cover_arg")

    se = sub.add_parser("search")
    se.add_argument("action", choices=["readability", "extension", "2mult", "peel"])
    se.add_argument("args", nargs="*")
    se.add_argument("--path", default="", help="comma separated child indices")
    se.add_argument("--keep", default=None, help="comma separated child selection")

    bd = sub.add_parser("bounds")
    bd.add_argument("n", type=int)
    return p


def _budget(ns) -> search.SearchBudget:
    kw = {}
    if ns.budget_leaves is not None:
        kw["max_leaves"] = ns.budget_leaves
    if ns.budget_candidates is not None:
        kw["max_candidates"] = ns.budget_candidates
    if ns.budget_ms is not None:
        kw["time_limit_ms"] = ns.budget_ms
    return search.SearchBudget(**kw)


def _search_result(res: search.SearchResult) -> CommandResult:
    code = {"yes": EXIT_OK, "no": EXIT_NO, "unknown": EXIT_UNKNOWN}[res.outcome]
    doc = res.to_json()
    text = res.outcome if res.witness is None else f"yes {res.witness}"
    return CommandResult({"yes": "ok", "no": "no", "unknown": "unknown"}[res.outcome],
                         doc, text, res.stats, code)


def _tree_json(f: formula.Formula):
    if isinstance(f, formula.Var):
        return f.name
    if isinstance(f, formula.Const):
        return f.value
    return {"+" if isinstance(f, formula.Sum) else "*": [_tree_json(c) for c in f.children]}


def _dispatch(ns, stdin) -> CommandResult:
    cmd = ns.cmd
    if cmd in ("parse", "render", "sop", "csop", "nonredundant"):
        f = formula.parse_formula(_read(ns.formula, stdin).strip())
        if cmd == "parse":
            occ = formula.occurrences(f)
            doc = {"formula": str(f), "tree": _tree_json(f), "occurrences": occ.counts,
                   "read_index": occ.read_index}
            return CommandResult("ok", doc, f"{f}\nread_index={occ.read_index}")
        if cmd == "render":
            return CommandResult("ok", {"formula": str(f)}, str(f))
        if cmd == "sop":
            s = sop.sop(f)
            return CommandResult("ok", s.to_json(), s.to_text())
        if cmd == "csop":
            terms = sorted(sop.csop(f), key=sop.term_key)
            return CommandResult("ok", [sorted(t, key=formula.natural_key) for t in terms],
                                 " + ".join(sop.format_term(t) for t in terms))
        g = formula.make_nonredundant(f)
        return CommandResult("ok", {"formula": str(g)}, str(g))

    if cmd == "equiv":
        f = formula.parse_formula(_read(ns.f, stdin).strip())
        g = formula.parse_formula(_read(ns.g, stdin).strip())
        same = sop.equivalent(f, g)
        return CommandResult("ok" if same else "no", {"equivalent": same},
                             "true" if same else "false", exit_code=EXIT_OK if same else EXIT_NO)

    if cmd == "gen":
        want = {"chain": 1, "grid": 2, "kbip": 2}[ns.kind]
        if len(ns.dims) != want:
            raise UsageError(f"gen {ns.kind} takes {want} integer argument(s)")
        make = {"chain": graphs.chain_graph, "grid": graphs.grid_graph,
                "kbip": graphs.complete_bipartite}[ns.kind]
        g = make(*ns.dims)
        return CommandResult("ok", g.to_json(), json.dumps(g.to_json()))

    if cmd == "graph-check":
        text = _read(ns.graph, stdin)
        try:
            g = _graph(json.loads(text))
        except json.JSONDecodeError:
            if ns.check != "read1":
                raise ValueError("expected a graph in JSON form") from None
            s = sop.sop(formula.parse_formula(text.strip()))
            value = graphs.read1_check(s)
        else:
            if ns.check == "trianglefree":
                value = graphs.is_triangle_free(g)
            elif ns.check == "cograph":
                value = graphs.is_cograph(g)
            else:
                value = graphs.read1_check(sop.phi_of_graph(g))
        return CommandResult("ok" if value else "no", {ns.check: value},
                             "true" if value else "false",
                             exit_code=EXIT_OK if value else EXIT_NO)

    if cmd == "cover":
        return _cover(ns, stdin)
    if cmd == "search":
        return _search(ns, stdin)

    if cmd == "bounds":
        n = ns.n
        doc = {"r_upper": covers.r_upper_bound(n), "r_lower": covers.r_lower_bound(n),
               "main_theorem_k": search.main_theorem_bound(n)}
        return CommandResult("ok", doc, " ".join(f"{k}={v}" for k, v in doc.items()))
    raise UsageError(f"unknown command {cmd}")


def _cover(ns, stdin) -> CommandResult:
    act, args = ns.action, ns.args
    if act == "recursive":
        if len(args) > 1:
            raise UsageError("cover recursive takes N or a chain graph")
        if args and args[0].isdigit():
            n = int(args[0])
        else:
            g = _graph(_json(args[0] if args else None, stdin))
            if g.x_side is None or g != graphs.chain_graph(len(g.x_side)):
                raise ValueError("input graph is not a chain graph")
            n = len(g.x_side)
        c = covers.chain_cover_recursive(n)
        g = graphs.chain_graph(n)
        return CommandResult("ok", _bundle(g, c), json.dumps(_bundle(g, c)))
    if act == "chessboard":
        if len(args) != 2:
            raise UsageError("cover chessboard takes ROWS COLS")
        r, c_ = int(args[0]), int(args[1])
        g, c = graphs.grid_graph(r, c_), covers.grid_chessboard_cover(r, c_)
        return CommandResult("ok", _bundle(g, c), json.dumps(_bundle(g, c)))
    if act == "validate":
        g, c = _graph_and_cover(ns, stdin)
        ok, m = covers.validate_cover(g, c)
        return CommandResult("ok" if ok else "no", {"valid": ok, "multiplicity": m},
                             f"{str(ok).lower()} {m}", exit_code=EXIT_OK if ok else EXIT_NO)
    if act == "tojson":
        c = _cover_from_text(_read(args[0] if args else None, stdin))
        return CommandResult("ok", c.to_json(), json.dumps(c.to_json()))
    if act == "toformula":
        doc = _json(args[0] if args else ns.cover_arg, stdin)
        c = covers.BicliqueCover.from_json(doc["cover"] if isinstance(doc, dict) else doc)
        f = covers.cover_to_formula(c)
        return CommandResult("ok", {"formula": str(f)}, str(f))
    if act == "decide":
        if not args:
            raise UsageError("cover decide takes K [GRAPH]")
        k = int(args[0])
        g = _graph(_json(args[1] if len(args) > 1 else ns.graph_arg, stdin))
        stats = covers.CoverSearchStats()
        kw = {}
        if ns.budget_candidates is not None:
            kw["max_nodes"] = ns.budget_candidates
        if ns.budget_ms is not None:
            kw["time_limit_ms"] = ns.budget_ms
        c = covers.min_local_cover_decide(g, k, stats=stats, **kw)
        diag = {"nodes": stats.nodes, "elapsed_ms": round(stats.elapsed_ms, 3)}
        if c is None:
            return CommandResult("no", {"outcome": "no", "stats": diag}, "no", diag, EXIT_NO)
        doc = {"outcome": "yes", **_bundle(g, c), "stats": diag}
        return CommandResult("ok", doc, json.dumps(_bundle(g, c)), diag)
    raise UsageError(f"unknown cover action {act}")


def _graph_and_cover(ns, stdin):
    if ns.graph_arg is not None or ns.cover_arg is not None:
        if ns.graph_arg is None or ns.cover_arg is None:
            raise UsageError("give both --graph and --cover, or a bundle")
        g = _graph(_json(ns.graph_arg, stdin))
        cdoc = _json(ns.cover_arg, stdin)
    else:
        doc = _json(ns.args[0] if ns.args else None, stdin)
        if not (isinstance(doc, dict) and "graph" in doc and "cover" in doc):
            raise ValueError("expected a {graph, cover} bundle")
        g, cdoc = _graph(doc["graph"]), doc["cover"]
    if isinstance(cdoc, dict):
        cdoc = cdoc["cover"]
    return g, covers.BicliqueCover.from_json(cdoc)


def _search(ns, stdin) -> CommandResult:
    act, args = ns.action, ns.args
    budget = _budget(ns)
    if act == "readability":
        if not args:
            raise UsageError("search readability takes K [GRAPH]")
        g = _graph(_json(args[1] if len(args) > 1 else None, stdin))
        return _search_result(search.decide_readability(g, int(args[0]), budget))
    if act == "extension":
        if len(args) != 2:
            raise UsageError("search extension takes N K")
        return _search_result(search.has_read_k_extension(int(args[0]), int(args[1]), budget))
    if act == "2mult":
        if len(args) != 3:
            raise UsageError("search 2mult takes FORMULA I J")
        f = formula.parse_formula(_read(args[0], stdin).strip())
        path = search.find_2mult_for_edge(f, int(args[1]), int(args[2]))
        node = formula.node_at(f, path)
        return CommandResult("ok", {"path": list(path), "subformula": str(node)},
                             f"{','.join(map(str, path))} {node}")
    if act == "peel":
        if len(args) != 2:
            raise UsageError("search peel takes FORMULA N --path P [--keep K]")
        f = formula.parse_formula(_read(args[0], stdin).strip())
        keep = _ints(ns.keep) if ns.keep is not None else None
        h = formula.Subformula(_ints(ns.path), keep)
        psi = search.peel_step(f, h, int(args[1]))
        occ = formula.occurrences(psi)
        return CommandResult("ok", {"formula": str(psi), "read_index": occ.read_index},
                             str(psi))
    raise UsageError(f"unknown search action {act}")


def run(argv: list[str], stdin=None) -> CommandResult:
    """Parse `argv`, dispatch, and return the result without printing."""
    stdin = stdin if stdin is not None else sys.stdin
    start = time.perf_counter()
    try:
        ns = build_parser().parse_args(argv)
    except UsageError as exc:
        return CommandResult("error", None, f"usage error: {exc}", exit_code=EXIT_USAGE)
    try:
        res = _dispatch(ns, stdin)
    except UsageError as exc:
        return CommandResult("error", None, f"usage error: {exc}", exit_code=EXIT_USAGE)
    except BudgetExceeded as exc:
        return CommandResult("unknown", {"outcome": "unknown", "reason": str(exc)},
                             f"unknown: {exc}", exit_code=EXIT_UNKNOWN)
    except search.PeelError as exc:
        return CommandResult("no", {"error": str(exc)}, f"error: {exc}", exit_code=EXIT_NO)
    except (ValueError, IndexError, OSError) as exc:
        return CommandResult("error", {"error": str(exc)}, f"error: {exc}", exit_code=EXIT_USAGE)
    except AssertionError as exc:
        return CommandResult("error", {"error": str(exc)}, f"internal error: {exc}",
                             exit_code=EXIT_INTERNAL)
    res.diagnostics.setdefault("elapsed_ms", round((time.perf_counter() - start) * 1000, 3))
    res.json_mode = ns.json
    return res


def main(argv: list[str] | None = None) -> int:
    res = run(sys.argv[1:] if argv is None else argv)
    out = sys.stderr if res.status == "error" else sys.stdout
    if res.json_mode and res.payload is not None:
        print(json.dumps(res.payload, sort_keys=False), file=out)
    elif res.text:
        print(res.text, file=out)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
