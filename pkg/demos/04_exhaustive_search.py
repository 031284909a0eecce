"""Exhaustive search for read-k formulas, with budgets and the
independent closure oracle.

Run:  python3 demos/04_exhaustive_search.py
"""
from readk.graphs import Graph, chain_graph
from readk.search import (
    SearchBudget, closure_readability_oracle, decide_readability, has_read_k_extension,
    main_theorem_bound,
)

res = has_read_k_extension(2, 1)
print("read-1 extension of G(2):", res.outcome, res.stats)
res = decide_readability(chain_graph(2), 2)
print("G(2) read-2:", res.outcome, "witness", res.witness)
res = has_read_k_extension(3, 2)
print("read-2 extension of G(3):", res.outcome, "witness", res.witness)

# A path on four vertices plus an isolated one goes through full synthesis.
g = Graph.from_edges([("a", "b"), ("b", "c"), ("c", "d")], ["e"])
for k in (1, 2):
    res = decide_readability(g, k)
    print(f"\nP4 + isolated vertex, k={k}: {res.outcome} {res.witness or ''}")
    print("  closure oracle agrees:", closure_readability_oracle(g, k) == bool(res))

# A tiny budget turns the answer into "unknown", never into "no".  Work
# already done for the same variable set is cached and costs nothing, so
# use a graph on six vertices that has not been searched yet.
p5 = Graph.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")], ["f"])
res = decide_readability(p5, 2, SearchBudget(max_candidates=10))
print("\nwith 10 candidates:", res.outcome, "-", res.stats.get("reason"))

print("\nlargest k with 1^1*2^2*...*k^k <= n:")
for n in (2, 4, 107, 108, 27648):
    print(f"  n={n}: {main_theorem_bound(n)}")
