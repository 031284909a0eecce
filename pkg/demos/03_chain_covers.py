"""Local biclique covers of chain graphs: the halving construction against
exact search, next to the lower bound.

Run:  python3 demos/03_chain_covers.py
"""
import time

from readk.covers import (
    chain_cover_recursive, local_cover_number, r_lower_bound, r_upper_bound, validate_cover,
)
from readk.graphs import chain_graph

print(" n  halving  exact  upper  lower")
for n in range(1, 9):
    g = chain_graph(n)
    ok, mult = validate_cover(g, chain_cover_recursive(n))
    assert ok
    t = time.perf_counter()
    exact = local_cover_number(g)
    ms = (time.perf_counter() - t) * 1000
    print(f"{n:2d}  {mult:7d}  {exact:5d}  {r_upper_bound(n):5d}  {r_lower_bound(n):5d}"
          f"   ({ms:.0f} ms)")

print("\ncover of G(3) by halving:")
for b in chain_cover_recursive(3):
    print("  ", sorted(b.left), "x", sorted(b.right))

print("\nhalving stays within 1+ceil(log2 n) up to 64:",
      all(validate_cover(chain_graph(n), chain_cover_recursive(n))[1] <= r_upper_bound(n)
          for n in range(1, 65)))
