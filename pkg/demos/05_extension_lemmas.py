"""Locating 2-mult subformulas for chain edges, and peeling a block
product off an extension.

Run:  python3 demos/05_extension_lemmas.py
"""
from readk.formula import Subformula, node_at, occurrences, parse_formula, subformula_at
from readk.search import PeelError, find_2mult_for_edge, peel_step, scan_2mult_for_edge
from readk.sop import is_extension_of_chain, sop

f = parse_formula("x1*(y1+y2+y3)+y3*(x2+x3)+x2*y2+x1*x2*x3+y1*y3")
print("extension of G(3):", f, is_extension_of_chain(f, 3))
for i in range(1, 4):
    for j in range(i, 4):
        path = find_2mult_for_edge(f, i, j, 3)
        assert path in scan_2mult_for_edge(f, i, j)
        print(f"  edge x{i}y{j}: {node_at(f, path)}  at {path}")

g = parse_formula("x1*(y1+y2)+x2*y2+(x1+x2)*(y1+y2)*x1*x2")
# the product with four factors; keep only its two block sums
(path,) = [(i,) for i, c in enumerate(g.children) if len(getattr(c, "children", ())) == 4]
h = Subformula(path, (2, 3))
print("\npeel", subformula_at(g, h), "from", g)
psi = peel_step(g, h, 2)
print("  result", psi, "| minterms", sop(psi))
before, after = occurrences(g), occurrences(psi)
print("  occurrences", {v: (before[v], after[v]) for v in sorted(g.variables)})

bad = parse_formula("(x1+x2)*(y1+y2)+x1*(y1+y2)+x2*y2")
try:
    peel_step(bad, (0,), 2)
except PeelError as exc:
    print("\nrejected:", exc)
