"""Formulas, their sum-of-products forms, and the non-redundancy rewrite.

Run:  python3 demos/01_formulas_and_sop.py
"""
from readk.formula import make_nonredundant, occurrences, parse_formula
from readk.sop import csop, format_term, graph_of_function, is_normal, sop
from readk.truthtable import minimal_true_points, truth_table, variable_order

f = parse_formula("a1*(a1+a2)")
print("formula          ", f, " read index", occurrences(f).read_index)
print("full expansion   ", " + ".join(sorted(format_term(t) for t in csop(f))))
print("after absorption ", sop(f))

# The minterms are the minimal true points of the truth table.
g = parse_formula("x1*(y1+y2+y3)+y3*(x2+x3)+x2*y2+x1*x2*x3+y1*y3")
names = variable_order(g)
table = truth_table(g, names)
print("\nminterms of", g)
print("  by expansion   ", sop(g))
print("  by truth table ", sorted(format_term(t) for t in minimal_true_points(table, names)))

# Two factors sharing a summand collapse into one sum.
h = parse_formula("(a1+a2)*(a1+a3)*(a1+a4)")
print("\nrewrite", h, "->", make_nonredundant(h))

# Normality compares the minterms with the maximal cliques of the co-occurrence graph.
for text in ("a1*a2*a3", "a1*a2+a2*a3+a1*a3"):
    s = sop(parse_formula(text))
    edges = sorted("".join(sorted(e)) for e in graph_of_function(s).edges)
    print(f"\n{text}: co-occurrence edges {edges}, normal = {is_normal(s)}")
