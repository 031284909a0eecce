"""Read-once recognition, and why grids need two occurrences per vertex.

Run:  python3 demos/02_read_once_and_grids.py
"""
from readk.covers import cover_to_formula, grid_chessboard_cover, validate_cover
from readk.formula import occurrences
from readk.graphs import complete_bipartite, grid_graph, is_cograph, read1_check
from readk.sop import phi_of_graph, sop

k = complete_bipartite(2, 3)
print("K_{2,3}: cograph", is_cograph(k), " read-once", read1_check(phi_of_graph(k)))

for rows, cols in [(1, 1), (2, 2), (3, 4)]:
    g = grid_graph(rows, cols)
    cover = grid_chessboard_cover(rows, cols)
    ok, mult = validate_cover(g, cover)
    f = cover_to_formula(cover)
    print(f"\n{rows}x{cols} grid: {len(g.vertices)} vertices, {len(g.edges)} edges")
    print("  read-once:", read1_check(phi_of_graph(g)))
    print(f"  chessboard cover: {len(cover)} bicliques, valid {ok}, multiplicity {mult}")
    print("  compiled formula reads each vertex at most", occurrences(f).read_index, "times;",
          "same function:", sop(f) == phi_of_graph(g))
    if rows * cols == 1:
        print("  formula:", f)
