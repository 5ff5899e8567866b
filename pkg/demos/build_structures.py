"""Build ramification structures constructively, without search.

Run with:  python demos/build_structures.py
"""

from ramstruct import (
    build_group,
    construct_any,
    elementary_abelian_structure,
    product_combine,
    product_project,
    render_tuple,
)

# Elementary abelian groups: small base pairs grown by size and rank steps.
S = elementary_abelian_structure(5, 2, 3, 3)
print(f"C5xC5 at (3,3): t1 = {render_tuple(S.t1)}, t2 = {render_tuple(S.t2)}")
S = elementary_abelian_structure(2, 4, 7, 9)
print(f"C2^4 at (7,9): built on {S.group.describe()}")

# Prime exponent: construct on the maximal elementary abelian quotient, then
# lift the tuples back up entry by entry.
res = construct_any(build_group("heis(5)"), 3, 4)
print(f"heis(5) at (3,4) via {res.method}: t1 = {render_tuple(res.structure.t1)}")

# Coprime pieces combine by zipping padded tuples, and project back out.
S3 = elementary_abelian_structure(3, 2, 5, 7)
S2 = elementary_abelian_structure(2, 3, 5, 6)
combined = product_combine(S3, S2)
print(f"combined on order-{combined.group.order} product: size {combined.size}")
recovered = product_project(combined, "left", target_size=(5, 7))
print(f"projected back to {recovered.group.describe()}: size {recovered.size}")

# The dispatcher picks whichever route applies, falling back to search when
# the characterizations are silent (here: a rank-3 group of exponent 4 with
# both sizes odd, decided exhaustively).
res = construct_any(build_group("C4xC4xC4"), 7, 7)
print(f"C4xC4xC4 at (7,7) via {res.method}: size {res.structure.size}")
