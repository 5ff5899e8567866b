"""Walk through two hand-written ramification structures and verify them.

Run with:  python demos/check_example_pairs.py
"""

from ramstruct import build_group, check_ramification, parse_tuple, sigma

# A group of order 128 whose squares form a set of exactly 8 elements. Both
# tuple sizes being odd is fine here, which is what makes this pair notable.
G = build_group("C2xC4xC4xC4")
t1 = parse_tuple(G, "[x2; x3; x4; x2^-1; x3^-1; x4^-1*x1; x1]")
t2 = parse_tuple(G, "[x2*x3*x1; x2*x4; x3*x4; x2*x3*x4; x2*x3*x4*x1]")

result = check_ramification(G, t1, t2)
print(f"{G.describe()}: size {result.size}")
print(f"  sigma sizes: {sigma(G, t1).cardinality}, {sigma(G, t2).cardinality}")
print(f"  disjoint: {(sigma(G, t1) & sigma(G, t2)).cardinality == 1}")

# A nilpotent group of order 72 admitting size (5,7) even though its Sylow
# 2-subgroup (elementary abelian of order 8) cannot host (5,7) on its own:
# the 2-part of the second tuple quietly uses only 6 nontrivial slots.
K = build_group("C6xC6xC2")
u1 = parse_tuple(K, "[x1; x2; x3; x2^-1; (x1*x3)^-1]")
u2 = parse_tuple(
    K, "[x1*x2; x1*x2; (x1*x2)^-2; x1*x2*x3; (x1*x2*x3)^-1; x1^2*x2*x3; (x1^2*x2*x3)^-1]"
)
result = check_ramification(K, u1, u2)
print(f"{K.describe()}: size {result.size}")

from ramstruct import predict_nilpotent

scs = predict_nilpotent(build_group("C2xC2xC2"))
print(f"C2xC2xC2 admits (5,7): {scs.membership(5, 7)}  (both odd is barred there)")
