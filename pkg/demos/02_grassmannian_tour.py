"""Enumerate subspaces, take annihilators, and label cosets.

Run with:  python3 demos/02_grassmannian_tour.py
"""

from fpproj import (
    AmbientSpace,
    FpVector,
    coset_label,
    enumerate_cosets,
    enumerate_subspaces,
    gaussian_binomial,
    perp,
    serialize_subspace,
)

ambient = AmbientSpace(3, 3)

# Every 2-dimensional subspace of F_3^3, once each, in a fixed order.
planes = enumerate_subspaces(ambient, 2)
print(f"|G(3,2)| over F_3 = {len(planes)} (formula: {gaussian_binomial(3, 2, 3)})")
for W in planes[:5]:
    print("   ", serialize_subspace(W))
print("    ...")

# The annihilator Per(W) = {x : x.w = 0 for all w in W} has complementary
# dimension; applying it twice returns the original subspace.
W = planes[7]
V = perp(W)
print("\nW   =", serialize_subspace(W))
print("Per =", serialize_subspace(V), f"(dims {W.dim} + {V.dim} = 3)")
print("Per(Per(W)) == W:", perp(V) == W)

# Unlike Euclidean orthogonal complements, W and Per(W) can intersect:
x = FpVector(ambient, V.basis[0])
from fpproj import contains

print("Per(W) basis vector inside W:", contains(W, x))

# Cosets of W partition the 27 points into 3 classes; each class is
# named by the smallest point code it contains.
labels = enumerate_cosets(W)
print("\ncoset representatives of W:", [l.representative_vector().coords for l in labels])
y = FpVector(ambient, (2, 2, 2))
print("the coset of", y.coords, "is", coset_label(W, y).representative_vector().coords)
