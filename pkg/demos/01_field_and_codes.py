"""Tour of the exact F_p layer: vectors, point codes, row reduction, counts.

Run with:  python3 demos/01_field_and_codes.py
"""

from fpproj import (
    AmbientSpace,
    FpMatrix,
    FpVector,
    decode,
    dot,
    encode,
    gaussian_binomial,
    nullspace,
    rref,
)

# The pair (p, n) fixes the space and the point-encoding order: point
# codes are little-endian base p, coordinate 0 is the least significant
# digit.
ambient = AmbientSpace(5, 3)
print(f"working in F_{ambient.p}^{ambient.n} with {ambient.point_count} points")

v = FpVector(ambient, (3, 1, 4))
print("vector", v.coords, "-> code", encode(v))
print("code 33 -> vector", decode(ambient, 33).coords)

u = FpVector(ambient, (2, 2, 1))
print("dot product", v.coords, ".", u.coords, "=", dot(v, u))

# Row reduction is the canonical form behind every subspace in the
# package: same row space in, identical matrix out.
M = FpMatrix(ambient, ((2, 4, 1), (4, 3, 2), (1, 2, 3)))
R, rank, pivots = rref(M)
print("\nrref of", M.rows)
for row in R.rows:
    print("   ", row)
print("rank", rank, "pivots", pivots)

K = nullspace(M)
print("nullspace rows:", K.rows, "(rank + nullity =", rank + len(K.rows), ")")

# Exact subspace counts: the number of k-dimensional subspaces of F_p^n.
print("\nsubspace counts over F_3:")
for n in range(1, 5):
    print(f"  n={n}:", [gaussian_binomial(n, k, 3) for k in range(n + 1)])
