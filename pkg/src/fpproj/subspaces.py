"""Linear subspaces of F_p^n: canonical bases, enumeration, annihilators, cosets.

A subspace is identified with its unique reduced-row-echelon basis, so
equality, hashing and enumeration order are all deterministic.  Cosets
of a proper nontrivial subspace W are labeled by the smallest point
code they contain; the labeling is computed by eliminating coordinates
from the most significant end, which lands exactly on that minimum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .budgets import DEFAULT_SUBSPACE_BUDGET, check_budget
from .field import (
    AmbientSpace,
    FpMatrix,
    FpVector,
    decode,
    decode_array,
    digit_table,
    encode_array,
    gaussian_binomial,
    nullspace,
    rref,
)


@dataclass(frozen=True)
class Subspace:
    """A k-dimensional linear subspace held as its canonical RREF basis."""

    ambient: AmbientSpace
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        M = FpMatrix(self.ambient, self.basis)
        R, rank, _ = rref(M)
        if rank != len(self.basis) or R.rows != M.rows:
            raise ValueError("basis must be a reduced-row-echelon matrix of full rank")

    @classmethod
    def from_rows(cls, ambient: AmbientSpace, rows) -> "Subspace":
        """Canonicalize arbitrary spanning rows into a Subspace."""
        R, _, _ = rref(FpMatrix(ambient, tuple(tuple(r) for r in rows)))
        return cls(ambient, R.rows)

    @classmethod
    def zero(cls, ambient: AmbientSpace) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: AmbientSpace) -> "Subspace":
        eye = tuple(
            tuple(1 if i == j else 0 for j in range(ambient.n)) for i in range(ambient.n)
        )
        return cls(ambient, eye)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient.n - len(self.basis)

    def is_proper_nontrivial(self) -> bool:
        return 0 < self.dim < self.ambient.n

    def basis_vectors(self) -> list[FpVector]:
        return [FpVector(self.ambient, row) for row in self.basis]

    def __repr__(self):
        return f"Subspace({self.ambient.p}^{self.ambient.n}, [{serialize_subspace(self)}])"


def serialize_subspace(W: Subspace) -> str:
    """Rows joined by ';', coordinates by ',': e.g. '1,0,2;0,1,1'."""
    return ";".join(",".join(str(c) for c in row) for row in W.basis)


def parse_subspace(ambient: AmbientSpace, text: str) -> Subspace:
    """Inverse of serialize_subspace; rows are canonicalized on the way in."""
    text = text.strip()
    if not text:
        return Subspace.zero(ambient)
    rows = []
    for part in text.split(";"):
        coords = tuple(int(c) for c in part.split(","))
        if len(coords) != ambient.n:
            raise ValueError(f"row '{part}' has {len(coords)} coordinates, expected {ambient.n}")
        rows.append(coords)
    return Subspace.from_rows(ambient, rows)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def enumerate_subspaces(
    ambient: AmbientSpace, k: int, budget=DEFAULT_SUBSPACE_BUDGET
) -> tuple[Subspace, ...]:
    """All k-dimensional subspaces, sorted by their flattened basis tuples.

    The order is a fixed total order (lexicographic on the canonical
    basis read row by row), which gives every subspace the stable index
    required by the seeded family sampler.  The total count always
    equals the Gaussian binomial.
    """
    if not 0 <= k <= ambient.n:
        raise ValueError(f"k = {k} out of range [0, {ambient.n}]")
    total = gaussian_binomial(ambient.n, k, ambient.p)
    check_budget(total, budget, f"|G({ambient.n},{k})| over F_{ambient.p}")
    return _enumerate_cached(ambient, k)


@lru_cache(maxsize=32)
def _enumerate_cached(ambient: AmbientSpace, k: int) -> tuple[Subspace, ...]:
    p, n = ambient.p, ambient.n
    bases = []
    for pivots in itertools.combinations(range(n), k):
        free_slots = [
            (i, j)
            for i in range(k)
            for j in range(pivots[i] + 1, n)
            if j not in pivots
        ]
        template = [[0] * n for _ in range(k)]
        for i, c in enumerate(pivots):
            template[i][c] = 1
        for values in itertools.product(range(p), repeat=len(free_slots)):
            rows = [list(r) for r in template]
            for (i, j), v in zip(free_slots, values):
                rows[i][j] = v
            bases.append(tuple(tuple(r) for r in rows))
    bases.sort()
    return tuple(Subspace(ambient, b) for b in bases)


def span_of_point(x: FpVector) -> Subspace:
    """The line {k*x : k in F_p} through a nonzero point."""
    if x.is_zero():
        raise ValueError("the zero vector spans no line")
    return Subspace.from_rows(x.ambient, [x.coords])


@lru_cache(maxsize=None)
def perp(W: Subspace) -> Subspace:
    """The annihilator Per(W) = {x : x.w = 0 for all w in W}.

    dim W + dim Per(W) = n, but unlike a Euclidean orthogonal
    complement, W and Per(W) may intersect nontrivially.
    """
    if W.dim == 0:
        return Subspace.full(W.ambient)
    return Subspace(W.ambient, nullspace(FpMatrix(W.ambient, W.basis)).rows)


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _basis_info(W: Subspace):
    """(basis array, pivot columns) with the array read-only int64."""
    arr = np.array(W.basis, dtype=np.int64).reshape(W.dim, W.ambient.n)
    arr.setflags(write=False)
    pivots = []
    for row in W.basis:
        pivots.append(next(j for j, c in enumerate(row) if c))
    return arr, tuple(pivots)


def contains(W: Subspace, v: FpVector) -> bool:
    """True iff v lies in W (membership solve against the RREF basis)."""
    if W.ambient != v.ambient:
        raise ValueError(f"ambient mismatch: {W.ambient} vs {v.ambient}")
    p = W.ambient.p
    x = list(v.coords)
    for row, c in zip(W.basis, _basis_info(W)[1]):
        f = x[c]
        if f:
            x = [(a - f * b) % p for a, b in zip(x, row)]
    return all(a == 0 for a in x)


def contains_codes(W: Subspace, points: np.ndarray) -> np.ndarray:
    """Vectorized membership for a (m, n) coordinate matrix."""
    p = W.ambient.p
    basis, pivots = _basis_info(W)
    x = points.copy()
    for row, c in zip(basis, pivots):
        x = (x - x[:, c : c + 1] * row) % p
    return ~x.any(axis=1)


@lru_cache(maxsize=None)
def span_codes(W: Subspace) -> np.ndarray:
    """Sorted codes of all p^dim points of W (read-only)."""
    if W.dim == 0:
        out = np.zeros(1, dtype=np.int64)
    else:
        basis, _ = _basis_info(W)
        coeffs = digit_table(W.ambient.p, W.dim)
        pts = (coeffs @ basis) % W.ambient.p
        out = np.sort(encode_array(W.ambient, pts))
    out.setflags(write=False)
    return out


# ---------------------------------------------------------------------------
# cosets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CosetLabel:
    """A coset x+W named by the smallest point code it contains."""

    subspace: Subspace
    representative: int

    def representative_vector(self) -> FpVector:
        return decode(self.subspace.ambient, self.representative)


@lru_cache(maxsize=None)
def _coset_reduction(W: Subspace):
    """Basis of W re-reduced against trailing (highest-index) entries.

    Row r is scaled to 1 at its trailing column trail[r], and every
    other row vanishes there.  Subtracting x[trail[r]] * row_r for all r
    zeroes the trailing columns of x; any other coset element differs
    first (from the most significant coordinate down) by a nonzero
    entry at some trail[r], so the reduced point is the coset minimum
    in point-code order.
    """
    p, n = W.ambient.p, W.ambient.n
    rows = [list(r) for r in W.basis]
    trail = []
    r = 0
    for col in reversed(range(n)):
        sel = None
        for i in range(r, len(rows)):
            if rows[i][col]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        trail.append(col)
        r += 1
        if r == len(rows):
            break
    assert r == W.dim
    arr = np.array(rows, dtype=np.int64).reshape(W.dim, n)
    arr.setflags(write=False)
    return arr, tuple(trail)


def _require_proper(W: Subspace):
    if not W.is_proper_nontrivial():
        raise ValueError("cosets are only defined for proper nontrivial subspaces")


def reduce_points(W: Subspace, points: np.ndarray) -> np.ndarray:
    """Coset-minimum codes for a (m, n) coordinate matrix (vectorized)."""
    p = W.ambient.p
    rows, trail = _coset_reduction(W)
    x = points
    for row, c in zip(rows, trail):
        x = (x - x[:, c : c + 1] * row) % p
    return encode_array(W.ambient, x)


def coset_label(W: Subspace, x: FpVector) -> CosetLabel:
    """Label of the coset x+W; two points get equal labels iff x-y in W."""
    _require_proper(W)
    if W.ambient != x.ambient:
        raise ValueError(f"ambient mismatch: {W.ambient} vs {x.ambient}")
    pts = np.array([x.coords], dtype=np.int64)
    return CosetLabel(W, int(reduce_points(W, pts)[0]))


def enumerate_cosets(W: Subspace) -> list[CosetLabel]:
    """All p^(n-dim W) coset labels, sorted by representative code."""
    _require_proper(W)
    ambient = W.ambient
    _, trail = _coset_reduction(W)
    free = [c for c in range(ambient.n) if c not in trail]
    coeffs = digit_table(ambient.p, len(free))
    pts = np.zeros((len(coeffs), ambient.n), dtype=np.int64)
    pts[:, free] = coeffs
    codes = np.sort(encode_array(ambient, pts))
    return [CosetLabel(W, int(c)) for c in codes]


def coset_points(label: CosetLabel) -> np.ndarray:
    """Sorted codes of the points of the coset."""
    W = label.subspace
    rep = decode_array(W.ambient, np.array([label.representative], dtype=np.int64))
    if W.dim == 0:
        pts = rep
    else:
        basis, _ = _basis_info(W)
        coeffs = digit_table(W.ambient.p, W.dim)
        pts = ((coeffs @ basis) + rep) % W.ambient.p
    return np.sort(encode_array(W.ambient, pts))
