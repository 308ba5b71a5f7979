"""Coset projections, exceptional-set counts and energies.

The projection of E along a proper nontrivial subspace W is the set of
cosets of W that meet E.  Its size is at most min(|E|, p^m) where
m = codim W, since the p^m cosets partition the space and each member
of E lands in exactly one of them.

All quantities here are exact integers or exact rationals; thresholds
with fractional exponents are compared by cross-multiplied integer
powers, never by floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .budgets import DEFAULT_SUBSPACE_BUDGET
from .exact import le_pow
from .pointsets import PointSet
from .subspaces import (
    CosetLabel,
    Subspace,
    _require_proper,
    enumerate_subspaces,
    reduce_points,
)


@dataclass(frozen=True)
class ProjectionImage:
    """The cosets of W that intersect E, as canonical labels."""

    subspace: Subspace
    labels: frozenset[CosetLabel]

    @property
    def size(self) -> int:
        return len(self.labels)


def _check_pair(E: PointSet, W: Subspace):
    if E.ambient != W.ambient:
        raise ValueError(f"ambient mismatch: {E.ambient} vs {W.ambient}")
    _require_proper(W)


def image_codes(E: PointSet, W: Subspace) -> np.ndarray:
    """Coset representative of each member of E (not deduplicated)."""
    _check_pair(E, W)
    return reduce_points(W, E.coordinates())


def project(E: PointSet, W: Subspace) -> ProjectionImage:
    """The projection of E along W: every coset of W meeting E."""
    reps = np.unique(image_codes(E, W))
    return ProjectionImage(W, frozenset(CosetLabel(W, int(r)) for r in reps))


def fiber_counts(E: PointSet, W: Subspace) -> np.ndarray:
    """|E ∩ coset| for every coset of W that meets E (sorted by label)."""
    _, counts = np.unique(image_codes(E, W), return_counts=True)
    return counts


def energy(E: PointSet, planes: Iterable[CosetLabel]) -> int:
    """Sum over the listed cosets of |E ∩ coset|^2 (exact integer)."""
    planes = list(planes)
    by_subspace: dict[Subspace, list[int]] = {}
    for label in planes:
        by_subspace.setdefault(label.subspace, []).append(label.representative)
    total = 0
    for W, reps in by_subspace.items():
        codes = image_codes(E, W) if E.size else np.empty(0, dtype=np.int64)
        hit, counts = np.unique(codes, return_counts=True)
        lookup = dict(zip(hit.tolist(), counts.tolist()))
        for rep in reps:
            c = lookup.get(rep, 0)
            total += c * c
    return total


def _member_tuple(G) -> tuple[Subspace, ...]:
    members = tuple(G)
    if members:
        m = members[0].codim
        if any(W.codim != m for W in members):
            raise ValueError("family members must share one codimension")
    return members


def family_coset_energy(E: PointSet, G) -> int:
    """Energy of E over all cosets of all members of G (exact integer).

    Equals sum over W in G, over the p^m cosets of W, of |E ∩ coset|^2.
    """
    total = 0
    for W in _member_tuple(G):
        counts = fiber_counts(E, W)
        total += int(np.dot(counts, counts))
    return total


def incidence_decomposition(E: PointSet, G) -> tuple[int, int]:
    """(incidences, ordered distinct pairs) over all cosets of members of G.

    The first component is sum |E ∩ coset| = |G|*|E| because the cosets
    of each W partition the space; the two components always sum to
    family_coset_energy(E, G).
    """
    incidences = 0
    pairs = 0
    for W in _member_tuple(G):
        counts = fiber_counts(E, W)
        incidences += int(counts.sum())
        pairs += int(np.dot(counts, counts - 1))
    return incidences, pairs


def cauchy_schwarz_gap(E: PointSet, W: Subspace) -> tuple[int, int]:
    """(|E|^2, |image| * sum of squared fiber sizes); left <= right always."""
    counts = fiber_counts(E, W)
    lhs = E.size * E.size
    rhs = int(counts.size) * int(np.dot(counts, counts))
    return lhs, rhs


def family_projection_stats(E: PointSet, G) -> tuple[np.ndarray, np.ndarray]:
    """Per-member image sizes and coset energies, in family order.

    One pass over the family feeds every threshold query; the sweep
    runner uses this to evaluate several N against the same family.
    """
    members = _member_tuple(G)
    sizes = np.empty(len(members), dtype=np.int64)
    energies = np.empty(len(members), dtype=np.int64)
    for i, W in enumerate(members):
        counts = fiber_counts(E, W)
        sizes[i] = counts.size
        energies[i] = np.dot(counts, counts)
    return sizes, energies


@dataclass(frozen=True)
class ExceptionalReport:
    """Census of family members whose projection of E is small.

    bound is the exact rational |G| * N * (1/|E| + p^-m); ratio is
    count/bound.  pairs_bound_ok records the exact inequality
    count * |E|^2 <= (energy of E over the exceptional cosets) * N,
    which follows from Cauchy-Schwarz whenever N >= 1.
    """

    family_size: int
    threshold: int
    count: int
    bound: Fraction
    ratio: Fraction
    pairs_bound_ok: bool


def exceptional_report_from_stats(
    E: PointSet, m: int, sizes: np.ndarray, energies: np.ndarray, N: int
) -> ExceptionalReport:
    if E.size == 0:
        raise ValueError("exceptional counts need a nonempty set (bound uses 1/|E|)")
    if N < 0:
        raise ValueError("threshold N must be nonnegative")
    p = E.ambient.p
    exceptional = sizes <= N
    count = int(exceptional.sum())
    bound = Fraction(len(sizes) * N * (p**m + E.size), E.size * p**m)
    ratio = Fraction(count) / bound if bound else Fraction(0)
    if N >= 1:
        theta_energy = int(energies[exceptional].sum())
        pairs_ok = count * E.size * E.size <= theta_energy * N
    else:
        pairs_ok = True
    return ExceptionalReport(len(sizes), N, count, bound, ratio, pairs_ok)


def exceptional_count(E: PointSet, G, N: int) -> ExceptionalReport:
    """Count members of G with |projection of E| <= N, with bound and ratio."""
    members = _member_tuple(G)
    if not members:
        raise ValueError("empty family")
    m = members[0].codim
    sizes, energies = family_projection_stats(E, members)
    return exceptional_report_from_stats(E, m, sizes, energies, N)


# ---------------------------------------------------------------------------
# explicit-constant check over the full Grassmannian
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExplicitBoundCheck:
    """Result of the exceptional census with explicit constants 1/10 and 1/2.

    branch 'small' applies when |E| <= p^m: members with image size at
    most p^t/10 are counted against (1/2) p^(m(n-m)-(m-t)).  branch
    'large' applies when |E| > p^m: threshold p^m/10, bound
    (1/2) p^(m(n-m)-(s-m)) with p^s = |E| (an exact rational).
    vacuous marks the |E| = 1 case, where no valid t exists and the
    check passes by convention.
    """

    branch: str
    count: int
    bound: Fraction | None
    bound_float: float
    passed: bool
    vacuous: bool = False


def exceptional_bound_check(
    E: PointSet, m: int, t: Fraction | None = None, budget=DEFAULT_SUBSPACE_BUDGET
) -> ExplicitBoundCheck:
    """Exact census of small projections over all of G(n, n-m).

    Thresholds and bounds with fractional exponents are compared by
    integer cross-multiplication: image <= p^(r/q)/10 iff
    (10*image)^q <= p^r, and count <= (1/2) p^(e/q) iff
    (2*count)^q <= p^e.
    """
    if E.size == 0:
        raise ValueError("the census needs a nonempty set")
    ambient = E.ambient
    p, n = ambient.p, ambient.n
    if not 1 <= m <= n - 1:
        raise ValueError(f"m = {m} out of range [1, {n - 1}]")
    grassmannian = enumerate_subspaces(ambient, n - m, budget=budget)
    sizes = [project(E, W).size for W in grassmannian]

    if E.size <= p**m:
        if t is None:
            raise ValueError("branch with |E| <= p^m needs the exponent t")
        t = Fraction(t)
        if t <= 0:
            raise ValueError("t must be positive")
        q, r = t.denominator, t.numerator
        vacuous = E.size == 1
        if not vacuous and p**r > E.size**q:
            raise ValueError(f"t = {t} exceeds log_p|E|; the census is undefined there")
        count = sum(1 for s in sizes if (10 * s) ** q <= p**r)
        expo = Fraction(m * (n - m) - m) + t
        passed = True if vacuous else le_pow(2 * count, 1, p, expo)
        bound_float = 0.5 * float(p) ** float(expo)
        return ExplicitBoundCheck("small", count, None, bound_float, passed, vacuous)

    threshold_num, threshold_den = p**m, 10
    count = sum(1 for s in sizes if s * threshold_den <= threshold_num)
    bound = Fraction(p ** (m * (n - m) + m), 2 * E.size)
    return ExplicitBoundCheck("large", count, bound, float(bound), count <= bound)
