"""Discrete Fourier transform over F_p^n and the exact coset-energy identity.

For the indicator of E the transform is
    E_hat(xi) = sum over x in E of exp(-2*pi*i * (x.xi mod p) / p),
with Parseval mass sum |E_hat|^2 = p^n |E|.  The identity checked by
verify_coset_identity says that the squared-fiber energy of E over the
cosets of W equals p^-m times the spectral mass on the annihilator
Per(W), where m = codim W.  The spatial side is an exact integer and is
always treated as the reference; the spectral side is the approximation
under test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .budgets import DEFAULT_POINT_BUDGET, check_budget
from .field import AmbientSpace, decode_array
from .pointsets import PointSet
from .projection import fiber_counts
from .subspaces import Subspace, _require_proper, perp, span_codes


@dataclass(frozen=True)
class SpectralTable:
    """E_hat(xi) for all p^n frequencies, indexed by the code of xi."""

    ambient: AmbientSpace
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.ambient.point_count,):
            raise ValueError("spectral table must hold one value per frequency")
        self.values.setflags(write=False)


def dft(E: PointSet, method: str = "auto", budget=DEFAULT_POINT_BUDGET) -> SpectralTable:
    """Transform of the indicator of E.

    method 'factored' (the default under 'auto') evaluates one axis at
    a time in O(n p^(n+1)) via the FFT; 'direct' sums characters per
    frequency in O(p^n |E|) and exists as the independent cross-check.
    """
    ambient = E.ambient
    check_budget(ambient.point_count, budget, "p^n for the transform")
    if method == "auto":
        method = "factored"
    if method == "factored":
        values = _dft_factored(E)
    elif method == "direct":
        values = _dft_direct(E)
    else:
        raise ValueError(f"unknown method {method!r}")
    return SpectralTable(ambient, values)


def _dft_factored(E: PointSet) -> np.ndarray:
    p, n = E.ambient.p, E.ambient.n
    indicator = E.mask.astype(np.complex128)
    # code c = sum_i x_i p^i puts coordinate n-1 on the leading axis of a
    # C-order reshape; fftn treats axes independently, so frequency codes
    # come back in the same little-endian order.
    cube = indicator.reshape((p,) * n)
    return np.fft.fftn(cube).reshape(-1)


def _dft_direct(E: PointSet, chunk: int = 4096) -> np.ndarray:
    ambient = E.ambient
    p = ambient.p
    roots = np.exp(-2j * np.pi * np.arange(p) / p)
    pts = E.coordinates()
    out = np.empty(ambient.point_count, dtype=np.complex128)
    if pts.shape[0] == 0:
        out[:] = 0
        return out
    freqs = decode_array(ambient, np.arange(ambient.point_count, dtype=np.int64))
    for start in range(0, ambient.point_count, chunk):
        block = freqs[start : start + chunk]
        dots = (block @ pts.T) % p
        out[start : start + block.shape[0]] = roots[dots].sum(axis=1)
    return out


def plancherel_defect(E: PointSet, table: SpectralTable | None = None) -> float:
    """| sum |E_hat|^2 - p^n |E| |; small iff the transform is healthy."""
    if table is None:
        table = dft(E)
    mass = float(np.sum(np.abs(table.values) ** 2))
    return abs(mass - E.ambient.point_count * E.size)


def coset_energy_spectral(
    E: PointSet, W: Subspace, table: SpectralTable | None = None
) -> float:
    """p^-m times the spectral mass of E on the annihilator Per(W).

    Only the p^m frequencies spanned by Per(W) are touched, so after
    the transform this costs O(p^m), not O(p^n).
    """
    _require_proper(W)
    if table is None:
        table = dft(E)
    m = W.codim
    freqs = span_codes(perp(W))
    mass = float(np.sum(np.abs(table.values[freqs]) ** 2))
    return mass / E.ambient.p**m


class CosetIdentityResult(NamedTuple):
    spatial: int
    spectral: float
    passed: bool


def verify_coset_identity(
    E: PointSet, W: Subspace, tol: float = 1e-6, table: SpectralTable | None = None
) -> CosetIdentityResult:
    """Exact squared-fiber energy vs its spectral evaluation.

    pass iff |spatial - spectral| <= tol * max(1, spatial); the integer
    spatial side is the reference.
    """
    counts = fiber_counts(E, W)
    spatial = int(np.dot(counts, counts))
    spectral = coset_energy_spectral(E, W, table=table)
    passed = abs(spatial - spectral) <= tol * max(1, spatial)
    return CosetIdentityResult(spatial, spectral, passed)
