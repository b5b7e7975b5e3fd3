"""Generalized depolarizing Liouvillian ``L(rho) = tr[rho] sigma - rho`` and
its semigroup, including tensor powers of the semigroup."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import ArgumentError, ResourceError
from .matcore import (
    DEFAULT_DIM_CAP,
    DensityMatrix,
    HermitianMatrix,
    as_density,
    partial_trace,
)


def liouvillian_apply(sigma, rho) -> HermitianMatrix:
    sigma, rho = as_density(sigma), as_density(rho)
    if sigma.dim != rho.dim:
        raise ArgumentError(f"dimension mismatch: {sigma.dim} vs {rho.dim}")
    return HermitianMatrix(rho.trace() * sigma.matrix - rho.matrix)


def semigroup_apply(sigma, t: float, rho) -> DensityMatrix:
    """``(1 - e^{-t}) sigma + e^{-t} rho``."""
    if t < 0:
        raise ArgumentError("t must be nonnegative")
    sigma, rho = as_density(sigma), as_density(rho)
    if sigma.dim != rho.dim:
        raise ArgumentError(f"dimension mismatch: {sigma.dim} vs {rho.dim}")
    p = math.exp(-t)
    return DensityMatrix._unchecked((1.0 - p) * sigma.matrix + p * rho.matrix, rho.local_dims)


@dataclass(frozen=True)
class DepolarizingChannel:
    """The channel ``T_t`` with fixed point ``sigma``."""

    sigma: DensityMatrix
    t: float

    def __post_init__(self):
        if self.t < 0:
            raise ArgumentError("t must be nonnegative")
        object.__setattr__(self, "sigma", as_density(self.sigma))

    def __call__(self, rho) -> DensityMatrix:
        return semigroup_apply(self.sigma, self.t, rho)

    def tensor_power(self, n: int, rho) -> DensityMatrix:
        return tensor_semigroup_apply(self.sigma, self.t, n, rho)


def _site_inputs(sigma, t, n, rho, cap):
    if t < 0:
        raise ArgumentError("t must be nonnegative")
    if n < 1:
        raise ArgumentError("n must be a positive integer")
    sigma = as_density(sigma)
    d = sigma.dim
    if d ** n > cap:
        raise ResourceError(f"dimension {d}^{n} exceeds cap {cap}")
    dims = (d,) * n
    if isinstance(rho, DensityMatrix):
        if rho.local_dims != dims:
            raise ArgumentError(f"rho has local dims {rho.local_dims}, expected {dims}")
    else:
        rho = as_density(rho, dims)
    return sigma, rho, d


def _embed(reduced: np.ndarray, keep: list[int], sigma: np.ndarray, n: int) -> np.ndarray:
    # rebuild an n-site operator: `reduced` lives on `keep`, sigma fills the rest
    d = sigma.shape[0]
    operands = []
    if keep:
        operands += [reduced.reshape((d,) * (2 * len(keep))), keep + [n + k for k in keep]]
    for i in range(n):
        if i not in keep:
            operands += [sigma, [i, n + i]]
    out = np.einsum(*operands, list(range(2 * n)))
    return out.reshape(d ** n, d ** n)


def tensor_semigroup_apply(sigma, t: float, n: int, rho, cap: int = DEFAULT_DIM_CAP) -> DensityMatrix:
    """``(T_t)^{\\otimes n}(rho)`` by applying the single-site channel to each factor.

    Each step replaces ``rho`` with ``p rho + (1-p) sigma_i (x) tr_i[rho]``,
    ``p = e^{-t}``, at cost ``O(n d^{2n})``.
    """
    sigma, rho, d = _site_inputs(sigma, t, n, rho, cap)
    p = math.exp(-t)
    m = rho.matrix
    for i in range(n):
        t4 = m.reshape((d,) * (2 * n))
        rest = [k for k in range(n) if k != i]
        row = list(range(n))
        col = [n + k if k != i else k for k in range(n)]
        reduced = np.einsum(t4, row + col, rest + [n + k for k in rest])
        m = p * m + (1.0 - p) * _embed(reduced, rest, sigma.matrix, n)
    return DensityMatrix._unchecked(m, (d,) * n)


def tensor_semigroup_expansion(sigma, t: float, n: int, rho, cap: int = DEFAULT_DIM_CAP) -> DensityMatrix:
    """Same map via the subset sum
    ``sum_F (1-p)^{|F|} p^{n-|F|} sigma^{(x) F} (x) rho|_{F^c}``.

    Costs ``2^n`` partial traces; kept as an independent cross-check of
    :func:`tensor_semigroup_apply`.
    """
    sigma, rho, d = _site_inputs(sigma, t, n, rho, cap)
    p = math.exp(-t)
    total = np.zeros((d ** n, d ** n), dtype=np.complex128)
    for k in range(n + 1):
        for replaced in combinations(range(n), k):
            keep = [i for i in range(n) if i not in replaced]
            reduced = partial_trace(rho, keep).matrix if keep else np.ones((1, 1))
            total += (1.0 - p) ** k * p ** (n - k) * _embed(reduced, keep, sigma.matrix, n)
    return DensityMatrix._unchecked(total, (d,) * n)
