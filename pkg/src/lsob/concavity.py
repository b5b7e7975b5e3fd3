"""Strong concavity of von Neumann entropy along a segment of states.

For ``rho_q = (1-q) sigma + q rho`` the gap
``S(rho_q) - (1-q) S(sigma) - q S(rho)`` is bounded below by

* ``max{q (1 - q^{c(sigma)}) D(rho||sigma), (1-q)(1 - (1-q)^{c(rho)}) D(sigma||rho)}``
  with ``c = 2 alpha_1 - 1`` evaluated at the state's smallest eigenvalue;
* the comparison bounds of Kim et al. on the relative entropy between the
  averaged and reversed mixtures, and on ``q(1-q) ||rho - sigma||_1^2 / 2``;
* the first bound with each relative entropy replaced by its improved
  Pinsker lower bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .entropy import SUPPORT_TOL, relative_entropy, von_neumann_entropy
from .errors import ArgumentError
from .logsobolev import min_q_ratio
from .matcore import DensityMatrix, as_density, trace_norm
from .pinsker import improved_pinsker_constant

KIM_EXCLUSION = 1e-3
FULL_RANK_TOL = 1e-12


class KimBounds(NamedTuple):
    relent: float | None  # None inside the exclusion window around q = 1/2
    trace: float


@dataclass(frozen=True)
class BoundReport:
    q: float
    gap: float
    thm2_bound: float
    thm2_sigma_branch: float | None
    thm2_rho_branch: float | None
    kim_relent_bound: float | None
    kim_trace_bound: float
    combined_trace_bound: float
    c_sigma: float
    c_rho: float


def c_exponent(s_min: float) -> float:
    """``min_x D_2(s||x) / D_2(x||s)``, equal to ``2 alpha_1(s) - 1``.

    ``s_min = 0`` returns the limiting value 0, which makes the
    corresponding bound trivial.
    """
    if s_min == 0.0:
        return 0.0
    if not 0.0 < s_min <= 0.5 + 1e-9:
        raise ArgumentError(f"s_min must lie in (0, 1/2], got {s_min!r}")
    return min_q_ratio(min(float(s_min), 0.5))[1]


def _check_q(q: float) -> float:
    q = float(q)
    if not 0.0 <= q <= 1.0:
        raise ArgumentError(f"q must lie in [0, 1], got {q!r}")
    return q


def _pair(sigma, rho) -> tuple[DensityMatrix, DensityMatrix]:
    sigma, rho = as_density(sigma), as_density(rho)
    if sigma.dim != rho.dim:
        raise ArgumentError(f"dimension mismatch: {sigma.dim} vs {rho.dim}")
    return sigma, rho


def _mix(a: DensityMatrix, b: DensityMatrix, q: float) -> DensityMatrix:
    return DensityMatrix._unchecked((1.0 - q) * a.matrix + q * b.matrix, a.local_dims)


def concavity_gap(sigma, rho, q: float) -> float:
    """``S((1-q) sigma + q rho) - (1-q) S(sigma) - q S(rho)`` in nats."""
    q = _check_q(q)
    sigma, rho = _pair(sigma, rho)
    if q in (0.0, 1.0):
        return 0.0
    return (von_neumann_entropy(_mix(sigma, rho, q))
            - (1.0 - q) * von_neumann_entropy(sigma) - q * von_neumann_entropy(rho))


def _support_s_min(state: DensityMatrix) -> float:
    # smallest eigenvalue on the support, i.e. of the compressed state
    w = state.eig[0]
    return float(w[w > SUPPORT_TOL].min())


def _branch(weight: float, base: DensityMatrix, other: DensityMatrix) -> float | None:
    # weight * (1 - weight^c(base)) * D(other||base); when supp(other) lies in
    # supp(base) both are compressed to that support, which leaves D unchanged
    # and makes c depend on the smallest nonzero eigenvalue of base
    if weight == 0.0:
        return 0.0
    d = relative_entropy(other, base)
    if d == 0.0:
        return 0.0
    if d == math.inf:
        c = c_exponent(0.0 if base.s_min <= FULL_RANK_TOL else base.s_min)
        return 0.0 if c == 0.0 else None
    c = c_exponent(_support_s_min(base))
    return weight * (1.0 - weight ** c) * d


def thm2_branches(sigma, rho, q: float) -> tuple[float | None, float | None]:
    """The ``sigma``-branch and ``rho``-branch of the concavity bound.

    A branch is ``None`` when its relative entropy is infinite while its
    exponent is positive; such a branch is excluded from the maximum.
    """
    q = _check_q(q)
    sigma, rho = _pair(sigma, rho)
    return _branch(q, sigma, rho), _branch(1.0 - q, rho, sigma)


def thm2_bound(sigma, rho, q: float) -> float:
    """Maximum of the valid branches of :func:`thm2_branches` (0 if none)."""
    vals = [v for v in thm2_branches(sigma, rho, q) if v is not None]
    return max(vals, default=0.0)


def kim_bounds(sigma, rho, q: float, exclusion_halfwidth: float = KIM_EXCLUSION) -> KimBounds:
    """Comparison bounds built from ``rho_avg = (1-q) sigma + q rho`` and
    ``rho_rev = (1-q) rho + q sigma``.

    The relative-entropy bound has prefactor ``q(1-q)/(1-2q)^2``, which
    diverges at ``q = 1/2`` while the divergences vanish; inside the window
    ``|q - 1/2| < exclusion_halfwidth`` it is reported as ``None``.
    """
    q = _check_q(q)
    sigma, rho = _pair(sigma, rho)
    dist = trace_norm(rho.matrix - sigma.matrix)
    trace_bound = 0.5 * q * (1.0 - q) * dist * dist
    if q in (0.0, 1.0):
        return KimBounds(0.0, trace_bound)
    if abs(q - 0.5) < exclusion_halfwidth:
        return KimBounds(None, trace_bound)
    avg, rev = _mix(sigma, rho, q), _mix(rho, sigma, q)
    d = max(relative_entropy(avg, rev), relative_entropy(rev, avg))
    return KimBounds(q * (1.0 - q) / (1.0 - 2.0 * q) ** 2 * d, trace_bound)


def combined_trace_bound(sigma, rho, q: float) -> float:
    """Concavity bound with ``D`` replaced by ``phi(pi)/4 * ||rho - sigma||_1^2``.

    Each branch needs its base state to be full rank; infeasible branches
    are dropped and the result is 0 if none remains.
    """
    q = _check_q(q)
    sigma, rho = _pair(sigma, rho)
    dist2 = trace_norm(rho.matrix - sigma.matrix) ** 2
    vals = []
    for w, base in ((q, sigma), (1.0 - q, rho)):
        if base.s_min <= FULL_RANK_TOL or base.dim < 2:
            continue
        c = c_exponent(base.s_min)
        vals.append(w * (1.0 - w ** c) * improved_pinsker_constant(base).constant * dist2)
    return max(vals, default=0.0)


def bound_table(sigma, rho, qs) -> list[BoundReport]:
    """:class:`BoundReport` for each ``q`` in ``qs``.

    Quantities that do not depend on ``q`` (relative entropies, exponents,
    Pinsker constants, endpoint entropies) are computed once.
    """
    qs = [_check_q(q) for q in qs]
    sigma, rho = _pair(sigma, rho)
    d_rs, d_sr = relative_entropy(rho, sigma), relative_entropy(sigma, rho)
    s_sigma, s_rho = von_neumann_entropy(sigma), von_neumann_entropy(rho)
    dist = trace_norm(rho.matrix - sigma.matrix)

    def exponent(base, d):
        if d == math.inf:
            return c_exponent(0.0 if base.s_min <= FULL_RANK_TOL else base.s_min)
        return c_exponent(_support_s_min(base)) if d > 0.0 else 0.0

    c_s, c_r = exponent(sigma, d_rs), exponent(rho, d_sr)
    pinsker = [improved_pinsker_constant(b).constant
               if b.s_min > FULL_RANK_TOL and b.dim >= 2 else None for b in (sigma, rho)]

    def branch(w, c, d):
        if w == 0.0 or d == 0.0:
            return 0.0
        if d == math.inf:
            return 0.0 if c == 0.0 else None
        return w * (1.0 - w ** c) * d

    out = []
    for q in qs:
        b1, b2 = branch(q, c_s, d_rs), branch(1.0 - q, c_r, d_sr)
        valid = [v for v in (b1, b2) if v is not None]
        combined = [w * (1.0 - w ** c) * k * dist * dist
                    for w, c, k in ((q, c_s, pinsker[0]), (1.0 - q, c_r, pinsker[1])) if k is not None]
        if q in (0.0, 1.0):
            gap, kim_relent = 0.0, 0.0
        else:
            gap = von_neumann_entropy(_mix(sigma, rho, q)) - (1.0 - q) * s_sigma - q * s_rho
            kim_relent = kim_bounds(sigma, rho, q).relent
        out.append(BoundReport(
            q=q,
            gap=gap,
            thm2_bound=max(valid, default=0.0),
            thm2_sigma_branch=b1,
            thm2_rho_branch=b2,
            kim_relent_bound=kim_relent,
            kim_trace_bound=0.5 * q * (1.0 - q) * dist * dist,
            combined_trace_bound=max(combined, default=0.0),
            c_sigma=c_s,
            c_rho=c_r,
        ))
    return out


def bound_report(sigma, rho, q: float) -> BoundReport:
    """All bounds for one ``(sigma, rho, q)`` triple."""
    return bound_table(sigma, rho, [q])[0]


def q_grid(points: int = 21) -> np.ndarray:
    """Uniform grid on ``[0, 1]``."""
    if points < 2:
        raise ArgumentError("need at least 2 grid points")
    return np.linspace(0.0, 1.0, points)
