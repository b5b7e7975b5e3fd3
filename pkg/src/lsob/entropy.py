"""Entropy functionals on density matrices and two-point distributions.

All logarithms are natural. Infinite relative entropies are returned as
``math.inf``; ratio functions use the same value for their divergent
branch, so comparisons against it are exact.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ArgumentError, PreconditionError, ValidationError
from .matcore import DensityMatrix, as_density, as_hermitian, trace_norm

SUPPORT_TOL = 1e-12
PROXIMITY_TOL = 1e-7
FULL_RANK_TOL = 1e-12
Q_EXTENSION_TOL = 1e-9

_SERIES_CUTOFF = 0.1
_SERIES_K = np.arange(2, 40)
_SERIES_COEF = ((-1.0) ** _SERIES_K) / (_SERIES_K * (_SERIES_K - 1))


def von_neumann_entropy(rho) -> float:
    """``-tr[rho log rho]`` in nats, with ``0 log 0 = 0``."""
    w = as_density(rho).eigenvalues
    w = w[w > 0]
    return float(-np.sum(w * np.log(w)))


def _sigma_weights(rho: DensityMatrix, sigma: DensityMatrix) -> tuple[np.ndarray, np.ndarray]:
    # eigenvalues of sigma and the diagonal of rho in sigma's eigenbasis
    w, v = sigma.eig
    diag = np.einsum("ij,ik,kj->j", v.conj(), rho.matrix, v).real
    return w, diag


def relative_entropy(rho, sigma, support_tol: float = SUPPORT_TOL) -> float:
    """Umegaki relative entropy ``D(rho || sigma)``.

    Returns ``math.inf`` when some eigenvector of ``sigma`` with eigenvalue
    below ``support_tol`` carries more than ``support_tol`` of ``rho``'s
    weight.
    """
    rho, sigma = as_density(rho), as_density(sigma)
    if rho.dim != sigma.dim:
        raise ArgumentError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    w, diag = _sigma_weights(rho, sigma)
    kernel = w < support_tol
    if np.any(diag[kernel] > support_tol):
        return math.inf
    r = rho.eigenvalues
    r = r[r > 0]
    neg_entropy = float(np.sum(r * np.log(r)))
    cross = float(np.sum(diag[~kernel] * np.log(w[~kernel])))
    return max(neg_entropy - cross, 0.0)


def _require_full_rank(state: DensityMatrix, name: str, tol: float = FULL_RANK_TOL):
    if state.s_min <= tol:
        raise PreconditionError(f"{name} must be full rank (min eigenvalue {state.s_min:.3e})")


def _quadrature_nodes(quad_points: int) -> tuple[np.ndarray, np.ndarray]:
    # composite Gauss-Legendre on [0, 1): geometric panels toward u = 0, where
    # features sit at the eigenvalue scales, then uniform panels up to u = 1
    per_panel = 20
    n_panels = max(2, quad_points // per_panel)
    n_log = max(1, int(0.8 * n_panels))
    n_lin = n_panels - n_log
    edges = np.concatenate([
        [0.0],
        np.logspace(-14, np.log10(0.5), n_log),
        np.linspace(0.5, 1.0, n_lin + 1)[1:],
    ])
    x, wts = np.polynomial.legendre.leggauss(per_panel)
    a, b = edges[:-1, None], edges[1:, None]
    nodes = (0.5 * (b - a) * x + 0.5 * (b + a)).ravel()
    weights = (0.5 * (b - a) * wts).ravel()
    return nodes, weights


def relative_entropy_integral(rho, sigma, quad_points: int = 2000) -> float:
    """Relative entropy from its resolvent integral representation.

    Evaluates ``int_0^inf tr[rho((sigma + t)^-1 - (rho + t)^-1)] dt`` after
    the substitution ``t = u / (1 - u)``, using linear solves only, so it
    shares no code path with :func:`relative_entropy`. (The sign follows
    from ``log r - log s = int_0^inf 1/(s+t) - 1/(r+t) dt``.)
    """
    rho, sigma = as_density(rho), as_density(sigma)
    if rho.dim != sigma.dim:
        raise ArgumentError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    for state, name in ((rho, "rho"), (sigma, "sigma")):
        if np.linalg.eigvalsh(state.matrix)[0] <= FULL_RANK_TOL:
            raise PreconditionError(f"{name} must be full rank for the integral representation")
    u, wts = _quadrature_nodes(quad_points)
    t = u / (1.0 - u)
    jac = 1.0 / (1.0 - u) ** 2
    eye = np.eye(rho.dim)
    r = rho.matrix
    rhs = np.broadcast_to(r, (t.size,) + r.shape)
    a = np.linalg.solve(r[None] + t[:, None, None] * eye, rhs)
    b = np.linalg.solve(sigma.matrix[None] + t[:, None, None] * eye, rhs)
    integrand = np.trace(b - a, axis1=1, axis2=2).real
    return float(np.sum(wts * jac * integrand))


# ---------------------------------------------------------------------------
# two-point distributions
# ---------------------------------------------------------------------------

def _excess(h):
    """``(1 + h) log(1 + h) - h`` for ``h >= -1``, accurate near 0."""
    h = np.asarray(h, dtype=float)
    out = np.empty_like(h)
    small = np.abs(h) < _SERIES_CUTOFF
    hs = h[small]
    out[small] = (hs[:, None] ** _SERIES_K) @ _SERIES_COEF
    hb = h[~small]
    with np.errstate(divide="ignore", invalid="ignore"):
        out[~small] = np.where(hb <= -1.0, 1.0, (1.0 + hb) * np.log1p(hb) - hb)
    return out


def binary_relative_entropy(x, y):
    """``D2(x || y) = x log(x/y) + (1-x) log((1-x)/(1-y))``.

    Written as ``y g((x-y)/y) + (1-y) g((y-x)/(1-y))`` with
    ``g(h) = (1+h) log(1+h) - h``; both terms are nonnegative, so the
    result keeps full relative precision as ``x -> y``.
    Accepts scalars or arrays; ``y`` must lie strictly inside (0, 1).
    """
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if np.any((ya <= 0.0) | (ya >= 1.0)):
        raise ArgumentError("second argument of D2 must lie in (0, 1)")
    if np.any((xa < 0.0) | (xa > 1.0)):
        raise ArgumentError("first argument of D2 must lie in [0, 1]")
    xa, ya = np.broadcast_arrays(xa, ya)
    val = ya * _excess((xa - ya) / ya) + (1.0 - ya) * _excess((ya - xa) / (1.0 - ya))
    return float(val) if val.ndim == 0 else val


def classical_relative_entropy(r, s) -> float:
    """``sum_i r_i log(r_i / s_i)`` for probability vectors with ``s > 0``.

    Uses ``sum_i s_i g(r_i / s_i - 1)`` with ``g`` as in
    :func:`binary_relative_entropy`, so nearby vectors keep full relative
    precision. This is ``D(rho||sigma)`` for commuting states with paired
    eigenvalues ``r`` and ``s``.
    """
    r = np.asarray(r, dtype=float)
    s = np.asarray(s, dtype=float)
    if r.shape != s.shape:
        raise ArgumentError("vectors must have equal length")
    if np.any(s <= 0.0):
        raise ArgumentError("second vector must be strictly positive")
    return float(np.sum(s * _excess(r / s - 1.0)))


def q_ratio(x, y):
    """Continuous extension of ``D2(y || x) / D2(x || y)``.

    Equal to 1 when ``|x - y| < 1e-9`` and ``inf`` at ``x`` in {0, 1}.
    """
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if np.any((ya <= 0.0) | (ya >= 1.0)):
        raise ArgumentError("q_y needs y in (0, 1)")
    if np.any((xa < 0.0) | (xa > 1.0)):
        raise ArgumentError("q_y(x) needs x in [0, 1]")
    xa, ya = np.broadcast_arrays(xa, ya)
    out = np.full(xa.shape, math.inf)
    near = np.abs(xa - ya) < Q_EXTENSION_TOL
    inner = ~near & (xa > 0.0) & (xa < 1.0)
    out[near] = 1.0
    if np.any(inner):
        out[inner] = binary_relative_entropy(ya[inner], xa[inner]) / binary_relative_entropy(
            xa[inner], ya[inner])
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# state-level ratios
# ---------------------------------------------------------------------------

def Q_ratio(rho, sigma, proximity_tol: float = PROXIMITY_TOL) -> float:
    """Continuous extension of ``D(sigma || rho) / D(rho || sigma)``.

    Returns 1 within trace distance ``proximity_tol`` of ``sigma`` and
    ``inf`` when ``rho`` is rank deficient. Pass ``proximity_tol=0`` to
    always evaluate the quotient.
    """
    rho, sigma = as_density(rho), as_density(sigma)
    _require_full_rank(sigma, "sigma")
    if rho.dim != sigma.dim:
        raise ArgumentError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    if proximity_tol > 0 and trace_norm(rho - sigma) < proximity_tol:
        return 1.0
    num = relative_entropy(sigma, rho)
    if num == math.inf:
        return math.inf
    den = relative_entropy(rho, sigma)
    if den == 0.0:
        return 1.0 if num == 0.0 else math.inf
    return num / den


def q_ratio_batch(rhos: np.ndarray, sigma, proximity_tol: float = PROXIMITY_TOL) -> np.ndarray:
    """:func:`Q_ratio` for a stack of states ``rhos`` of shape ``(N, d, d)``.

    The stack is assumed to hold valid density matrices; entries with an
    eigenvalue at or below ``SUPPORT_TOL`` map to ``inf``.
    """
    sigma = as_density(sigma)
    _require_full_rank(sigma, "sigma")
    rhos = np.asarray(rhos, dtype=np.complex128)
    rhos = 0.5 * (rhos + np.conj(np.swapaxes(rhos, 1, 2)))
    r, vr = np.linalg.eigh(rhos)
    s, vs = sigma.eig
    logs = np.log(s)
    # rho's diagonal in sigma's eigenbasis, and sigma's diagonal in each rho's eigenbasis
    rho_in_s = np.einsum("ij,nik,kj->nj", vs.conj(), rhos, vs).real
    sig_in_r = np.einsum("nij,ik,nkj->nj", vr.conj(), sigma.matrix, vr).real
    rpos = np.clip(r, 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        rlogr = np.where(rpos > 0, rpos * np.log(rpos), 0.0)
        d_rho_sigma = rlogr.sum(axis=1) - rho_in_s @ logs
        d_sigma_rho = float(np.sum(s * logs)) - np.sum(sig_in_r * np.log(rpos), axis=1)
    d_rho_sigma = np.maximum(d_rho_sigma, 0.0)
    out = np.empty(len(rhos))
    singular = r[:, 0] <= SUPPORT_TOL
    out[singular] = math.inf
    ok = ~singular
    with np.errstate(divide="ignore", invalid="ignore"):
        out[ok] = np.maximum(d_sigma_rho[ok], 0.0) / d_rho_sigma[ok]
    if proximity_tol > 0:
        diff = rhos - sigma.matrix[None]
        near = np.abs(np.linalg.eigvalsh(diff)).sum(axis=1) < proximity_tol
        out[near] = 1.0
    out[np.isnan(out)] = 1.0
    return out


def entropy_production_depolarizing(rho, sigma) -> float:
    """``D(rho || sigma) + D(sigma || rho)``, the entropy production of the
    depolarizing semigroup towards ``sigma`` at ``rho``."""
    rho, sigma = as_density(rho), as_density(sigma)
    _require_full_rank(rho, "rho")
    _require_full_rank(sigma, "sigma")
    return relative_entropy(rho, sigma) + relative_entropy(sigma, rho)


def entropy_production_fd(rho, sigma, step: float = 1e-4) -> float:
    """Minus the central difference of ``t -> D(T_t(rho) || sigma)`` at 0.

    ``T_t(rho) = sigma + e^{-t}(rho - sigma)`` is continued to ``t = -step``;
    if that leaves the state space a :class:`PreconditionError` is raised.
    """
    rho, sigma = as_density(rho), as_density(sigma)
    delta = rho.matrix - sigma.matrix

    def f(t):
        try:
            state = DensityMatrix(sigma.matrix + math.exp(-t) * delta)
        except ValidationError as exc:
            raise PreconditionError(f"finite-difference step {step} leaves the state space") from exc
        return relative_entropy(state, sigma)

    return -(f(step) - f(-step)) / (2.0 * step)


class ScanPoint(NamedTuple):
    epsilon: float
    ratio: float | None
    valid: bool


def continuity_ratio_scan(sigma, x, epsilons: Sequence[float]) -> list[ScanPoint]:
    """``Q_sigma(sigma + eps X)`` for each ``eps`` with the proximity shortcut off.

    ``X`` must be Hermitian, traceless and nonzero. Entries where
    ``sigma + eps X`` is not a state are returned with ``valid=False``.
    """
    sigma = as_density(sigma)
    _require_full_rank(sigma, "sigma")
    xm = as_hermitian(x).matrix
    if xm.shape != sigma.matrix.shape:
        raise ArgumentError("X must match sigma's dimension")
    if abs(np.trace(xm)) > 1e-12:
        raise ArgumentError("X must be traceless")
    if not np.any(xm):
        raise ArgumentError("X must be nonzero")
    out = []
    for eps in epsilons:
        eps = float(eps)
        if eps == 0.0:
            out.append(ScanPoint(eps, 1.0, True))
            continue
        try:
            rho = DensityMatrix(sigma.matrix + eps * xm)
        except ValidationError:
            out.append(ScanPoint(eps, None, False))
            continue
        out.append(ScanPoint(eps, Q_ratio(rho, sigma, proximity_tol=0.0), True))
    return out
