"""Log-Sobolev-1 constant of the depolarizing Liouvillian.

The closed form is ``alpha_1 = min_x (1 + q_s(x)) / 2`` with ``s`` the
smallest eigenvalue of the fixed point. This module evaluates it, its
square-root lower bound, and a brute-force oracle over two-block commuting
states plus random states. It also provides the scans behind the
quasi-concavity argument for ``y -> q_y(x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from numbers import Real
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .entropy import (
    PROXIMITY_TOL,
    q_ratio,
    q_ratio_batch,
    relative_entropy,
)
from .errors import ArgumentError, PreconditionError, ResourceError
from .matcore import DensityMatrix, Spectrum, as_density, commuting_state
from .depolarize import semigroup_apply
from .sampler import Stream

GRID_POINTS = 4096
ENDPOINT_DELTA = 1e-9
GOLDEN_WIDTH = 1e-12
SUBSET_LIMIT = 12
PERMUTATION_LIMIT = 8
RANDOM_SAMPLES = 10_000

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Alpha1Result:
    """Value of alpha_1 and how it was reached.

    ``argmin_x`` is the block weight of the optimal two-block state, i.e. the
    probability it assigns to the eigenvectors whose ``sigma``-weight is
    ``s_min`` (or ``block_weight`` for the oracle).
    """

    alpha1: float
    argmin_x: float
    s_min: float
    lower_bound: float
    method: str
    block_weight: float | None = None
    subset: tuple[int, ...] | None = None
    two_block_min: float | None = None
    random_min: float | None = None
    refined_min: float | None = None
    witness_spectrum: np.ndarray | None = field(default=None, repr=False)


def golden_section_minimize(f, a: float, b: float, tol: float = GOLDEN_WIDTH,
                            max_iter: int = 500) -> tuple[float, float]:
    """Minimize a scalar function on ``[a, b]`` by golden-section search.

    Returns the midpoint of the final bracket and its value. Exact ties keep
    the left point.
    """
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


@lru_cache(maxsize=4096)
def _min_q(p: float, grid: int, delta: float) -> tuple[float, float]:
    xs = np.linspace(delta, 1.0 - delta, grid)
    vals = q_ratio(xs, p)
    i = int(np.argmin(vals))
    lo, hi = xs[max(i - 1, 0)], xs[min(i + 1, grid - 1)]
    x, v = golden_section_minimize(lambda x: q_ratio(x, p), lo, hi)
    if vals[i] < v:
        x, v = float(xs[i]), float(vals[i])
    # q_p(p) = 1, so the minimum never exceeds 1
    return float(x), min(float(v), 1.0)


def min_q_ratio(p: float, grid: int = GRID_POINTS, delta: float = ENDPOINT_DELTA) -> tuple[float, float]:
    """Minimizer and minimum of ``x -> q_p(x)`` over ``[delta, 1 - delta]``.

    A ``grid``-point scan locates the best cell, then golden-section search
    refines it to width 1e-12. For ``p > 1/2`` the problem is solved at
    ``1 - p`` and reflected, using ``q_{1-p}(x) = q_p(1 - x)``.
    """
    if not 0.0 < p < 1.0:
        raise ArgumentError(f"p must lie in (0, 1), got {p!r}")
    if p > 0.5:
        x, v = _min_q(1.0 - float(p), grid, delta)
        return 1.0 - x, v
    return _min_q(float(p), grid, delta)


def _as_smin(s) -> float:
    if isinstance(s, Real):
        return float(s)
    if isinstance(s, DensityMatrix):
        return s.s_min
    if isinstance(s, Spectrum):
        return s.s_min
    return Spectrum(s).s_min


def alpha1_lower_bound(s_min: float) -> float:
    """``1/2 + sqrt(s (1 - s))``."""
    if not 0.0 < s_min < 1.0:
        raise ArgumentError(f"s_min must lie in (0, 1), got {s_min!r}")
    return 0.5 + math.sqrt(s_min * (1.0 - s_min))


def alpha1_depolarizing(s_min, grid: int = GRID_POINTS) -> Alpha1Result:
    """Closed-form log-Sobolev-1 constant from the smallest eigenvalue.

    ``s_min`` may be a number, a :class:`Spectrum`, a state, or a sequence of
    eigenvalues; only the smallest eigenvalue is used.
    """
    s = _as_smin(s_min)
    if not 0.0 < s < 1.0:
        raise ArgumentError(f"s_min must lie in (0, 1), got {s!r}")
    x, v = min_q_ratio(s, grid)
    return Alpha1Result(
        alpha1=0.5 * (1.0 + v),
        argmin_x=x,
        s_min=s,
        lower_bound=alpha1_lower_bound(s),
        method="closed_form",
        block_weight=s,
    )


# ---------------------------------------------------------------------------
# two-block states
# ---------------------------------------------------------------------------

def two_block_spectrum(s, subset: Sequence[int], x: float) -> np.ndarray:
    """Spectrum ``x s_i / p`` on ``subset`` and ``(1-x) s_i / (1-p)`` elsewhere,
    with ``p`` the weight of ``subset`` under ``s``."""
    s = np.asarray(s, dtype=float)
    mask = np.zeros(s.size, dtype=bool)
    mask[list(subset)] = True
    p = float(s[mask].sum())
    if not 0.0 < p < 1.0:
        raise ArgumentError("subset must be nonempty and proper")
    return np.where(mask, x * s / p, (1.0 - x) * s / (1.0 - p))


def two_block_state(sigma, subset: Sequence[int], x: float) -> DensityMatrix:
    """State commuting with ``sigma`` carrying weight ``x`` on ``subset``.

    Indices refer to ``sigma``'s eigenvalues in descending order.
    """
    sigma = as_density(sigma)
    return commuting_state(sigma, two_block_spectrum(sigma.spectrum.values, subset, x))


def alpha1_witness_state(sigma) -> DensityMatrix:
    """Two-block state on which the entropy-production ratio equals alpha_1."""
    sigma = as_density(sigma)
    res = alpha1_depolarizing(sigma.s_min)
    return two_block_state(sigma, [sigma.dim - 1], res.argmin_x)


def decay_slack(sigma, rho, t: float, alpha: float) -> float:
    """``e^{-2 alpha t} D(rho||sigma) - D(T_t(rho)||sigma)``; nonnegative when
    the exponential decay bound holds at ``(rho, t)``."""
    d0 = relative_entropy(rho, sigma)
    dt = relative_entropy(semigroup_apply(sigma, t, rho), sigma)
    if d0 == math.inf:
        return math.inf
    return math.exp(-2.0 * alpha * t) * d0 - dt


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------

def _oracle_min_q(p: float, x_grid: int) -> tuple[float, float]:
    # dense scan, then scipy's bounded Brent on the best cell
    xs = np.linspace(ENDPOINT_DELTA, 1.0 - ENDPOINT_DELTA, x_grid)
    vals = q_ratio(xs, p)
    i = int(np.argmin(vals))
    lo, hi = xs[max(i - 1, 0)], xs[min(i + 1, x_grid - 1)]
    res = minimize_scalar(lambda x: q_ratio(x, p), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-12})
    if res.fun < vals[i]:
        return float(res.x), float(res.fun)
    return float(xs[i]), float(vals[i])


def _classical_q(r: np.ndarray, s: np.ndarray) -> float:
    with np.errstate(divide="ignore", invalid="ignore"):
        if np.sum(np.abs(r - s)) < PROXIMITY_TOL:
            return 1.0
        if np.any(r <= 0):
            return math.inf
        num = float(np.sum(s * np.log(s / r)))
        den = float(np.sum(r * np.log(r / s)))
    return num / den if den > 0 else 1.0


def _random_state_stack(sigma: DensityMatrix, count: int, rng: Stream) -> np.ndarray:
    # thirds: Hilbert-Schmidt states, flat-Dirichlet spectra diagonal in
    # sigma's eigenbasis, and such spectra in a slightly rotated eigenbasis
    d = sigma.dim
    v = sigma.eig[1]
    n_hs = (count + 2) // 3
    n_diag = (count + 1) // 3
    n_rot = count // 3
    g = rng.complex_normal((n_hs, d, d))
    hs = g @ np.conj(np.swapaxes(g, 1, 2))
    hs /= np.trace(hs, axis1=1, axis2=2).real[:, None, None]
    e = -np.log(rng.uniform((n_diag + n_rot, d)))
    r = e / e.sum(axis=1, keepdims=True)
    frames = np.broadcast_to(v, (n_diag + n_rot, d, d)).copy()
    if n_rot:
        pert = np.eye(d) + 0.15 * rng.complex_normal((n_rot, d, d))
        q, rr = np.linalg.qr(pert)
        diag = np.diagonal(rr, axis1=1, axis2=2)
        frames[n_diag:] = v @ (q * (diag / np.abs(diag))[:, None, :])
    comm = (frames * r[:, None, :]) @ np.conj(np.swapaxes(frames, 1, 2))
    return np.concatenate([hs, comm])


def _refine_commuting(s: np.ndarray, starts: list[np.ndarray]) -> tuple[float, np.ndarray]:
    # free minimization of the classical quotient over the open simplex,
    # parametrized by logits
    def objective(z):
        r = np.exp(z - z.max())
        r = r / r.sum()
        return _classical_q(r, s)

    best_v, best_r = math.inf, None
    for r0 in starts:
        z0 = np.log(np.clip(r0, 1e-12, None))
        res = minimize(objective, z0, method="BFGS", options={"gtol": 1e-11, "maxiter": 2000})
        res = minimize(objective, res.x, method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 20000})
        if res.fun < best_v:
            r = np.exp(res.x - res.x.max())
            best_v, best_r = float(res.fun), r / r.sum()
    return best_v, best_r


def alpha1_bruteforce(sigma, subset_limit: int = SUBSET_LIMIT, x_grid: int = GRID_POINTS,
                      random_samples: int = RANDOM_SAMPLES, seed: int = 0,
                      refine: bool = True) -> Alpha1Result:
    """Independent estimate of alpha_1 for a full-rank ``sigma``.

    Combines three searches, all reported on the ``(1 + Q) / 2`` scale:

    * every nonempty proper subset ``A`` of ``sigma``'s spectrum, with
      ``min_x q_{P(A)}(x)`` found by a dense scan plus bounded Brent;
    * ``random_samples`` random full-rank states through the matrix-level
      quotient :func:`~lsob.entropy.q_ratio_batch`;
    * (``refine``) free minimization over spectra commuting with ``sigma``,
      started from the best two-block state and the best random state.

    The reported ``alpha1`` is the smallest value found.
    """
    sigma = as_density(sigma)
    d = sigma.dim
    if d > subset_limit:
        raise ResourceError(f"dimension {d} exceeds subset enumeration limit {subset_limit}")
    if sigma.s_min <= 1e-12:
        raise PreconditionError("sigma must be full rank")
    s = sigma.spectrum.values

    best = (math.inf, None, None, None)  # value, p, subset, x
    cache: dict[float, tuple[float, float]] = {}
    for mask in range(1, 2 ** d - 1):
        subset = tuple(i for i in range(d) if mask >> i & 1)
        p = float(s[list(subset)].sum())
        key = round(p, 15)
        if key not in cache:
            cache[key] = _oracle_min_q(p, x_grid)
        x, v = cache[key]
        if v < best[0]:
            best = (v, p, subset, x)
    two_block_v, p_best, subset_best, x_best = best

    random_v = math.inf
    best_random_state = None
    if random_samples > 0:
        rng = Stream(seed, 0xA1)
        done = 0
        while done < random_samples:
            n = min(2000, random_samples - done)
            stack = _random_state_stack(sigma, n, rng)
            vals = q_ratio_batch(stack, sigma)
            i = int(np.argmin(vals))
            if vals[i] < random_v:
                random_v, best_random_state = float(vals[i]), stack[i]
            done += n

    refined_v, witness = math.inf, None
    if refine:
        starts = [two_block_spectrum(s, subset_best, x_best)]
        if best_random_state is not None:
            v = sigma.eig[1][:, ::-1]
            starts.append(np.clip(np.einsum("ij,ik,kj->j", v.conj(), best_random_state, v).real,
                                  1e-9, None))
        refined_v, witness = _refine_commuting(s, starts)

    overall = min(two_block_v, random_v, refined_v)
    return Alpha1Result(
        alpha1=0.5 * (1.0 + overall),
        argmin_x=x_best,
        s_min=sigma.s_min,
        lower_bound=alpha1_lower_bound(sigma.s_min),
        method="brute_force",
        block_weight=p_best,
        subset=subset_best,
        two_block_min=0.5 * (1.0 + two_block_v),
        random_min=0.5 * (1.0 + random_v) if random_samples > 0 else None,
        refined_min=0.5 * (1.0 + refined_v) if refine else None,
        witness_spectrum=witness,
    )


def best_commuting_value(rho, sigma, perm_limit: int = PERMUTATION_LIMIT) -> float:
    """Smallest quotient over states commuting with ``sigma`` that carry
    ``rho``'s spectrum, i.e. over all permutations of that spectrum."""
    rho, sigma = as_density(rho), as_density(sigma)
    d = sigma.dim
    if d > perm_limit:
        raise ResourceError(f"dimension {d} exceeds permutation search limit {perm_limit}")
    if sigma.s_min <= 1e-12:
        raise PreconditionError("sigma must be full rank")
    if rho.dim != d:
        raise ArgumentError(f"dimension mismatch: {rho.dim} vs {d}")
    s = sigma.spectrum.values
    r = rho.spectrum.values
    perms = r[np.array(list(permutations(range(d))))]
    with np.errstate(divide="ignore", invalid="ignore"):
        num = np.sum(s * np.log(s / perms), axis=1)
        rlogr = np.where(perms > 0, perms * np.log(perms / s), 0.0)
        den = np.sum(rlogr, axis=1)
        vals = num / den
    vals[np.any(perms <= 0, axis=1)] = math.inf
    vals[np.sum(np.abs(perms - s), axis=1) < PROXIMITY_TOL] = 1.0
    return float(np.min(vals))


def minimizer_two_ratio_check(spectrum_r, spectrum_s, tol: float = 1e-3) -> bool:
    """True if the ratios ``r_j / s_j`` form at most two clusters of width ``tol``.

    Both sequences must be paired in ``sigma``'s eigenbasis order.
    """
    r = np.asarray(spectrum_r, dtype=float)
    s = np.asarray(spectrum_s, dtype=float)
    if r.shape != s.shape:
        raise ArgumentError("spectra must have equal length")
    u = np.sort(r / s)
    breaks = np.flatnonzero(np.diff(u) > tol)
    if breaks.size > 1:
        return False
    groups = np.split(u, breaks + 1)
    return all(g[-1] - g[0] <= tol for g in groups)


# ---------------------------------------------------------------------------
# scans for the quasi-concavity of y -> q_y(x)
# ---------------------------------------------------------------------------

class UnimodalityScan(NamedTuple):
    is_unimodal: bool
    m_f: float
    peak: float
    left_end: float
    right_end: float


def unimodality_scan(x: float, y_grid: int = 100_000, tol: float = 1e-9) -> UnimodalityScan:
    """Scan ``f_x(y) = q_y(x)`` on ``y_k = k / (y_grid + 1)``.

    The profile counts as unimodal when it never drops by more than ``tol``
    before its maximum and never rises by more than ``tol`` after it.
    """
    if not 0.0 < x < 1.0:
        raise ArgumentError("x must lie in (0, 1)")
    if y_grid < 1000:
        raise ArgumentError("y_grid must be at least 1000")
    ys = np.arange(1, y_grid + 1) / (y_grid + 1)
    f = q_ratio(np.full_like(ys, x), ys)
    i = int(np.argmax(f))
    steps = np.diff(f)
    ok = bool(np.all(steps[:i] >= -tol) and np.all(steps[i:] <= tol))
    return UnimodalityScan(ok, float(ys[i]), float(f[i]), float(f[0]), float(f[-1]))


def mh_formula(x: float) -> float:
    """Stationary point ``(x - sqrt(x(1-x))) / (2x - 1)`` of
    ``h_x(y) = y(1-y) / (y^2 + x - 2yx)`` for ``x`` in (1/2, 1)."""
    if not 0.5 < x < 1.0:
        raise ArgumentError("x must lie in (1/2, 1); at x = 1/2 the stationary point is 1/2")
    return (x - math.sqrt(x * (1.0 - x))) / (2.0 * x - 1.0)


def h_argmax_grid(x: float, grid: int = 2_000_001) -> float:
    """Grid argmax of ``h_x`` on ``(0, 1)``; resolution ``1 / (grid + 1)``."""
    ys = np.arange(1, grid + 1) / (grid + 1)
    h = ys * (1.0 - ys) / (ys * ys + x - 2.0 * ys * x)
    return float(ys[int(np.argmax(h))])


def q_symmetry_defect(s: float, xs: np.ndarray) -> float:
    """Largest ``|q_{1-s}(x) - q_s(x)|`` over ``xs``.

    The reflected identity ``q_{1-s}(x) = q_s(1-x)`` always holds; this
    measures how far the unreflected version is from it.
    """
    xs = np.asarray(xs, dtype=float)
    return float(np.max(np.abs(q_ratio(xs, 1.0 - s) - q_ratio(xs, s))))
