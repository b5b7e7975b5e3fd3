"""State-dependent optimal Pinsker inequality.

``D(rho||sigma) >= phi(pi(sigma)) / 4 * ||rho - sigma||_1^2`` where ``pi`` is
the balance coefficient of ``sigma``'s spectrum and
``phi(p) = log((1-p)/p) / (1-2p)``.
"""

from __future__ import annotations

import math
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .entropy import binary_relative_entropy, classical_relative_entropy
from .errors import ArgumentError, PreconditionError, ResourceError
from .matcore import DensityMatrix, Spectrum, as_density, commuting_state, trace_norm
from .depolarize import semigroup_apply

EXHAUSTIVE_LIMIT = 24
DP_RESOLUTION = 1e-6
TIE_TOL = 1e-12
FULL_RANK_TOL = 1e-12
_LOW_BITS = 12


class PinskerReport(NamedTuple):
    pi_sigma: float
    phi_value: float
    constant: float
    witness_subset: tuple[int, ...]


class BalanceResult(NamedTuple):
    pi: float
    subset: tuple[int, ...]
    method: str


class RelentAtDistance(NamedTuple):
    value: float
    subset: tuple[int, ...] | None
    block_weight: float | None


class TightnessPoint(NamedTuple):
    epsilon: float
    ratio: float
    valid: bool


def phi(p: float) -> float:
    """``log((1-p)/p) / (1-2p)``, continued by ``phi(1/2) = 2``.

    Near ``p = 1/2`` the series ``2 + 2u^2/3 + 2u^4/5`` in ``u = 1 - 2p``
    is used; elsewhere ``log1p(-p) - log(p)`` keeps the numerator accurate
    for tiny ``p``.
    """
    if not 0.0 < p <= 0.5:
        raise ArgumentError(f"p must lie in (0, 1/2], got {p!r}")
    u = 1.0 - 2.0 * p
    if u < 1e-4:
        u2 = u * u
        return 2.0 + u2 * (2.0 / 3.0 + 0.4 * u2)
    return (math.log1p(-p) - math.log(p)) / u


def _spectrum_values(x) -> np.ndarray:
    if isinstance(x, Spectrum):
        return x.values
    if isinstance(x, DensityMatrix):
        return x.spectrum.values
    return Spectrum(x).values


def _full_rank_sigma(sigma) -> DensityMatrix:
    sigma = as_density(sigma)
    if sigma.s_min <= FULL_RANK_TOL:
        raise PreconditionError("sigma must be full rank")
    return sigma


def _subset_chunks(values: np.ndarray) -> Iterator[tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]]:
    """Yield ``(masks, sums, lexkey, popcount)`` over all ``2^d`` subsets in chunks.

    Bit ``i`` of a mask marks index ``i``. ``lexkey`` puts index ``i`` at bit
    ``d-1-i``, so among subsets of equal size the lexicographically smallest
    index tuple has the largest key.
    """
    d = values.size
    lo = min(d, _LOW_BITS)
    low_masks = np.arange(1 << lo, dtype=np.int64)
    bits = (low_masks[:, None] >> np.arange(lo)) & 1
    low_sums = bits @ values[:lo]
    low_keys = bits @ (np.int64(1) << (d - 1 - np.arange(lo, dtype=np.int64)))
    low_pop = bits.sum(axis=1)
    for high in range(1 << (d - lo)):
        hbits = (high >> np.arange(d - lo)) & 1
        h_sum = float(hbits @ values[lo:]) if d > lo else 0.0
        h_key = int(hbits @ (np.int64(1) << (d - 1 - np.arange(lo, d, dtype=np.int64)))) if d > lo else 0
        masks = low_masks | (np.int64(high) << lo)
        yield masks, low_sums + h_sum, low_keys + h_key, low_pop + int(hbits.sum())


def _mask_to_subset(mask: int, d: int) -> tuple[int, ...]:
    return tuple(i for i in range(d) if mask >> i & 1)


def _balance_exhaustive(s: np.ndarray, literal: bool) -> tuple[float, int]:
    def score(p):
        return np.minimum(0.5, p) if literal else np.minimum(p, 1.0 - p)

    best = -math.inf
    for _, sums, _, _ in _subset_chunks(s):
        best = max(best, float(score(sums).max()))
    winner = None  # (popcount, -lexkey, mask)
    for masks, sums, keys, pop in _subset_chunks(s):
        ok = score(sums) >= best - TIE_TOL
        if not ok.any():
            continue
        m_pop = pop[ok].min()
        sel = ok & (pop == m_pop)
        j = int(np.argmax(np.where(sel, keys, -1)))
        cand = (int(m_pop), -int(keys[j]), int(masks[j]))
        if winner is None or cand[:2] < winner[:2]:
            winner = cand
    return best, winner[2]


def _balance_dp(s: np.ndarray, resolution: float) -> tuple[float, tuple[int, ...]]:
    w = np.maximum(np.rint(s / resolution).astype(np.int64), 0)
    total = int(w.sum())
    reach = [1]
    for wi in w:
        reach.append(reach[-1] | (reach[-1] << int(wi)))
    final = reach[-1]
    # largest reachable sum not above total // 2
    k = (final & ((1 << (total // 2 + 1)) - 1)).bit_length() - 1
    subset = []
    for i in range(len(w) - 1, -1, -1):
        if not reach[i] >> k & 1:
            subset.append(i)
            k -= int(w[i])
    subset = tuple(sorted(subset))
    p = float(s[list(subset)].sum())
    return min(p, 1.0 - p), subset


def balance_pi(spectrum, method: str = "auto", literal: bool = False,
               resolution: float = DP_RESOLUTION) -> BalanceResult:
    """Balance coefficient ``max_A min{P(A), 1 - P(A)}`` of a spectrum.

    Subset indices refer to the spectrum sorted in descending order. The
    exhaustive method is exact up to ties of 1e-12, broken by the smallest
    subset, then the lexicographically first. The ``dp`` method quantizes the
    weights to ``resolution`` and is within ``2 * resolution`` of optimal.
    ``literal=True`` scores ``min{1/2, P(A)}`` instead, which is 1/2 for
    every spectrum; it exists only for comparison.
    """
    s = _spectrum_values(spectrum)
    d = s.size
    if method == "auto":
        method = "exhaustive" if d <= EXHAUSTIVE_LIMIT else "dp"
    if method == "exhaustive":
        if d > EXHAUSTIVE_LIMIT:
            raise ResourceError(f"exhaustive balance search is limited to d <= {EXHAUSTIVE_LIMIT}")
        value, mask = _balance_exhaustive(s, literal)
        return BalanceResult(value, _mask_to_subset(mask, d), "exhaustive")
    if method == "dp":
        if literal:
            raise ArgumentError("the literal variant is only available for the exhaustive method")
        if not resolution > 0:
            raise ArgumentError("resolution must be positive")
        value, subset = _balance_dp(s, resolution)
        return BalanceResult(value, subset, "dp")
    raise ArgumentError(f"unknown method {method!r}")


def improved_pinsker_constant(sigma, method: str = "auto", literal: bool = False) -> PinskerReport:
    """Constant ``phi(pi(sigma)) / 4`` multiplying ``||rho - sigma||_1^2``."""
    sigma = _full_rank_sigma(sigma)
    bal = balance_pi(sigma.spectrum, method=method, literal=literal)
    ph = phi(bal.pi)
    return PinskerReport(bal.pi, ph, ph / 4.0, bal.subset)


def min_relent_at_distance(sigma, epsilon: float) -> RelentAtDistance:
    """Smallest ``D(tau||sigma)`` over states at trace distance ``epsilon``.

    Evaluated as ``min_A D_2(P(A) + epsilon/2 || P(A))`` over proper subsets
    of ``sigma``'s eigenvalues with ``P(A) + epsilon/2 <= 1``. Returns
    ``math.inf`` with no subset when none is feasible.
    """
    sigma = _full_rank_sigma(sigma)
    if not 0.0 <= epsilon <= 2.0:
        raise ArgumentError("epsilon must lie in [0, 2]")
    if epsilon == 0.0:
        return RelentAtDistance(0.0, (), None)
    s = sigma.spectrum.values
    d = s.size
    if d > EXHAUSTIVE_LIMIT:
        raise ResourceError(f"subset enumeration is limited to d <= {EXHAUSTIVE_LIMIT}")
    half = 0.5 * epsilon
    best = (math.inf, None, None)
    for masks, sums, _, _ in _subset_chunks(s):
        ok = (sums > 0.0) & (sums < 1.0 - 1e-15) & (sums + half <= 1.0 + 1e-15)
        if not ok.any():
            continue
        p = sums[ok]
        v = binary_relative_entropy(np.minimum(p + half, 1.0), p)
        j = int(np.argmin(v))
        if v[j] < best[0]:
            best = (float(v[j]), int(masks[ok][j]), float(p[j]))
    if best[1] is None:
        return RelentAtDistance(math.inf, None, None)
    return RelentAtDistance(best[0], _mask_to_subset(best[1], d), best[2])


def _shifted_two_block(sigma: DensityMatrix, subset: Sequence[int], shift: float) -> DensityMatrix:
    # moves weight `shift` from the complement onto `subset`, proportionally
    return commuting_state(sigma, _shifted_spectrum(sigma.spectrum.values, subset, shift))


def _shifted_spectrum(s: np.ndarray, subset: Sequence[int], shift: float) -> np.ndarray:
    mask = np.zeros(s.size, dtype=bool)
    mask[list(subset)] = True
    p = float(s[mask].sum())
    return np.clip(np.where(mask, (p + shift) * s / p, (1.0 - p - shift) * s / (1.0 - p)), 0.0, None)


def relent_witness_state(sigma, epsilon: float) -> DensityMatrix:
    """Commuting state at trace distance ``epsilon`` attaining
    :func:`min_relent_at_distance`."""
    sigma = _full_rank_sigma(sigma)
    res = min_relent_at_distance(sigma, epsilon)
    if res.subset is None:
        raise ArgumentError("no feasible subset for this epsilon")
    return _shifted_two_block(sigma, res.subset, 0.5 * epsilon)


def tightness_sequence(sigma, epsilons: Sequence[float] | None = None) -> list[TightnessPoint]:
    """Ratios ``D(rho_i||sigma) / ||rho_i - sigma||_1^2`` along two-block states.

    ``rho_i`` moves weight ``epsilon_i`` onto the lighter side ``B`` of the
    balance witness, ``P(B) = pi``. The ratio equals
    ``D_2(pi + eps || pi) / (4 eps^2)``, which reaches ``phi(pi) / 4`` at
    ``eps = 1 - 2 pi`` (and in the limit ``eps -> 0`` when ``pi = 1/2``).
    The default sequence approaches that point: ``(1 - 2 pi)(1 - 10^-k)``,
    or ``10^-k`` when ``pi = 1/2``, for ``k = 1..6``. Infeasible epsilons
    are returned with ``valid=False`` and a NaN ratio.
    """
    sigma = _full_rank_sigma(sigma)
    bal = balance_pi(sigma.spectrum)
    s = sigma.spectrum.values
    subset = bal.subset
    if float(s[list(subset)].sum()) > 0.5:
        subset = tuple(i for i in range(s.size) if i not in subset)
    target = 1.0 - 2.0 * bal.pi
    if epsilons is None:
        ks = np.arange(1, 7)
        epsilons = list(10.0 ** -ks) if target < 1e-9 else list(target * (1.0 - 10.0 ** -ks))
    out = []
    for eps in epsilons:
        eps = float(eps)
        if not 0.0 < eps <= 1.0 - bal.pi:
            out.append(TightnessPoint(eps, math.nan, False))
            continue
        rho = _shifted_two_block(sigma, subset, eps)
        dist = trace_norm(rho.matrix - sigma.matrix)
        # rho commutes with sigma; the classical form avoids cancellation for tiny eps
        d = classical_relative_entropy(_shifted_spectrum(s, subset, eps), s)
        out.append(TightnessPoint(eps, d / dist ** 2, True))
    return out


def mixing_time_bound(sigma, alpha: float, t: float) -> float:
    """``2 e^{-alpha t} sqrt(log(1/s_min) / phi(pi))``, a bound on
    ``||T_t(rho) - sigma||_1`` valid for ``alpha`` up to alpha_1."""
    sigma = _full_rank_sigma(sigma)
    if not alpha > 0:
        raise ArgumentError("alpha must be positive")
    if t < 0:
        raise ArgumentError("t must be nonnegative")
    rep = improved_pinsker_constant(sigma)
    return 2.0 * math.exp(-alpha * t) * math.sqrt(-math.log(sigma.s_min) / rep.phi_value)


def mixing_distance(sigma, rho, t: float) -> float:
    """Observed ``||T_t(rho) - sigma||_1``."""
    sigma = as_density(sigma)
    return trace_norm(semigroup_apply(sigma, t, rho).matrix - sigma.matrix)
