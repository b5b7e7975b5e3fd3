"""Quantum Shearer inequality and the entropy bound for tensor-power
depolarizing semigroups.

Factor indices are 0-based throughout.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .depolarize import tensor_semigroup_apply
from .entropy import von_neumann_entropy
from .errors import ArgumentError
from .matcore import DEFAULT_DIM_CAP, DensityMatrix, as_density, partial_trace, tensor_power
from .sampler import Stream


@dataclass(frozen=True)
class CoverFamily:
    """Subsets of ``{0, ..., n-1}`` covering every element exactly ``t`` times.

    The quantum inequality needs the exact multiplicity; a family where some
    element is covered more often is rejected rather than accepted.
    """

    n: int
    subsets: tuple[tuple[int, ...], ...]
    t: int

    def __post_init__(self):
        if self.n < 1:
            raise ArgumentError("n must be positive")
        subsets = tuple(tuple(sorted(set(f))) for f in self.subsets)
        if not subsets or any(len(f) == 0 for f in subsets):
            raise ArgumentError("family must contain nonempty subsets")
        counts = Counter(i for f in subsets for i in f)
        if any(i < 0 or i >= self.n for i in counts):
            raise ArgumentError(f"subset elements must lie in 0..{self.n - 1}")
        bad = {i: counts.get(i, 0) for i in range(self.n) if counts.get(i, 0) != self.t}
        if bad:
            raise ArgumentError(f"multiplicity must be exactly {self.t}; got {bad}")
        object.__setattr__(self, "subsets", subsets)

    @classmethod
    def k_uniform(cls, n: int, k: int) -> "CoverFamily":
        """All ``k``-subsets; each element is covered ``C(n-1, k-1)`` times."""
        if not 1 <= k <= n:
            raise ArgumentError("need 1 <= k <= n")
        return cls(n, tuple(combinations(range(n), k)), math.comb(n - 1, k - 1))

    @classmethod
    def random(cls, n: int, t: int, rng: Stream) -> "CoverFamily":
        """Union of ``t`` random partitions of ``{0, ..., n-1}``.

        Each partition cuts a random permutation at random points, so every
        element lands in exactly one block per partition.
        """
        if t < 1:
            raise ArgumentError("t must be positive")
        subsets = []
        for _ in range(t):
            perm = rng.permutation(n)
            cuts = [i for i in range(1, n) if rng.uniform() < 0.5]
            bounds = [0, *cuts, n]
            subsets += [tuple(perm[a:b]) for a, b in zip(bounds, bounds[1:])]
        return cls(n, tuple(tuple(int(i) for i in f) for f in subsets), t)


def _multipartite(rho) -> DensityMatrix:
    rho = as_density(rho)
    if rho.local_dims is None:
        raise ArgumentError("state must carry local dimensions")
    return rho


def subset_entropy(rho, subset) -> float:
    """Entropy of the marginal on the factors in ``subset``."""
    rho = _multipartite(rho)
    subset = sorted(set(subset))
    if not subset:
        raise ArgumentError("subset must be nonempty")
    if subset[0] < 0 or subset[-1] >= rho.n_factors:
        raise ArgumentError(f"factor indices must lie in 0..{rho.n_factors - 1}")
    if len(subset) == rho.n_factors:
        return von_neumann_entropy(rho)
    return von_neumann_entropy(partial_trace(rho, subset))


def shearer_slack(rho, family: CoverFamily) -> float:
    """``(1/t) sum_F S(F) - S(rho)``; nonnegative by the quantum Shearer inequality."""
    rho = _multipartite(rho)
    if family.n != rho.n_factors:
        raise ArgumentError(f"family is over {family.n} factors, state has {rho.n_factors}")
    total = sum(subset_entropy(rho, f) for f in family.subsets)
    return total / family.t - von_neumann_entropy(rho)


def k_uniform_slack(rho, k: int) -> float:
    """``(1/C(n,k)) sum_{|F|=k} S(F) - (k/n) S(rho)``."""
    rho = _multipartite(rho)
    n = rho.n_factors
    if not 1 <= k <= n:
        raise ArgumentError("need 1 <= k <= n")
    fam = CoverFamily.k_uniform(n, k)
    total = sum(subset_entropy(rho, f) for f in fam.subsets)
    return total / math.comb(n, k) - k / n * von_neumann_entropy(rho)


def theorem3_slack(sigma, rho, t: float, n: int, cap: int = DEFAULT_DIM_CAP) -> float:
    """``S(T_t^{(x)n}(rho)) - e^{-t} S(rho) - (1 - e^{-t}) S(sigma^{(x)n})``.

    ``sigma`` need not be full rank.
    """
    if t < 0:
        raise ArgumentError("t must be nonnegative")
    sigma = as_density(sigma)
    out = tensor_semigroup_apply(sigma, t, n, rho, cap)
    p = math.exp(-t)
    s_rho = von_neumann_entropy(as_density(rho, (sigma.dim,) * n))
    s_sigma_n = n * von_neumann_entropy(sigma)
    return von_neumann_entropy(out) - p * s_rho - (1.0 - p) * s_sigma_n


def product_state(sigma, n: int) -> DensityMatrix:
    """``sigma^{(x)n}`` with local dimensions attached."""
    return tensor_power(sigma, n)
