"""Seeded property suites over random states.

Each property returns a :class:`PropertyResult` with the worst slack seen
(negative means violated beyond tolerance) and, on failure, a JSON-ready
witness. Properties run on a thread pool whose size is capped by the
``LSOB_THREADS`` environment variable; every property draws from its own
stream, so results do not depend on scheduling.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import concavity, entropy, logsobolev, pinsker, shearer
from .errors import ArgumentError
from .matcore import DensityMatrix, tensor, trace_norm
from .sampler import (
    ENSEMBLES,
    Stream,
    draw_state,
    fixed_spectrum_state,
    random_spectrum,
    random_traceless_hermitian,
    well_conditioned_state,
)

SUITES = ("entropy", "logsobolev", "pinsker", "concavity", "shearer")
SLACK_TOL = 1e-9


@dataclass
class PropertyResult:
    suite: str
    name: str
    passed: bool
    worst_slack: float
    checked: int
    expected_failure: bool = False
    witness: dict | None = None
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = asdict(self)
        out["worst_slack"] = _json_real(self.worst_slack)
        return out


def _json_real(x: float):
    if x is None or math.isfinite(x):
        return x
    return "inf" if x > 0 else ("-inf" if x < 0 else "nan")


def matrix_json(m) -> dict:
    m = np.asarray(m)
    return {"real": m.real.tolist(), "imag": m.imag.tolist()}


class _Tracker:
    """Keeps the worst slack and the witness that produced it."""

    def __init__(self, tol: float = SLACK_TOL):
        self.tol = tol
        self.worst = math.inf
        self.witness = None
        self.count = 0

    def add(self, slack: float, witness: Callable[[], dict]):
        self.count += 1
        if slack < self.worst:
            self.worst = slack
            if slack < -self.tol:
                self.witness = witness()

    def result(self, suite: str, name: str, **kw) -> PropertyResult:
        ok = self.worst >= -self.tol
        return PropertyResult(suite, name, ok, self.worst, self.count,
                              witness=None if ok else self.witness, **kw)


def _pair_witness(sigma, rho, **extra) -> Callable[[], dict]:
    return lambda: {"sigma": matrix_json(sigma.matrix), "rho": matrix_json(rho.matrix), **extra}


def _full_rank_pair(rng: Stream, i: int, dims=(2, 3, 4, 5, 6)) -> tuple[DensityMatrix, DensityMatrix]:
    # sigma Hilbert-Schmidt (full rank almost surely); rho cycles through the ensembles
    d = dims[i % len(dims)]
    sigma = draw_state(d, rng)
    rho = draw_state(d, rng, ENSEMBLES[(i // len(dims)) % len(ENSEMBLES)])
    return sigma, rho


# ---------------------------------------------------------------------------
# entropy
# ---------------------------------------------------------------------------

def relent_nonnegative(seed: int, samples: int) -> PropertyResult:
    rng, tr = Stream(seed, 101), _Tracker()
    for i in range(samples):
        sigma, rho = _full_rank_pair(rng, i)
        tr.add(entropy.relative_entropy(rho, sigma), _pair_witness(sigma, rho))
    return tr.result("entropy", "relative_entropy_nonnegative")


def pinsker_baseline(seed: int, samples: int) -> PropertyResult:
    rng, tr = Stream(seed, 102), _Tracker()
    for i in range(samples):
        sigma, rho = _full_rank_pair(rng, i)
        dist = trace_norm(rho.matrix - sigma.matrix)
        tr.add(entropy.relative_entropy(rho, sigma) - 0.5 * dist ** 2, _pair_witness(sigma, rho))
    return tr.result("entropy", "pinsker_baseline")


def integral_representation(seed: int, samples: int, tol: float = 1e-6) -> PropertyResult:
    rng, tr = Stream(seed, 103), _Tracker(0.0)
    for i in range(samples):
        d = (2, 3, 4, 5, 6)[i % 5]
        sigma, rho = draw_state(d, rng), draw_state(d, rng)
        err = abs(entropy.relative_entropy_integral(rho, sigma) - entropy.relative_entropy(rho, sigma))
        tr.add(tol - err, _pair_witness(sigma, rho, error=err))
    return tr.result("entropy", "integral_matches_eigen")


def entropy_production(seed: int, samples: int, tol: float = 1e-5,
                       floor: float = 0.02) -> PropertyResult:
    """Central difference at ``t = 0`` against ``-(D(rho||sigma) + D(sigma||rho))``.

    States are drawn with every eigenvalue at least ``floor``; the second
    difference of ``D`` blows up like the inverse smallest eigenvalue.
    """
    rng, tr = Stream(seed, 104), _Tracker(0.0)
    for i in range(samples):
        d = (2, 3, 4, 5, 6)[i % 5]
        sigma = well_conditioned_state(d, rng, floor)
        rho = well_conditioned_state(d, rng, floor)
        fd = entropy.entropy_production_fd(rho, sigma, 1e-4)
        exact = entropy.entropy_production_depolarizing(rho, sigma)
        err = abs(fd - exact)
        tr.add(tol - err, _pair_witness(sigma, rho, error=err))
    return tr.result("entropy", "entropy_production_fd")


def continuity_scan(seed: int, samples: int) -> PropertyResult:
    """``|Q_sigma(sigma + eps X) - 1|`` decreases along ``eps = 10^-1..10^-4``
    and is at most 1e-2 at ``eps = 1e-4``."""
    rng, tr = Stream(seed, 105), _Tracker(0.0)
    eps = [1e-1, 1e-2, 1e-3, 1e-4]
    for i in range(samples):
        d = (2, 3, 4)[i % 3]
        sigma = well_conditioned_state(d, rng, 0.05)
        x = random_traceless_hermitian(d, rng)
        pts = [p for p in entropy.continuity_ratio_scan(sigma, x, eps) if p.valid]
        errs = [abs(p.ratio - 1.0) for p in pts]
        monotone = all(b <= a for a, b in zip(errs, errs[1:]))
        slack = 1e-2 - errs[-1] if monotone and pts[-1].epsilon == 1e-4 else -1.0
        tr.add(slack, lambda: {"sigma": matrix_json(sigma.matrix), "x": matrix_json(x.matrix),
                               "errors": errs})
    return tr.result("entropy", "continuity_ratio_scan")


# ---------------------------------------------------------------------------
# logsobolev
# ---------------------------------------------------------------------------

def lower_bound_dominance(seed: int, samples: int = 200) -> PropertyResult:
    tr = _Tracker()
    gaps = []
    for k in range(1, samples + 1):
        s = 0.5 * k / samples
        res = logsobolev.alpha1_depolarizing(s)
        gaps.append(res.alpha1 - res.lower_bound)
        tr.add(gaps[-1], lambda: {"s_min": s, "alpha1": res.alpha1, "lower_bound": res.lower_bound})
    # equality only near s = 1/2
    near = [g for k, g in zip(range(1, samples + 1), gaps) if 0.5 * k / samples < 0.45]
    return tr.result("logsobolev", "lower_bound_dominance",
                     stats={"min_gap_below_0.45": min(near) if near else None})


def oracle_equivalence(seed: int, samples: int = 50, random_states: int = 10_000,
                       tol: float = 1e-3) -> PropertyResult:
    """Closed form against the brute-force oracle on random spectra.

    Two checks per spectrum: agreement within ``tol``, and no random state
    below the closed form by more than 1e-6. Oracle minimizers must also
    have the two-ratio structure.
    """
    rng, tr = Stream(seed, 201), _Tracker(0.0)
    structure_failures = 0
    for i in range(samples):
        d = (2, 3, 4)[i % 3]
        s = random_spectrum(d, rng)
        sigma = fixed_spectrum_state(s, rng)
        closed = logsobolev.alpha1_depolarizing(s.s_min)
        brute = logsobolev.alpha1_bruteforce(sigma, random_samples=random_states, seed=seed * 1000 + i)
        two_ratio = logsobolev.minimizer_two_ratio_check(brute.witness_spectrum, s.values, 1e-3)
        structure_failures += not two_ratio
        slack = min(tol - abs(closed.alpha1 - brute.alpha1), brute.random_min - closed.alpha1 + 1e-6)
        if not two_ratio:
            slack = min(slack, -1.0)
        tr.add(slack, lambda: {"spectrum": s.values.tolist(), "closed": closed.alpha1,
                               "oracle": brute.alpha1, "random_min": brute.random_min,
                               "two_ratio": two_ratio})
    return tr.result("logsobolev", "oracle_equivalence",
                     stats={"two_ratio_failures": structure_failures})


def _decay_states(sigma: DensityMatrix, rng: Stream, i: int) -> DensityMatrix:
    kind = i % 4
    if kind == 3:
        return logsobolev.alpha1_witness_state(sigma)
    return draw_state(sigma.dim, rng, ("hilbert_schmidt", "pure", "fixed_spectrum")[kind])


def decay_inequality(seed: int, samples: int = 1000, per_sigma: int = 5) -> PropertyResult:
    """``D(T_t rho||sigma) <= e^{-2 alpha_1 t} D(rho||sigma)`` on random
    ``(rho, t)``, ``t`` uniform on (0, 3), with the two-block argmin state
    among the inputs."""
    rng, tr = Stream(seed, 202), _Tracker()
    sigma = None
    for i in range(samples):
        if i % per_sigma == 0:
            sigma = draw_state(2 + (i // per_sigma) % 5, rng)
            alpha = logsobolev.alpha1_depolarizing(sigma.s_min).alpha1
        rho = _decay_states(sigma, rng, i)
        t = 3.0 * rng.uniform()
        tr.add(logsobolev.decay_slack(sigma, rho, t, alpha), _pair_witness(sigma, rho, t=t))
    return tr.result("logsobolev", "decay_inequality")


def decay_violation(seed: int, samples: int = 20, excess: float = 0.05,
                    t: float = 1e-3) -> PropertyResult:
    """With ``alpha_1 + excess`` the decay bound must fail; the two-block
    argmin state at small ``t`` is the witness. Passes when a violation is
    found for every sampled ``sigma``."""
    rng = Stream(seed, 203)
    worst, found, witness = math.inf, 0, None
    for i in range(samples):
        sigma = draw_state(2 + i % 5, rng)
        alpha = logsobolev.alpha1_depolarizing(sigma.s_min).alpha1 + excess
        rho = logsobolev.alpha1_witness_state(sigma)
        slack = logsobolev.decay_slack(sigma, rho, t, alpha)
        if slack < 0:
            found += 1
            if witness is None:
                witness = {"sigma": matrix_json(sigma.matrix), "rho": matrix_json(rho.matrix),
                           "t": t, "alpha": alpha, "slack": slack}
        worst = min(worst, slack)
    return PropertyResult("logsobolev", "decay_violation_detected", found == samples, worst,
                          samples, expected_failure=True, witness=witness,
                          stats={"violations_found": found})


def commuting_minimum(seed: int, samples: int = 500) -> PropertyResult:
    """``best_commuting_value(rho, sigma) <= Q_sigma(rho)`` for ``d <= 4``."""
    rng, tr = Stream(seed, 204), _Tracker()
    for i in range(samples):
        sigma, rho = _full_rank_pair(rng, i, dims=(2, 3, 4))
        q = entropy.Q_ratio(rho, sigma)
        best = logsobolev.best_commuting_value(rho, sigma)
        tr.add(q - best if math.isfinite(q) else math.inf, _pair_witness(sigma, rho, q=q, best=best))
    return tr.result("logsobolev", "commuting_permutation_minimum")


def unimodality(seed: int, samples: int = 0,
                xs=(0.5, 0.6, 0.75, 0.9, 0.99), grid: int = 100_000) -> PropertyResult:
    tr = _Tracker(0.0)
    for x in xs:
        scan = logsobolev.unimodality_scan(x, grid)
        tr.add(0.0 if scan.is_unimodal else -1.0, lambda: {"x": x, "m_f": scan.m_f})
    for x in xs:
        if x == 0.5:
            continue
        err = abs(logsobolev.mh_formula(x) - logsobolev.h_argmax_grid(x))
        tr.add(1e-6 - err, lambda: {"x": x, "error": err})
    return tr.result("logsobolev", "unimodality_and_mh")


def q_symmetry(seed: int, samples: int = 200) -> PropertyResult:
    """``q_{1-s}(x) = q_s(1-x)``; the unreflected variant is recorded as a statistic."""
    rng, tr = Stream(seed, 205), _Tracker(0.0)
    xs = np.linspace(0.01, 0.99, 99)
    literal = 0.0
    for _ in range(samples):
        s = 0.01 + 0.48 * rng.uniform()
        err = float(np.max(np.abs(entropy.q_ratio(xs, 1 - s) - entropy.q_ratio(1 - xs, s))))
        literal = max(literal, logsobolev.q_symmetry_defect(s, xs))
        tr.add(SLACK_TOL - err, lambda: {"s": s, "error": err})
    return tr.result("logsobolev", "q_reflection_symmetry", stats={"max_unreflected_defect": literal})


# ---------------------------------------------------------------------------
# pinsker
# ---------------------------------------------------------------------------

def improved_pinsker(seed: int, samples: int = 2000) -> PropertyResult:
    rng, tr = Stream(seed, 301), _Tracker()
    for i in range(samples):
        sigma, rho = _full_rank_pair(rng, i)
        k = pinsker.improved_pinsker_constant(sigma).constant
        dist = trace_norm(rho.matrix - sigma.matrix)
        tr.add(entropy.relative_entropy(rho, sigma) - k * dist ** 2, _pair_witness(sigma, rho, constant=k))
    return tr.result("pinsker", "improved_pinsker")


def tightness(seed: int, samples: int = 50) -> PropertyResult:
    """Ratios along the two-block sequence never drop below the constant
    and end within 1% of it; ``I/2`` at ``eps = 1e-3`` included."""
    rng, tr = Stream(seed, 302), _Tracker(0.0)
    states = [DensityMatrix(np.eye(2) / 2)] + [draw_state(2 + i % 5, rng) for i in range(samples)]
    for sigma in states:
        k = pinsker.improved_pinsker_constant(sigma).constant
        eps = [1e-3] if sigma.dim == 2 and np.allclose(sigma.matrix, np.eye(2) / 2) else None
        pts = [p for p in pinsker.tightness_sequence(sigma, eps) if p.valid]
        below = min(p.ratio - k for p in pts) + SLACK_TOL
        close = 0.01 * k - abs(pts[-1].ratio - k)
        tr.add(min(below, close), lambda: {"sigma": matrix_json(sigma.matrix),
                                           "ratios": [p.ratio for p in pts], "constant": k})
    return tr.result("pinsker", "tightness_sequence")


def explicit_constants(seed: int = 0, samples: int = 0) -> PropertyResult:
    tr = _Tracker(0.0)
    skew = np.diag([0.99, 0.0025, 0.0025, 0.0025, 0.0025])
    k = pinsker.improved_pinsker_constant(skew).constant
    tr.add(1e-9 - abs(k - pinsker.phi(0.01) / 4), lambda: {"constant": k})
    k2 = pinsker.improved_pinsker_constant(np.eye(2) / 2).constant
    tr.add(1e-12 - abs(k2 - 0.5), lambda: {"constant": k2})
    return tr.result("pinsker", "explicit_constants")


def fixed_distance_minimum(seed: int, samples: int = 200) -> PropertyResult:
    """Witness ``tau`` at distance ``eps`` attains the subset minimum, and no
    sampled ``rho`` at distance ``>= eps`` has smaller relative entropy.

    The pinched state (``rho``'s diagonal in ``sigma``'s eigenbasis) is
    checked as well; the subset formula is the classical minimum, so for
    states commuting with ``sigma`` it cannot be beaten. Non-commuting
    states can fall below it; the statistics separate the two cases.
    """
    rng, tr = Stream(seed, 303), _Tracker()
    commuting_worst, general_violations = math.inf, 0
    for i in range(samples):
        sigma, rho = _full_rank_pair(rng, i)
        dist = trace_norm(rho.matrix - sigma.matrix)
        eps = dist * (0.2 + 0.8 * rng.uniform())
        res = pinsker.min_relent_at_distance(sigma, eps)
        tau = pinsker.relent_witness_state(sigma, eps)
        tau_err = max(abs(trace_norm(tau.matrix - sigma.matrix) - eps),
                      abs(entropy.relative_entropy(tau, sigma) - res.value))
        lower = entropy.relative_entropy(rho, sigma) - res.value
        general_violations += lower < -SLACK_TOL
        v = sigma.eig[1]
        pinched = DensityMatrix((v * np.einsum("ji,jk,ki->i", v.conj(), rho.matrix, v).real) @ v.conj().T)
        p_dist = trace_norm(pinched.matrix - sigma.matrix)
        if p_dist > 0:
            p_res = pinsker.min_relent_at_distance(sigma, p_dist)
            commuting_worst = min(commuting_worst, entropy.relative_entropy(pinched, sigma) - p_res.value)
        tr.add(min(lower, SLACK_TOL - tau_err), _pair_witness(sigma, rho, epsilon=eps, value=res.value,
                                                              relent=res.value + lower))
    return tr.result("pinsker", "fixed_distance_minimum",
                     stats={"general_violations": general_violations,
                            "commuting_worst_slack": commuting_worst})


def hoeffding_infimum(seed: int = 0, samples: int = 0, ps=(0.05, 0.25, 0.5)) -> PropertyResult:
    """Grid infimum of ``D_2(p + eps||p) / eps^2`` over ``eps`` in (0, 1-p]."""
    tr = _Tracker(0.0)
    for p in ps:
        e = np.concatenate([np.geomspace(1e-6, 1 - p, 200_000), [1 - 2 * p] if p < 0.5 else []])
        e = e[(e > 0) & (e <= 1 - p)]
        val = float(np.min(entropy.binary_relative_entropy(p + e, p) / e ** 2))
        tr.add(1e-6 - abs(val - pinsker.phi(p)), lambda: {"p": p, "grid_inf": val})
    return tr.result("pinsker", "binary_infimum")


def phi_monotone(seed: int = 0, samples: int = 0) -> PropertyResult:
    tr = _Tracker(0.0)
    ps = np.linspace(1e-4, 0.5, 5001)
    vals = np.array([pinsker.phi(p) for p in ps])
    steps = vals[:-1] - vals[1:]
    tr.add(float(steps.min()) if steps.min() > 0 else -1.0, lambda: {"min_step": float(steps.min())})
    return tr.result("pinsker", "phi_decreasing")


def mixing_time(seed: int, samples: int = 200) -> PropertyResult:
    rng, tr = Stream(seed, 304), _Tracker()
    for i in range(samples):
        sigma, rho = _full_rank_pair(rng, i)
        alpha = logsobolev.alpha1_depolarizing(sigma.s_min).alpha1
        t = 4.0 * rng.uniform()
        bound = pinsker.mixing_time_bound(sigma, alpha, t)
        tr.add(bound - pinsker.mixing_distance(sigma, rho, t), _pair_witness(sigma, rho, t=t))
    return tr.result("pinsker", "mixing_time_bound")


# ---------------------------------------------------------------------------
# concavity
# ---------------------------------------------------------------------------

def concavity_bounds(seed: int, samples: int = 2000, q_points: int = 21) -> PropertyResult:
    """Gap dominates the concavity bound and the trace-norm comparison bound;
    the Pinsker-substituted bound stays below the exact one; the
    relative-entropy comparison bound dominates its trace-norm relaxation."""
    rng, tr = Stream(seed, 401), _Tracker()
    qs = concavity.q_grid(q_points)
    for i in range(samples):
        sigma, rho = _full_rank_pair(rng, i)
        for rep in concavity.bound_table(sigma, rho, qs):
            slack = min(rep.gap - rep.thm2_bound, rep.gap - rep.kim_trace_bound,
                        rep.thm2_bound - rep.combined_trace_bound)
            if rep.kim_relent_bound is not None:
                slack = min(slack, rep.kim_relent_bound - rep.kim_trace_bound)
            tr.add(slack, _pair_witness(sigma, rho, q=rep.q))
    return tr.result("concavity", "concavity_bounds")


def near_endpoint(seed: int, samples: int = 200, dim: int = 10,
                  qs=(0.001, 0.005, 0.01), threshold: float = 0.5) -> PropertyResult:
    """Share of ``d = 10`` pairs on which the concavity bound exceeds the
    trace-norm comparison bound, per ``q``; passes when every share is at
    least ``threshold``."""
    rng = Stream(seed, 402)
    wins = {q: 0 for q in qs}
    for _ in range(samples):
        sigma, rho = draw_state(dim, rng), draw_state(dim, rng)
        for rep in concavity.bound_table(sigma, rho, qs):
            wins[rep.q] += rep.thm2_bound > rep.kim_trace_bound
    shares = {str(q): wins[q] / samples for q in qs}
    worst = min(shares.values()) - threshold
    return PropertyResult("concavity", "near_endpoint_advantage", worst >= 0, worst, samples,
                          stats={"win_share": shares})


# ---------------------------------------------------------------------------
# shearer
# ---------------------------------------------------------------------------

def shearer_families(seed: int, samples: int = 500, random_families: int = 20) -> PropertyResult:
    rng, tr = Stream(seed, 501), _Tracker()
    for i in range(samples):
        n = (2, 3, 4)[i % 3]
        rho = draw_state(2 ** n, rng, "pure" if i % 2 else "hilbert_schmidt", local_dims=(2,) * n)
        fams = [shearer.CoverFamily.k_uniform(n, k) for k in range(1, n + 1)]
        fams += [shearer.CoverFamily.random(n, 1 + j % 3, rng) for j in range(random_families)]
        for fam in fams:
            tr.add(shearer.shearer_slack(rho, fam),
                   lambda: {"rho": matrix_json(rho.matrix), "family": [list(f) for f in fam.subsets]})
    return tr.result("shearer", "shearer_inequality")


def shearer_products(seed: int, samples: int = 100) -> PropertyResult:
    rng, tr = Stream(seed, 502), _Tracker(0.0)
    for i in range(samples):
        n = (2, 3, 4)[i % 3]
        rho = tensor(*[draw_state(2, rng) for _ in range(n)])
        for k in range(1, n + 1):
            s = shearer.shearer_slack(rho, shearer.CoverFamily.k_uniform(n, k))
            tr.add(SLACK_TOL - abs(s), lambda: {"rho": matrix_json(rho.matrix), "k": k})
        tr.add(0.0 if shearer.k_uniform_slack(rho, n) == 0.0 else -1.0, lambda: {"k": n})
    return tr.result("shearer", "product_equality")


def tensor_power_bound(seed: int, samples: int = 500) -> PropertyResult:
    """Entropy bound for ``T_t^{(x)n}`` with ``t`` uniform on [0, 5]; the
    ensembles include rank-deficient ``sigma`` and pure ``rho``."""
    rng, tr = Stream(seed, 503), _Tracker()
    for i in range(samples):
        d, n = ((2, 2), (2, 3), (2, 4), (3, 2))[i % 4]
        kind = (i // 4) % 3
        if kind == 0:
            sigma = draw_state(d, rng)
        elif kind == 1:
            sigma = draw_state(d, rng, "pure")
        else:
            r = random_spectrum(d, rng).values.copy()
            r[-1] = 0.0
            sigma = DensityMatrix(np.diag(r / r.sum()))
        rho = draw_state(d ** n, rng, ("hilbert_schmidt", "pure")[i % 2], local_dims=(d,) * n)
        t = 5.0 * rng.uniform()
        tr.add(shearer.theorem3_slack(sigma, rho, t, n), _pair_witness(sigma, rho, t=t, n=n))
    return tr.result("shearer", "tensor_power_entropy_bound")


PROPERTIES: dict[str, list[tuple[Callable[..., PropertyResult], float]]] = {
    # (property, share of the requested sample count; 0 means fixed size)
    "entropy": [(relent_nonnegative, 1.0), (pinsker_baseline, 1.0), (integral_representation, 0.5),
                (entropy_production, 1.0), (continuity_scan, 0.25)],
    "logsobolev": [(lower_bound_dominance, 0), (oracle_equivalence, 0.1), (decay_inequality, 2.0),
                   (decay_violation, 0.1), (commuting_minimum, 1.0), (unimodality, 0),
                   (q_symmetry, 1.0)],
    "pinsker": [(improved_pinsker, 2.0), (tightness, 0.25), (explicit_constants, 0),
                (fixed_distance_minimum, 1.0), (hoeffding_infimum, 0), (phi_monotone, 0), (mixing_time, 1.0)],
    "concavity": [(concavity_bounds, 1.0), (near_endpoint, 1.0)],
    "shearer": [(shearer_families, 1.0), (shearer_products, 0.25), (tensor_power_bound, 1.0)],
}


def thread_count(jobs: int) -> int:
    cap = os.environ.get("LSOB_THREADS")
    limit = os.cpu_count() or 1
    if cap:
        try:
            limit = max(1, int(cap))
        except ValueError:
            raise ArgumentError(f"LSOB_THREADS must be an integer, got {cap!r}") from None
    return max(1, min(limit, jobs))


def run_suite(suite: str = "all", seed: int = 0, samples: int = 100) -> list[PropertyResult]:
    """Run one suite (or ``"all"``) and return results in a fixed order."""
    if suite != "all" and suite not in PROPERTIES:
        raise ArgumentError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    if samples < 1:
        raise ArgumentError("samples must be positive")
    names = SUITES if suite == "all" else (suite,)
    jobs = []
    for name in names:
        for fn, share in PROPERTIES[name]:
            if share == 0:
                jobs.append((fn, seed, None))
            else:
                jobs.append((fn, seed, max(3, int(round(share * samples)))))

    def run(job):
        fn, s, n = job
        return fn(s) if n is None else fn(s, n)

    with ThreadPoolExecutor(max_workers=thread_count(len(jobs))) as pool:
        return list(pool.map(run, jobs))
