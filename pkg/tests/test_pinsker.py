import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lsob.entropy import relative_entropy
from lsob.errors import ArgumentError, PreconditionError, ResourceError
from lsob.matcore import trace_norm
from lsob.pinsker import (
    balance_pi,
    improved_pinsker_constant,
    min_relent_at_distance,
    mixing_distance,
    mixing_time_bound,
    phi,
    relent_witness_state,
    tightness_sequence,
)
from lsob.sampler import Stream, draw_state, fixed_spectrum_state, random_spectrum

PHI_001 = 4.68889780625979
PHI_THIRD = 2.07944154167984
PHI_TENTH_QUARTER = 0.686632680417569
D2_075_05 = 0.130812035941137
MIX_HALF = 0.433144941112648


@pytest.mark.parametrize("p, expected", [(0.01, PHI_001), (1 / 3, PHI_THIRD), (0.5, 2.0)])
def test_phi_frozen(p, expected):
    assert phi(p) == pytest.approx(expected, rel=1e-13)


def test_phi_tenth():
    assert phi(0.1) / 4 == pytest.approx(PHI_TENTH_QUARTER, rel=1e-13)


def test_phi_series_continuity():
    u = 1e-4
    p = (1 - u) / 2
    direct = (math.log1p(-p) - math.log(p)) / u
    assert phi(p) == pytest.approx(direct, rel=1e-9)
    assert phi(p + 1e-12) == pytest.approx(phi(p), rel=1e-9)


def test_phi_monotone():
    ps = np.linspace(1e-6, 0.5, 2001)
    vals = np.array([phi(p) for p in ps])
    assert np.all(np.diff(vals) <= 0)


@pytest.mark.parametrize("p", [0.0, 0.6, -1.0])
def test_phi_rejects(p):
    with pytest.raises(ArgumentError):
        phi(p)


@pytest.mark.parametrize("spectrum, pi, subset", [
    ([1 / 3] * 3, 1 / 3, (0,)),
    ([0.4, 0.3, 0.2, 0.1], 0.5, (0, 3)),
    ([0.99] + [0.0025] * 4, 0.01, (0,)),  # ties with its complement
    ([0.25] * 4, 0.5, (0, 1)),
])
def test_balance_examples(spectrum, pi, subset):
    res = balance_pi(spectrum)
    assert res.pi == pytest.approx(pi, abs=1e-12)
    assert res.subset == subset


def test_balance_tie_prefers_small_then_lex():
    # {0} and {1, 2} both reach 1/2; the singleton wins
    assert balance_pi([0.5, 0.25, 0.25]).subset == (0,)


def test_balance_literal_is_half():
    assert balance_pi([0.9, 0.1], literal=True).pi == 0.5


@given(st.integers(min_value=2, max_value=10), st.integers(min_value=0, max_value=10**6))
def test_dp_close_to_exhaustive(d, seed):
    s = random_spectrum(d, Stream(seed))
    ex = balance_pi(s, method="exhaustive").pi
    dp = balance_pi(s, method="dp").pi
    assert abs(ex - dp) <= 2 * 1e-6 * d


def test_balance_auto_switches_to_dp():
    s = np.full(30, 1 / 30)
    res = balance_pi(s)
    assert res.method == "dp"
    assert res.pi == pytest.approx(0.5, abs=1e-5)
    with pytest.raises(ResourceError):
        balance_pi(s, method="exhaustive")
    with pytest.raises(ArgumentError):
        balance_pi(s, method="greedy")


def test_constant_for_skewed_spectrum():
    rep = improved_pinsker_constant(np.diag([0.99] + [0.0025] * 4))
    assert rep.pi_sigma == pytest.approx(0.01)
    assert rep.constant == pytest.approx(PHI_001 / 4, rel=1e-12)


def test_constant_needs_full_rank():
    with pytest.raises(PreconditionError):
        improved_pinsker_constant(np.diag([1.0, 0.0]))


@pytest.mark.parametrize("seed", range(5))
def test_improved_pinsker_holds(seed):
    rng = Stream(seed, 301)
    sigma = draw_state(3, rng)
    k = improved_pinsker_constant(sigma).constant
    for ens in ("hilbert_schmidt", "pure", "fixed_spectrum"):
        rho = draw_state(3, rng, ens)
        d = relative_entropy(rho, sigma)
        assert d >= k * trace_norm(rho.matrix - sigma.matrix) ** 2 - 1e-12


def test_min_relent_at_distance_uniform():
    res = min_relent_at_distance(np.eye(2) / 2, 0.5)
    assert res.value == pytest.approx(D2_075_05, rel=1e-12)
    assert min_relent_at_distance(np.eye(2) / 2, 0.0).value == 0.0


def test_relent_witness_attains_minimum():
    sigma = fixed_spectrum_state([0.5, 0.3, 0.2], 7)
    eps = 0.4
    w = relent_witness_state(sigma, eps)
    assert trace_norm(w.matrix - sigma.matrix) == pytest.approx(eps, abs=1e-12)
    assert relative_entropy(w, sigma) == pytest.approx(min_relent_at_distance(sigma, eps).value, rel=1e-10)


def test_min_relent_boundary_kept():
    # P + eps/2 = 1 exactly is feasible
    res = min_relent_at_distance(np.diag([0.5, 0.5]), 1.0)
    assert math.isfinite(res.value)


def test_min_relent_errors():
    with pytest.raises(ArgumentError):
        min_relent_at_distance(np.eye(2) / 2, 2.5)
    with pytest.raises(ResourceError):
        min_relent_at_distance(np.eye(25) / 25, 0.1)


@pytest.mark.parametrize("spectrum", [[0.7, 0.3], [0.6, 0.25, 0.15], [0.5, 0.5]])
def test_tightness_approaches_constant(spectrum):
    sigma = fixed_spectrum_state(spectrum, 8)
    k = improved_pinsker_constant(sigma).constant
    pts = tightness_sequence(sigma)
    assert all(p.valid for p in pts)
    assert all(p.ratio >= k - 1e-12 for p in pts)
    assert pts[-1].ratio == pytest.approx(k, rel=1e-4)


def test_tightness_infeasible_point():
    pts = tightness_sequence(np.diag([0.7, 0.3]), [0.1, 5.0])
    assert pts[0].valid and not pts[1].valid and math.isnan(pts[1].ratio)


def test_mixing_bound_frozen():
    assert mixing_time_bound(np.eye(2) / 2, 1.0, 1.0) == pytest.approx(MIX_HALF, rel=1e-12)


@pytest.mark.parametrize("seed", range(3))
def test_mixing_bound_holds(seed):
    rng = Stream(seed, 304)
    sigma = draw_state(3, rng)
    rho = draw_state(3, rng, "pure")
    from lsob.logsobolev import alpha1_depolarizing
    alpha = alpha1_depolarizing(sigma).alpha1
    for t in (0.0, 0.5, 3.0):
        assert mixing_distance(sigma, rho, t) <= mixing_time_bound(sigma, alpha, t) + 1e-12


def test_mixing_args():
    with pytest.raises(ArgumentError):
        mixing_time_bound(np.eye(2) / 2, 0.0, 1.0)
    with pytest.raises(ArgumentError):
        mixing_time_bound(np.eye(2) / 2, 1.0, -1.0)
