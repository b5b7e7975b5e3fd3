import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lsob.entropy import entropy_production_depolarizing, q_ratio, relative_entropy
from lsob.errors import ArgumentError, PreconditionError, ResourceError
from lsob.logsobolev import (
    alpha1_bruteforce,
    alpha1_depolarizing,
    alpha1_lower_bound,
    alpha1_witness_state,
    best_commuting_value,
    decay_slack,
    golden_section_minimize,
    h_argmax_grid,
    mh_formula,
    min_q_ratio,
    minimizer_two_ratio_check,
    q_symmetry_defect,
    two_block_spectrum,
    two_block_state,
    unimodality_scan,
)
from lsob.sampler import Stream, draw_state, fixed_spectrum_state

# (s_min, alpha_1, argmin x), frozen from a 40-digit mpmath root of dq/dx
ALPHA1_TABLE = [
    (0.25, 0.954706390023385, 0.497421406460391),
    (0.1, 0.860121677952354, 0.482744976726403),
    (0.01, 0.695232326318238, 0.408862665973499),
    (1e-4, 0.582387769254346, 0.254150404033872),
    (1e-8, 0.534668700012358, 0.12419414688684),
    (0.4, 0.993251573803033, 0.499862470864794),
]
MH_075 = 0.633974596215561


@pytest.mark.parametrize("s, alpha, x", ALPHA1_TABLE)
def test_alpha1_frozen(s, alpha, x):
    res = alpha1_depolarizing(s)
    assert res.alpha1 == pytest.approx(alpha, abs=1e-12)
    assert res.argmin_x == pytest.approx(x, abs=1e-6)


@pytest.mark.parametrize("s, alpha, x", ALPHA1_TABLE)
def test_alpha1_above_lower_bound(s, alpha, x):
    res = alpha1_depolarizing(s)
    assert res.alpha1 >= res.lower_bound
    assert res.lower_bound == pytest.approx(0.5 + math.sqrt(s * (1 - s)))


def test_alpha1_half_is_one():
    assert alpha1_depolarizing(0.5).alpha1 == pytest.approx(1.0, abs=1e-12)


def test_alpha1_small_smin_stays_far_from_bound():
    # the true constant approaches 1/2 much more slowly than the bound
    res = alpha1_depolarizing(1e-8)
    assert res.lower_bound == pytest.approx(0.5001, abs=1e-6)
    assert res.alpha1 - res.lower_bound > 0.03


def test_alpha1_monotone_in_smin():
    vals = [alpha1_depolarizing(s).alpha1 for s in (1e-8, 1e-4, 0.01, 0.1, 0.25, 0.4, 0.5)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


@given(st.floats(min_value=1e-6, max_value=0.5))
def test_alpha1_dominates_lower_bound(s):
    assert alpha1_depolarizing(s).alpha1 >= alpha1_lower_bound(s) - 1e-12


def test_alpha1_accepts_states_and_spectra():
    sigma = fixed_spectrum_state([0.6, 0.3, 0.1], 1)
    a = alpha1_depolarizing(sigma).alpha1
    assert a == pytest.approx(alpha1_depolarizing(0.1).alpha1)
    assert a == pytest.approx(alpha1_depolarizing([0.6, 0.3, 0.1]).alpha1)


@pytest.mark.parametrize("bad", [0.0, 1.0, -0.1])
def test_alpha1_rejects(bad):
    with pytest.raises(ArgumentError):
        alpha1_depolarizing(bad)


def test_min_q_reflection():
    x1, v1 = min_q_ratio(0.2)
    x2, v2 = min_q_ratio(0.8)
    assert v1 == pytest.approx(v2, abs=1e-14)
    # the minimum is flat, so its location is only resolved to about sqrt(eps)
    assert x2 == pytest.approx(1 - x1, abs=1e-7)


def test_golden_section_quadratic():
    x, v = golden_section_minimize(lambda x: (x - 0.3) ** 2, 0.0, 1.0)
    assert x == pytest.approx(0.3, abs=1e-6)


def test_witness_state_attains_alpha1():
    sigma = fixed_spectrum_state([0.5, 0.3, 0.2], 2)
    rho = alpha1_witness_state(sigma)
    ep = entropy_production_depolarizing(rho, sigma)
    ratio = ep / (2 * relative_entropy(rho, sigma))
    assert ratio == pytest.approx(alpha1_depolarizing(0.2).alpha1, rel=1e-10)


def test_two_block_spectrum():
    r = two_block_spectrum([0.5, 0.3, 0.2], [2], 0.6)
    assert r.sum() == pytest.approx(1.0)
    assert r[2] == pytest.approx(0.6)
    assert r[0] / r[1] == pytest.approx(0.5 / 0.3)
    with pytest.raises(ArgumentError):
        two_block_spectrum([0.5, 0.5], [0, 1], 0.5)


@pytest.mark.parametrize("seed", range(3))
def test_bruteforce_agrees_with_closed_form(seed):
    sigma = draw_state(3, Stream(seed, 77))
    closed = alpha1_depolarizing(sigma).alpha1
    brute = alpha1_bruteforce(sigma, random_samples=2000, seed=seed)
    assert brute.alpha1 == pytest.approx(closed, abs=1e-9)
    assert brute.random_min >= closed - 1e-9
    assert brute.block_weight == pytest.approx(sigma.s_min, abs=1e-12) \
        or brute.block_weight == pytest.approx(1 - sigma.s_min, abs=1e-12)
    assert minimizer_two_ratio_check(brute.witness_spectrum, sigma.spectrum.values)


def test_bruteforce_limits():
    with pytest.raises(ResourceError):
        alpha1_bruteforce(np.eye(13) / 13)
    with pytest.raises(PreconditionError):
        alpha1_bruteforce(np.diag([1.0, 0.0]))


def test_two_ratio_check():
    s = np.array([0.5, 0.3, 0.2])
    assert minimizer_two_ratio_check(two_block_spectrum(s, [2], 0.4), s)
    assert not minimizer_two_ratio_check([0.2, 0.3, 0.5], s)


@pytest.mark.parametrize("seed", range(4))
def test_decay_at_alpha1(seed):
    rng = Stream(seed, 31)
    sigma = draw_state(3, rng)
    alpha = alpha1_depolarizing(sigma).alpha1
    for t in (0.05, 0.5, 2.0):
        for rho in (draw_state(3, rng), draw_state(3, rng, "pure"), alpha1_witness_state(sigma)):
            assert decay_slack(sigma, rho, t, alpha) >= -1e-12


def test_decay_fails_above_alpha1():
    sigma = fixed_spectrum_state([0.7, 0.3], 3)
    alpha = alpha1_depolarizing(sigma).alpha1
    rho = alpha1_witness_state(sigma)
    assert decay_slack(sigma, rho, 1e-3, alpha + 0.05) < 0


def test_best_commuting_value_on_two_block():
    sigma = fixed_spectrum_state([0.6, 0.4], 5)
    rho = two_block_state(sigma, [1], min_q_ratio(0.4)[0])
    assert best_commuting_value(rho, sigma) == pytest.approx(min_q_ratio(0.4)[1], rel=1e-10)
    assert best_commuting_value(sigma, sigma) == 1.0


@pytest.mark.parametrize("x", [0.05, 0.3, 0.5, 0.7, 0.95])
def test_unimodality(x):
    scan = unimodality_scan(x, y_grid=20000)
    assert scan.is_unimodal


def test_unimodality_args():
    with pytest.raises(ArgumentError):
        unimodality_scan(0.3, y_grid=10)


def test_mh_formula_frozen():
    assert mh_formula(0.75) == pytest.approx(MH_075, abs=1e-14)
    assert h_argmax_grid(0.75) == pytest.approx(MH_075, abs=1e-6)
    with pytest.raises(ArgumentError):
        mh_formula(0.5)


@pytest.mark.parametrize("x", [0.6, 0.8, 0.9])
def test_mh_matches_grid(x):
    assert h_argmax_grid(x) == pytest.approx(mh_formula(x), abs=1e-6)


@pytest.mark.parametrize("s", [0.05, 0.2, 0.4])
def test_q_symmetry(s):
    xs = np.linspace(0.01, 0.99, 99)
    # reflected identity holds; the unreflected one does not
    assert np.allclose(q_ratio(xs, 1 - s), q_ratio(1 - xs, s), rtol=1e-12)
    assert q_symmetry_defect(s, xs) > 1e-3
