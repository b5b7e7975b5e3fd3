import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lsob.entropy import (
    Q_ratio,
    binary_relative_entropy,
    continuity_ratio_scan,
    entropy_production_depolarizing,
    entropy_production_fd,
    q_ratio,
    q_ratio_batch,
    relative_entropy,
    relative_entropy_integral,
    von_neumann_entropy,
)
from lsob.errors import ArgumentError, PreconditionError
from lsob.matcore import DensityMatrix
from lsob.sampler import ENSEMBLES, Stream, draw_state, random_traceless_hermitian, well_conditioned_state

# frozen with mpmath at 40 digits
D2_HALF_QUARTER = 0.14384103622589
D2_TENTH_HALF = 0.368064207168497
Q_TENTH_AT_HALF = 0.720528082469699
EP_HALF_VS_NINE = 0.878889830934488


def test_entropy_of_maximally_mixed():
    assert von_neumann_entropy(np.eye(4) / 4) == pytest.approx(math.log(4))
    assert von_neumann_entropy(np.diag([1.0, 0.0])) == 0.0


@pytest.mark.parametrize("x, y, expected", [
    (0.5, 0.25, D2_HALF_QUARTER),
    (0.1, 0.5, D2_TENTH_HALF),
])
def test_binary_relative_entropy_frozen(x, y, expected):
    assert binary_relative_entropy(x, y) == pytest.approx(expected, rel=1e-12)


def test_binary_relative_entropy_near_diagonal_relative_precision():
    # D2(y + h || y) ~ h^2 / (2 y (1 - y))
    y, h = 0.3, 1e-7
    approx = h * h / (2 * y * (1 - y))
    assert binary_relative_entropy(y + h, y) == pytest.approx(approx, rel=1e-6)


def test_q_ratio_frozen():
    assert q_ratio(0.5, 0.1) == pytest.approx(Q_TENTH_AT_HALF, rel=1e-12)


def test_q_ratio_extension():
    assert q_ratio(0.3, 0.3) == 1.0
    assert q_ratio(0.0, 0.3) == math.inf
    assert q_ratio(1.0, 0.3) == math.inf
    with pytest.raises(ArgumentError):
        q_ratio(0.5, 0.0)


def test_relative_entropy_classical():
    rho, sigma = np.diag([0.5, 0.5]), np.diag([0.25, 0.75])
    assert relative_entropy(rho, sigma) == pytest.approx(D2_HALF_QUARTER, rel=1e-12)


def test_relative_entropy_support_violation():
    assert relative_entropy(np.eye(2) / 2, np.diag([1.0, 0.0])) == math.inf
    assert relative_entropy(np.diag([1.0, 0.0]), np.eye(2) / 2) == pytest.approx(math.log(2))


@pytest.mark.parametrize("ensemble", ["hilbert_schmidt", "fixed_spectrum", "diagonal"])
@pytest.mark.parametrize("d", [2, 3, 5])
def test_integral_matches_eigen(ensemble, d):
    rng = Stream(100 + d, ENSEMBLES.index(ensemble))
    sigma = draw_state(d, rng)
    rho = draw_state(d, rng, ensemble)
    eig = relative_entropy(rho, sigma)
    assert relative_entropy_integral(rho, sigma) == pytest.approx(eig, abs=1e-6, rel=1e-6)


def test_integral_needs_full_rank():
    with pytest.raises(PreconditionError):
        relative_entropy_integral(np.diag([1.0, 0.0]), np.eye(2) / 2)


@given(st.integers(min_value=2, max_value=5), st.integers(min_value=0, max_value=10**6))
def test_klein_nonnegative(d, seed):
    rng = Stream(seed)
    assert relative_entropy(draw_state(d, rng, "pure"), draw_state(d, rng)) >= 0.0


def test_Q_ratio_proximity():
    sigma = DensityMatrix(np.diag([0.7, 0.3]))
    assert Q_ratio(sigma, sigma) == 1.0
    assert Q_ratio(np.diag([1.0, 0.0]), sigma) == math.inf


def test_Q_ratio_commuting_reduces_to_binary():
    sigma, rho = np.diag([0.1, 0.9]), np.diag([0.5, 0.5])
    assert Q_ratio(rho, sigma) == pytest.approx(Q_TENTH_AT_HALF, rel=1e-10)


def test_Q_ratio_batch_matches_scalar():
    rng = Stream(4)
    sigma = draw_state(3, rng)
    rhos = [draw_state(3, rng, e) for e in ("hilbert_schmidt", "fixed_spectrum", "pure")] + [sigma]
    batch = q_ratio_batch(np.stack([r.matrix for r in rhos]), sigma)
    for b, r in zip(batch, rhos):
        s = Q_ratio(r, sigma)
        assert (b == s == math.inf) or b == pytest.approx(s, rel=1e-8)


def test_entropy_production_frozen():
    val = entropy_production_depolarizing(np.eye(2) / 2, np.diag([0.9, 0.1]))
    assert val == pytest.approx(EP_HALF_VS_NINE, rel=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_entropy_production_matches_finite_difference(seed):
    rng = Stream(seed, 1)
    sigma = well_conditioned_state(3, rng, 0.05)
    rho = well_conditioned_state(3, rng, 0.05)
    fd = entropy_production_fd(rho, sigma)
    assert fd == pytest.approx(entropy_production_depolarizing(rho, sigma), rel=1e-5)


def test_finite_difference_leaving_state_space():
    with pytest.raises(PreconditionError):
        entropy_production_fd(np.diag([1.0, 0.0]), np.eye(2) / 2, step=1e-3)


def test_continuity_scan_approaches_one():
    sigma = draw_state(3, Stream(12))
    x = random_traceless_hermitian(3, 13)
    pts = continuity_ratio_scan(sigma, x, [0.0, 1e-2, 1e-3, 1e-4, 1e-5, 100.0])
    assert pts[0].ratio == 1.0
    assert not pts[-1].valid and pts[-1].ratio is None
    assert abs(pts[4].ratio - 1.0) < abs(pts[1].ratio - 1.0)
    assert abs(pts[4].ratio - 1.0) < 1e-3


def test_continuity_scan_rejects_traced():
    with pytest.raises(ArgumentError):
        continuity_ratio_scan(np.eye(2) / 2, np.eye(2), [1e-3])
