import math

import numpy as np
import pytest

from lsob.depolarize import (
    DepolarizingChannel,
    liouvillian_apply,
    semigroup_apply,
    tensor_semigroup_apply,
    tensor_semigroup_expansion,
)
from lsob.errors import ArgumentError, ResourceError
from lsob.matcore import tensor_power
from lsob.sampler import Stream, draw_state


def test_liouvillian_kills_fixed_point():
    sigma = draw_state(3, Stream(1))
    assert np.allclose(liouvillian_apply(sigma, sigma).matrix, 0.0)


def test_semigroup_endpoints():
    rng = Stream(2)
    sigma, rho = draw_state(3, rng), draw_state(3, rng, "pure")
    assert np.allclose(semigroup_apply(sigma, 0.0, rho).matrix, rho.matrix)
    assert np.allclose(semigroup_apply(sigma, 50.0, rho).matrix, sigma.matrix)


def test_semigroup_law():
    rng = Stream(3)
    sigma, rho = draw_state(2, rng), draw_state(2, rng)
    a = semigroup_apply(sigma, 0.3, semigroup_apply(sigma, 0.5, rho))
    b = semigroup_apply(sigma, 0.8, rho)
    assert np.allclose(a.matrix, b.matrix, atol=1e-15)


def test_negative_time_rejected():
    with pytest.raises(ArgumentError):
        semigroup_apply(np.eye(2) / 2, -0.1, np.eye(2) / 2)
    with pytest.raises(ArgumentError):
        DepolarizingChannel(np.eye(2) / 2, -1.0)


def test_channel_wraps_semigroup():
    rng = Stream(4)
    sigma, rho = draw_state(2, rng), draw_state(2, rng)
    ch = DepolarizingChannel(sigma, 0.7)
    assert np.allclose(ch(rho).matrix, semigroup_apply(sigma, 0.7, rho).matrix)


@pytest.mark.parametrize("d, n", [(2, 1), (2, 2), (2, 3), (3, 2)])
@pytest.mark.parametrize("t", [0.0, 0.4, 2.0])
def test_tensor_apply_matches_expansion(d, n, t):
    rng = Stream(10 * d + n)
    sigma = draw_state(d, rng)
    rho = draw_state(d**n, rng, local_dims=(d,) * n)
    a = tensor_semigroup_apply(sigma, t, n, rho)
    b = tensor_semigroup_expansion(sigma, t, n, rho)
    assert np.max(np.abs(a.matrix - b.matrix)) < 1e-14


def test_tensor_fixed_point():
    sigma = draw_state(2, Stream(5))
    sn = tensor_power(sigma, 3)
    out = tensor_semigroup_apply(sigma, 0.9, 3, sn)
    assert np.allclose(out.matrix, sn.matrix, atol=1e-15)


def test_tensor_cap():
    with pytest.raises(ResourceError):
        tensor_semigroup_apply(np.eye(2) / 2, 1.0, 13, np.eye(2) / 2)


def test_tensor_single_site_matches_product_of_channels():
    rng = Stream(6)
    sigma = draw_state(2, rng)
    a, b = draw_state(2, rng), draw_state(2, rng)
    rho = np.kron(a.matrix, b.matrix)
    out = tensor_semigroup_apply(sigma, 0.5, 2, rho)
    ref = np.kron(semigroup_apply(sigma, 0.5, a).matrix, semigroup_apply(sigma, 0.5, b).matrix)
    assert np.allclose(out.matrix, ref, atol=1e-15)
    assert math.isclose(out.trace(), 1.0)
