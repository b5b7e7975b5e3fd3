"""Seeded, reproducible random states, spectra, frames and perturbations.

Every draw comes from a :class:`Stream`, a Philox4x64-10 counter-based
generator keyed by ``(seed, stream_id)`` with its counter starting at 0.
From the raw 64-bit outputs ``x_k``:

* uniforms are ``u_k = ((x_k >> 11) + 0.5) * 2**-53``, which lie in (0, 1);
* standard normals use Box-Muller on consecutive pairs,
  ``z_{2j} = sqrt(-2 ln u_{2j}) cos(2 pi u_{2j+1})`` and
  ``z_{2j+1} = sqrt(-2 ln u_{2j}) sin(2 pi u_{2j+1})``;
* a standard complex Gaussian array of shape ``s`` consumes ``2 * prod(s)``
  normals, real and imaginary parts interleaved, row-major, scaled by
  ``1/sqrt(2)``.

Philox4x64-10 is the Random123 generator, so the streams can be reproduced
outside numpy. Distinct stream ids give independent streams for the same
seed, which is how property suites split work per sample.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import ArgumentError
from .matcore import DensityMatrix, HermitianMatrix, Spectrum, trace_norm

_MASK64 = (1 << 64) - 1
ENSEMBLES = ("hilbert_schmidt", "fixed_spectrum", "pure", "diagonal")


class Stream:
    """Deterministic random stream for one ``(seed, stream_id)`` pair."""

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = int(seed) & _MASK64
        self.stream_id = int(stream_id) & _MASK64
        key = np.array([self.seed, self.stream_id], dtype=np.uint64)
        self._bits = np.random.Philox(key=key)

    def raw(self, n: int) -> np.ndarray:
        return self._bits.random_raw(n)

    def uniform(self, size=()) -> np.ndarray | float:
        n = prod(size) if isinstance(size, tuple) else int(size)
        u = ((self.raw(n) >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53
        return float(u[0]) if size == () else u.reshape(size)

    def normal(self, size) -> np.ndarray:
        size = (size,) if isinstance(size, int) else tuple(size)
        n = prod(size)
        m = (n + 1) // 2
        u = self.uniform(2 * m)
        r = np.sqrt(-2.0 * np.log(u[0::2]))
        theta = 2.0 * np.pi * u[1::2]
        z = np.empty(2 * m)
        z[0::2] = r * np.cos(theta)
        z[1::2] = r * np.sin(theta)
        return z[:n].reshape(size)

    def complex_normal(self, size) -> np.ndarray:
        size = (size,) if isinstance(size, int) else tuple(size)
        z = self.normal(2 * prod(size))
        return ((z[0::2] + 1j * z[1::2]) / np.sqrt(2.0)).reshape(size)

    def integers(self, low: int, high: int, size=()) -> np.ndarray | int:
        """Integers in ``[low, high)`` via ``floor(u * (high - low))``."""
        u = self.uniform(size)
        out = low + np.floor(np.asarray(u) * (high - low)).astype(np.int64)
        return int(out) if size == () else out

    def permutation(self, n: int) -> np.ndarray:
        """Fisher-Yates shuffle of ``range(n)``."""
        p = np.arange(n)
        for i in range(n - 1, 0, -1):
            j = self.integers(0, i + 1)
            p[i], p[j] = p[j], p[i]
        return p


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    dim: int
    ensemble: str = "hilbert_schmidt"
    stream: int = 0

    def __post_init__(self):
        if self.dim < 1:
            raise ArgumentError("dim must be at least 1")
        if self.ensemble not in ENSEMBLES:
            raise ArgumentError(f"unknown ensemble {self.ensemble!r}; choose from {ENSEMBLES}")


def _stream(seed, stream_id=0) -> Stream:
    return seed if isinstance(seed, Stream) else Stream(seed, stream_id)


# ---------------------------------------------------------------------------
# primitives on an explicit stream
# ---------------------------------------------------------------------------

def haar_unitary(dim: int, rng: Stream, max_retries: int = 10) -> np.ndarray:
    """Haar-random unitary from QR of a complex Ginibre matrix.

    The phases of R's diagonal are moved into Q so the result is
    Haar-distributed rather than biased by the QR convention.
    """
    for _ in range(max_retries):
        z = rng.complex_normal((dim, dim))
        q, r = np.linalg.qr(z)
        diag = np.diag(r)
        if np.min(np.abs(diag)) > 1e-12:
            return q * (diag / np.abs(diag))
    raise ArgumentError("could not draw a non-singular Ginibre matrix")


def random_spectrum(dim: int, rng: Stream) -> Spectrum:
    """Uniform draw from the probability simplex (flat Dirichlet)."""
    e = -np.log(rng.uniform(dim))
    return Spectrum(e / e.sum())


def hilbert_schmidt_matrix(dim: int, rng: Stream) -> np.ndarray:
    g = rng.complex_normal((dim, dim))
    m = g @ g.conj().T
    return m / np.trace(m).real


def pure_matrix(dim: int, rng: Stream) -> np.ndarray:
    psi = rng.complex_normal(dim)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def draw_state(dim: int, rng: Stream, ensemble: str = "hilbert_schmidt",
               local_dims=None) -> DensityMatrix:
    if ensemble == "hilbert_schmidt":
        m = hilbert_schmidt_matrix(dim, rng)
    elif ensemble == "pure":
        m = pure_matrix(dim, rng)
    elif ensemble == "diagonal":
        m = np.diag(random_spectrum(dim, rng).values[rng.permutation(dim)])
    elif ensemble == "fixed_spectrum":
        s = random_spectrum(dim, rng)
        u = haar_unitary(dim, rng)
        m = (u * s.values) @ u.conj().T
    else:
        raise ArgumentError(f"unknown ensemble {ensemble!r}; choose from {ENSEMBLES}")
    return DensityMatrix(m, local_dims)


def well_conditioned_state(dim: int, rng: Stream, floor: float) -> DensityMatrix:
    """Hilbert-Schmidt state mixed with the maximally mixed state.

    Returns ``(1 - dim * floor) * rho_HS + floor * I`` so every eigenvalue is
    at least ``floor``.
    """
    if not 0 <= floor * dim <= 1:
        raise ArgumentError("floor * dim must lie in [0, 1]")
    m = (1 - dim * floor) * hilbert_schmidt_matrix(dim, rng) + floor * np.eye(dim)
    return DensityMatrix(m)


# ---------------------------------------------------------------------------
# seed-level entry points
# ---------------------------------------------------------------------------

def random_density(config: SamplerConfig) -> DensityMatrix:
    """One state drawn from ``config.ensemble``; identical configs replay exactly."""
    return draw_state(config.dim, Stream(config.seed, config.stream), config.ensemble)


def random_unitary_frame(dim: int, seed, stream_id: int = 0) -> np.ndarray:
    if dim < 1:
        raise ArgumentError("dim must be at least 1")
    return haar_unitary(dim, _stream(seed, stream_id))


def fixed_spectrum_state(spectrum, seed, stream_id: int = 0) -> DensityMatrix:
    """``U diag(spectrum) U^dagger`` with ``U`` Haar-random."""
    s = spectrum if isinstance(spectrum, Spectrum) else Spectrum(spectrum)
    u = haar_unitary(len(s), _stream(seed, stream_id))
    return DensityMatrix((u * s.values) @ u.conj().T)


def random_traceless_hermitian(dim: int, seed, norm: float = 1.0,
                               stream_id: int = 0) -> HermitianMatrix:
    """Traceless Hermitian matrix with trace norm ``norm``."""
    if not norm > 0:
        raise ArgumentError("norm must be positive")
    if dim < 2:
        raise ArgumentError("a nonzero traceless Hermitian matrix needs dim >= 2")
    g = _stream(seed, stream_id).complex_normal((dim, dim))
    h = 0.5 * (g + g.conj().T)
    h = h - (np.trace(h).real / dim) * np.eye(dim)
    h = h * (norm / trace_norm(h))
    return HermitianMatrix(h)
