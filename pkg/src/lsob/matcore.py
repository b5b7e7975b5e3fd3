"""Dense Hermitian linear algebra and validated quantum-state types.

All matrices are stored densely as complex128 numpy arrays and are
read-only once wrapped. Tensor factors are indexed from 0.
"""

from __future__ import annotations

from functools import cached_property
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ArgumentError,
    ConvergenceError,
    ResourceError,
    ValidationError,
)

PSD_SLACK = 1e-10
TRACE_TOL = 1e-10
DEFAULT_DIM_CAP = 4096

# inputs further than this from Hermitian are rejected rather than symmetrized
_HERMITIAN_REJECT = 1e-8


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class HermitianMatrix:
    """Immutable dense Hermitian matrix.

    The input is symmetrized as ``(A + A^dagger) / 2``. Inputs that are
    visibly non-Hermitian are rejected with :class:`ValidationError`.
    """

    def __init__(self, matrix, *, _symmetrize: bool = True):
        a = np.array(matrix, dtype=np.complex128)
        if a.ndim == 0:
            a = a.reshape(1, 1)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValidationError(f"expected a square matrix, got shape {a.shape}")
        if _symmetrize:
            dev = np.max(np.abs(a - a.conj().T), initial=0.0)
            scale = max(1.0, float(np.max(np.abs(a), initial=0.0)))
            if dev > _HERMITIAN_REJECT * scale:
                raise ValidationError(f"matrix is not Hermitian (deviation {dev:.3e})")
            a = 0.5 * (a + a.conj().T)
        self._matrix = _readonly(a)

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    @cached_property
    def eig(self) -> tuple[np.ndarray, np.ndarray]:
        """Ascending eigenvalues and orthonormal eigenvector columns."""
        w, v = np.linalg.eigh(self._matrix)
        return _readonly(w), _readonly(v)

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.eig[0]

    def trace(self) -> float:
        return float(np.trace(self._matrix).real)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._matrix.copy() if copy else self._matrix
        return self._matrix.astype(dtype)

    def __add__(self, other):
        return HermitianMatrix(self._matrix + _raw(other))

    def __sub__(self, other):
        return HermitianMatrix(self._matrix - _raw(other))

    def __rsub__(self, other):
        return HermitianMatrix(_raw(other) - self._matrix)

    def __mul__(self, scalar):
        if np.iscomplexobj(scalar) and np.imag(scalar) != 0:
            raise ArgumentError("only real scalars preserve Hermiticity")
        return HermitianMatrix(float(np.real(scalar)) * self._matrix)

    __rmul__ = __mul__
    __radd__ = __add__

    def __neg__(self):
        return HermitianMatrix(-self._matrix)

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"


class DensityMatrix(HermitianMatrix):
    """Positive semidefinite, unit-trace Hermitian matrix.

    Eigenvalues in ``[-1e-10, 0)`` are clamped to zero; anything more
    negative, or a trace off by more than ``1e-10``, is a
    :class:`ValidationError`.

    Parameters
    ----------
    matrix : array_like
        Square complex matrix.
    local_dims : sequence of int, optional
        Tensor factorization of the Hilbert space. Defaults to ``(dim,)``.
    """

    def __init__(self, matrix, local_dims: Sequence[int] | None = None):
        super().__init__(matrix)
        tr = self.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace is {tr!r}, expected 1")
        w, v = np.linalg.eigh(self._matrix)
        if w[0] < -PSD_SLACK:
            raise ValidationError(f"matrix is not positive semidefinite (eigenvalue {w[0]:.3e})")
        if w[0] < 0.0:
            w = np.clip(w, 0.0, None)
            m = (v * w) @ v.conj().T
            self._matrix = _readonly(0.5 * (m + m.conj().T))
        self.eig = (_readonly(w), _readonly(v))
        self._local_dims = _check_local_dims(local_dims, self.dim)

    @classmethod
    def _unchecked(cls, matrix: np.ndarray, local_dims=None) -> "DensityMatrix":
        # results that are valid by construction (convex mixtures, partial traces, Kronecker products)
        obj = cls.__new__(cls)
        a = np.asarray(matrix, dtype=np.complex128)
        obj._matrix = _readonly(0.5 * (a + a.conj().T))
        obj._local_dims = _check_local_dims(local_dims, obj.dim)
        return obj

    @property
    def local_dims(self) -> tuple[int, ...]:
        return self._local_dims

    @property
    def n_factors(self) -> int:
        return len(self._local_dims)

    @cached_property
    def spectrum(self) -> "Spectrum":
        return Spectrum(np.clip(self.eigenvalues, 0.0, None)[::-1], _validate=False)

    @property
    def s_min(self) -> float:
        return self.spectrum.s_min

    def is_full_rank(self, tol: float = 1e-12) -> bool:
        return self.s_min > tol

    def with_local_dims(self, local_dims: Sequence[int]) -> "DensityMatrix":
        out = DensityMatrix._unchecked(self._matrix, local_dims)
        out.eig = self.eig
        return out


class Spectrum:
    """Descending probability vector, e.g. the eigenvalues of a state."""

    def __init__(self, values, *, _validate: bool = True):
        v = np.sort(np.asarray(values, dtype=float).ravel())[::-1].copy()
        if _validate:
            if v.size == 0:
                raise ValidationError("empty spectrum")
            if v[-1] < -PSD_SLACK or v[0] > 1.0 + PSD_SLACK:
                raise ValidationError("spectrum entries must lie in [0, 1]")
            if abs(v.sum() - 1.0) > TRACE_TOL:
                raise ValidationError(f"spectrum sums to {v.sum()!r}, expected 1")
            v = np.clip(v, 0.0, 1.0)
        self._values = _readonly(v)

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def s_min(self) -> float:
        return float(self._values[-1])

    @property
    def s_max(self) -> float:
        return float(self._values[0])

    def __len__(self):
        return self._values.size

    def __iter__(self):
        return iter(self._values.tolist())

    def __getitem__(self, i):
        return self._values[i]

    def __array__(self, dtype=None, copy=None):
        return self._values if dtype is None else self._values.astype(dtype)

    def __repr__(self):
        return f"Spectrum({self._values.tolist()})"


def _raw(x) -> np.ndarray:
    if isinstance(x, HermitianMatrix):
        return x.matrix
    return np.asarray(x, dtype=np.complex128)


def _check_local_dims(local_dims, dim: int) -> tuple[int, ...]:
    if local_dims is None:
        return (dim,)
    dims = tuple(int(d) for d in local_dims)
    if any(d < 1 for d in dims) or prod(dims) != dim:
        raise ArgumentError(f"local_dims {dims} do not factor dimension {dim}")
    return dims


def as_hermitian(x) -> HermitianMatrix:
    return x if isinstance(x, HermitianMatrix) else HermitianMatrix(x)


def as_density(x, local_dims: Sequence[int] | None = None) -> DensityMatrix:
    """Coerce ``x`` to a :class:`DensityMatrix`, validating raw arrays."""
    if isinstance(x, DensityMatrix):
        if local_dims is not None and tuple(local_dims) != x.local_dims:
            return x.with_local_dims(local_dims)
        return x
    if isinstance(x, HermitianMatrix):
        x = x.matrix
    return DensityMatrix(x, local_dims)


# ---------------------------------------------------------------------------
# eigensolvers
# ---------------------------------------------------------------------------

def jacobi_eigh(a, tol: float = 1e-12, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic complex Jacobi eigensolver for a Hermitian matrix.

    Each rotation first removes the phase of the pivot ``a[p, q]`` with a
    diagonal unitary, then applies the real Jacobi rotation that zeroes it.
    Sweeps stop once the off-diagonal Frobenius norm falls below
    ``tol * max(1, ||a||_F)``.

    Returns
    -------
    w : ndarray
        Eigenvalues in ascending order.
    v : ndarray
        Orthonormal eigenvectors as columns, ``a = v @ diag(w) @ v^dagger``.

    Raises
    ------
    ConvergenceError
        If ``max_sweeps`` sweeps do not reach the tolerance.
    """
    a = np.array(_raw(a), dtype=np.complex128)
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    threshold = tol * max(1.0, float(np.linalg.norm(a)))

    def off_norm(m):
        # direct sum; subtracting the diagonal from the full norm cancels badly
        return float(np.linalg.norm(m - np.diag(np.diag(m))))

    for _ in range(max_sweeps):
        if off_norm(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ g
    else:
        if off_norm(a) > threshold:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off_norm(a):.3e})"
            )
    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eigh(h, method: str = "lapack") -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    ``method="lapack"`` uses numpy's LAPACK driver; ``method="jacobi"`` uses
    :func:`jacobi_eigh`.
    """
    if method == "lapack":
        return as_hermitian(h).eig
    if method == "jacobi":
        return jacobi_eigh(h)
    raise ArgumentError(f"unknown eigensolver {method!r}")


def spectral_apply(h, fn) -> HermitianMatrix:
    """Apply a real scalar function through the spectral decomposition."""
    w, v = as_hermitian(h).eig
    return HermitianMatrix((v * fn(w)) @ v.conj().T)


def matrix_log(rho, floor: float = 1e-300) -> HermitianMatrix:
    """Natural matrix logarithm with eigenvalues floored at ``floor``."""
    if not floor > 0:
        raise ArgumentError("floor must be positive")
    return spectral_apply(rho, lambda w: np.log(np.maximum(w, floor)))


def trace_norm(a) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    if isinstance(a, HermitianMatrix):
        w = a.eigenvalues
    else:
        m = np.asarray(a, dtype=np.complex128)
        w = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    return float(np.sum(np.abs(w)))


# ---------------------------------------------------------------------------
# tensor structure
# ---------------------------------------------------------------------------

def partial_trace(rho, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state on the factors listed in ``keep`` (0-based).

    Factor order in the result follows ascending index order. Tracing out
    every factor returns the 1x1 state ``[[1]]``.
    """
    rho = as_density(rho)
    dims = rho.local_dims
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise ArgumentError(f"keep={keep} references a factor outside 0..{n - 1}")
    if len(keep) == n:
        return rho
    t = rho.matrix.reshape(dims + dims)
    row = list(range(n))
    col = [n + i if i in keep else i for i in range(n)]
    out_idx = keep + [n + i for i in keep]
    reduced = np.einsum(t, row + col, out_idx)
    kdims = tuple(dims[i] for i in keep)
    d = prod(kdims)
    return DensityMatrix._unchecked(reduced.reshape(d, d), kdims or None)


def tensor(*states) -> DensityMatrix:
    """Kronecker product of states; local dims concatenate."""
    if not states:
        raise ArgumentError("need at least one state")
    states = [as_density(s) for s in states]
    m = states[0].matrix
    dims = list(states[0].local_dims)
    for s in states[1:]:
        m = np.kron(m, s.matrix)
        dims.extend(s.local_dims)
    return DensityMatrix._unchecked(m, dims)


def tensor_power(sigma, n: int, cap: int = DEFAULT_DIM_CAP) -> DensityMatrix:
    """``sigma`` tensored with itself ``n`` times, local dims ``(dim,) * n``."""
    sigma = as_density(sigma)
    if n < 1:
        raise ArgumentError("n must be a positive integer")
    if sigma.dim ** n > cap:
        raise ResourceError(f"dimension {sigma.dim}^{n} exceeds cap {cap}")
    if n == 1:
        return sigma.with_local_dims((sigma.dim,))
    m = sigma.matrix
    for _ in range(n - 1):
        m = np.kron(m, sigma.matrix)
    return DensityMatrix._unchecked(m, (sigma.dim,) * n)


def commuting_state(sigma, spectrum) -> DensityMatrix:
    """State diagonal in ``sigma``'s eigenbasis.

    ``spectrum[i]`` is placed on the eigenvector of the i-th largest
    eigenvalue of ``sigma``; the input need not be sorted.
    """
    sigma = as_density(sigma)
    r = np.asarray(spectrum, dtype=float)
    if r.shape != (sigma.dim,):
        raise ArgumentError("spectrum length must match the dimension")
    v = sigma.eig[1][:, ::-1]
    return DensityMatrix((v * r) @ v.conj().T, sigma.local_dims)
