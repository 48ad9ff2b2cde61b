"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Tensor factors
follow the row-major convention: the basis vector ``(i_1, ..., i_k)`` of
``V^{(x)k}`` sits at flat index ``sum_t i_t * d**(k - t)``, so the last factor
varies fastest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

__all__ = [
    "ShapeError",
    "SpectrumMismatchError",
    "ToleranceConfig",
    "as_matrix",
    "kron",
    "kron_power",
    "partial_trace_last",
    "trace_inner",
    "spectral_projectors",
    "approx_eq",
    "max_deviation",
    "tensor_power_exponent",
]


class ShapeError(ValueError):
    """Raised when matrix shapes are incompatible with an operation."""


class SpectrumMismatchError(ValueError):
    """Raised when a matrix does not have the spectrum a caller asserted."""


@dataclass(frozen=True)
class ToleranceConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-9

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {value!r}")

    def bound(self, scale: float = 0.0) -> float:
        """Admissible deviation for quantities of magnitude ``scale``."""
        return self.abs_tol + self.rel_tol * scale


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a 2-d complex128 array, rejecting other ranks."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-d matrix, got array of shape {m.shape}")
    return m


def _square(a, what: str = "matrix") -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"{what} must be square, got shape {m.shape}")
    return m


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def kron_power(a, times: int) -> np.ndarray:
    """``a`` tensored with itself ``times`` times; the 1x1 identity when ``times == 0``."""
    if times < 0:
        raise ValueError("times must be non-negative")
    m = as_matrix(a)
    if times == 0:
        return np.ones((1, 1), dtype=np.complex128)
    return reduce(np.kron, [m] * times)


def tensor_power_exponent(dim: int, d: int) -> int:
    """Return ``k`` with ``d**k == dim`` or raise :class:`ShapeError`."""
    if d < 2:
        raise ShapeError(f"local dimension must be >= 2, got {d}")
    k, rest = 0, dim
    while rest > 1 and rest % d == 0:
        rest //= d
        k += 1
    if rest != 1:
        raise ShapeError(f"dimension {dim} is not a power of {d}")
    return k


def partial_trace_last(f, d: int, m: int) -> np.ndarray:
    """Trace out the last ``m`` tensor factors of an operator on ``V^{(x)k}``.

    Entry ``[(j_1..j_{k-m}), (i_1..i_{k-m})]`` of the result is the sum over
    the traced multi-index ``j`` of ``f[(j_1..j_{k-m}, j), (i_1..i_{k-m}, j)]``.
    """
    f = _square(f, "operator")
    k = tensor_power_exponent(f.shape[0], d)
    if not 0 < m < k:
        raise ShapeError(f"need 0 < m < k, got m={m}, k={k}")
    keep, drop = d ** (k - m), d**m
    return np.einsum("ajbj->ab", f.reshape(keep, drop, keep, drop))


def trace_inner(f, g) -> complex:
    """Trace inner product ``tr(f^* g)``."""
    f, g = _square(f), _square(g)
    if f.shape != g.shape:
        raise ShapeError(f"shape mismatch: {f.shape} vs {g.shape}")
    # tr(f^* g) = sum_ij conj(f_ij) g_ij
    return complex(np.vdot(f, g))


def spectral_projectors(m, eigenvalues: Sequence[complex], tol: ToleranceConfig | None = None) -> list[np.ndarray]:
    """Lagrange-interpolation projectors onto the eigenspaces of ``m``.

    ``m`` must be diagonalizable with spectrum contained in ``eigenvalues``.
    The projectors are checked for completeness, idempotence and the eigen
    equation; a failed check raises :class:`SpectrumMismatchError`.
    """
    tol = tol or ToleranceConfig()
    m = _square(m)
    lams = [complex(x) for x in eigenvalues]
    if not lams:
        raise ValueError("at least one eigenvalue is required")
    for a in range(len(lams)):
        for b in range(a + 1, len(lams)):
            if abs(lams[a] - lams[b]) <= tol.abs_tol:
                raise ValueError(f"duplicate eigenvalues {lams[a]} and {lams[b]}")

    n = m.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    projectors = []
    for a, lam in enumerate(lams):
        p = eye.copy()
        for b, mu in enumerate(lams):
            if b != a:
                p = p @ (m - mu * eye) / (lam - mu)
        projectors.append(p)

    scale = max(1.0, float(np.abs(m).max()))
    bound = tol.bound(scale) * max(1, len(lams)) * 10
    residuals = [max_deviation(sum(projectors), eye)]
    for lam, p in zip(lams, projectors):
        residuals.append(max_deviation(p @ p, p))
        residuals.append(max_deviation(m @ p, lam * p))
    worst = max(residuals)
    if worst > bound:
        raise SpectrumMismatchError(
            f"spectrum of matrix is not contained in {lams} (projector residual {worst:.3e})"
        )
    return projectors


def max_deviation(a, b) -> float:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.abs(a - b).max())


def approx_eq(a, b, tol: ToleranceConfig | None = None) -> bool:
    tol = tol or ToleranceConfig()
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        return False
    if a.size == 0:
        return True
    scale = float(max(np.abs(a).max(), np.abs(b).max()))
    return float(np.abs(a - b).max()) <= tol.bound(scale)
