"""Generalized Yang-Baxter operators, their braid representations and enhancements.

An operator of type ``(d, k, m)`` acts on ``V^{(x)k}`` with ``dim V = d``. On
``n`` strands the generator sigma_i acts on ``V^{(x)(k + m(n-2))}`` as
``I_m^{(x)(i-1)} (x) R (x) I_m^{(x)(n-i-1)}``. Words compose left to right:
the first letter is applied first.

For type ``(d, 3, 1)`` operators that are diagonal on the first and third
tensor factors (the middle-coupling structure) the generators can be applied
without materializing the ``d^(n+1)``-dimensional matrices; see
:func:`apply_structured` and :func:`structured_trace`.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .braidkit import BraidError, BraidWord
from .numkit import (
    ShapeError,
    SpectrumMismatchError,
    ToleranceConfig,
    as_matrix,
    kron_power,
    max_deviation,
    partial_trace_last,
    spectral_projectors,
    tensor_power_exponent,
)
from .reports import CheckReport

__all__ = [
    "StructureError",
    "GybType",
    "GybOperator",
    "Enhancement",
    "EgybOperator",
    "r_nu",
    "r_nu_theta",
    "embed",
    "check_gybe",
    "check_far_commutativity",
    "rep_matrix",
    "apply_structured",
    "apply_word_structured",
    "apply_word_dense",
    "structured_trace",
    "network_trace",
    "rep_trace",
    "diag_channel_sum",
    "channel_sums",
    "image_basis",
    "check_enhancement",
    "min_poly_check",
    "spectrum_check",
    "operator_to_json",
    "operator_from_json",
]


class StructureError(ValueError):
    """The operator lacks the middle-coupling structure; use the dense path."""


@dataclass(frozen=True)
class GybType:
    d: int
    k: int
    m: int

    def __post_init__(self):
        if self.d < 2 or self.k < 2 or not 1 <= self.m < self.k:
            raise ValueError(f"invalid gYB type (d={self.d}, k={self.k}, m={self.m})")

    def factors(self, n: int) -> int:
        """Number of tensor factors of the representation space on ``n`` strands."""
        if n < 1:
            raise ValueError("need at least one strand")
        if n == 1:
            return self.k - self.m
        return self.k + self.m * (n - 2)

    def space_dim(self, n: int) -> int:
        return self.d ** self.factors(n)


@dataclass(frozen=True, eq=False)
class GybOperator:
    ty: GybType
    matrix: np.ndarray

    def __post_init__(self):
        mat = as_matrix(self.matrix).copy()
        size = self.ty.d**self.ty.k
        if mat.shape != (size, size):
            raise ShapeError(f"type {self.ty} needs a {size}x{size} matrix, got {mat.shape}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        # invertibility: unitary matrices pass directly, others through a solve
        eye = np.eye(size)
        if max_deviation(mat @ mat.conj().T, eye) > 1e-10:
            s_min = np.linalg.svd(mat, compute_uv=False)[-1]
            if s_min < 1e-10:
                raise ValueError("operator is singular")
            inv = np.linalg.solve(mat, eye)
            if max_deviation(mat @ inv, eye) > 1e-8:
                raise ValueError("operator is numerically singular")

    @cached_property
    def inverse(self) -> np.ndarray:
        mat = self.matrix
        eye = np.eye(mat.shape[0])
        if max_deviation(mat @ mat.conj().T, eye) <= 1e-12:
            inv = mat.conj().T.copy()
        else:
            inv = np.linalg.solve(mat, eye)
        inv.setflags(write=False)
        return inv

    @cached_property
    def middle_blocks(self) -> np.ndarray | None:
        """Blocks ``B[i1, i3]`` (``d x d``, acting on the middle factor) or None.

        Defined only for type ``(d, 3, 1)`` operators whose entries vanish
        unless the first and third indices are preserved.
        """
        d, k, m = self.ty.d, self.ty.k, self.ty.m
        if k != 3 or m != 1:
            return None
        t = self.matrix.reshape(d, d, d, d, d, d)  # [j1, j2, j3, i1, i2, i3]
        blocks = np.zeros((d, d, d, d), dtype=np.complex128)
        mask = np.zeros(t.shape, dtype=bool)
        for i1, i3 in product(range(d), repeat=2):
            blocks[i1, i3] = t[i1, :, i3, i1, :, i3]
            mask[i1, :, i3, i1, :, i3] = True
        if np.abs(t[~mask]).max(initial=0.0) > 1e-13:
            return None
        blocks.setflags(write=False)
        return blocks

    @property
    def has_middle_coupling(self) -> bool:
        return self.middle_blocks is not None

    def scaled(self, c: complex) -> "GybOperator":
        return GybOperator(self.ty, c * self.matrix)

    def __neg__(self):
        return self.scaled(-1)


@dataclass(frozen=True, eq=False)
class Enhancement:
    mu: np.ndarray
    alpha: complex
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "mu", as_matrix(self.mu))
        if self.alpha == 0 or self.beta == 0:
            raise ValueError("alpha and beta must be invertible")
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))

    @property
    def mu_is_identity(self) -> bool:
        return max_deviation(self.mu, np.eye(self.mu.shape[0])) == 0.0


@dataclass(frozen=True, eq=False)
class EgybOperator:
    op: GybOperator
    enh: Enhancement
    commute_tol: float = 1e-10

    def __post_init__(self):
        d, k = self.op.ty.d, self.op.ty.k
        if self.enh.mu.shape != (d, d):
            raise ShapeError(f"mu must be {d}x{d}, got {self.enh.mu.shape}")
        mu_k = kron_power(self.enh.mu, k)
        r = self.op.matrix
        if max_deviation(mu_k @ r, r @ mu_k) > self.commute_tol:
            raise ValueError("mu^(x)k does not commute with R")


# -- the explicit (2,3,1) family ---------------------------------------------

def r_nu_theta(theta: float, nu: int) -> GybOperator:
    """The 8x8 operator ``R_nu(theta)`` as a direct sum of two 4x4 blocks.

    The first block acts on basis vectors ``(0, i2, i3)`` and the second on
    ``(1, i2, i3)``, both in lexicographic order.
    """
    if nu not in (1, -1):
        raise ValueError(f"nu must be +1 or -1, got {nu}")
    c, s = math.cos(theta), math.sin(theta)
    block1 = np.array(
        [
            [nu * c, 0, 1j * s, 0],
            [0, -1j * s, 0, c],
            [1j * s, 0, nu * c, 0],
            [0, c, 0, -1j * s],
        ]
    )
    block2 = np.array(
        [
            [-1j * s, 0, c, 0],
            [0, nu * c, 0, 1j * s],
            [c, 0, -1j * s, 0],
            [0, 1j * s, 0, nu * c],
        ]
    )
    mat = np.zeros((8, 8), dtype=np.complex128)
    mat[:4, :4] = block1
    mat[4:, 4:] = block2
    return GybOperator(GybType(2, 3, 1), mat)


def _check_odd(N: int) -> None:
    if int(N) != N or N < 3 or N % 2 == 0:
        raise ValueError(f"N must be an odd integer >= 3, got {N}")


def r_nu(N: int, nu: int) -> GybOperator:
    _check_odd(N)
    return r_nu_theta(math.pi / N, nu)


# -- axioms --------------------------------------------------------------------

def embed(r: GybOperator, position: int, n: int) -> np.ndarray:
    """Dense matrix of generator ``position`` (1-based) on ``n`` strands."""
    if not 1 <= position <= n - 1:
        raise BraidError(f"generator {position} out of range for {n} strands")
    d, m = r.ty.d, r.ty.m
    left = d ** (m * (position - 1))
    right = d ** (m * (n - position - 1))
    return np.kron(np.kron(np.eye(left), r.matrix), np.eye(right))


def check_gybe(r: GybOperator, tol: float = 1e-10) -> CheckReport:
    a = embed(r, 1, 3)
    b = embed(r, 2, 3)
    residual = max_deviation(a @ b @ a, b @ a @ b)
    return CheckReport("gYBE", residual <= tol, residual, tol, {"type": (r.ty.d, r.ty.k, r.ty.m)})


def check_far_commutativity(r: GybOperator, tol: float = 1e-10, j: int = 4) -> CheckReport:
    """Commutation of ``R (x) I_m^(j-2)`` with ``I_m^(j-2) (x) R``."""
    a = embed(r, 1, j)
    b = embed(r, j - 1, j)
    residual = max_deviation(a @ b, b @ a)
    return CheckReport("far-commutativity", residual <= tol, residual, tol, {"j": j})


# -- representations -----------------------------------------------------------

def _generator(r: GybOperator, letter: int, n: int) -> np.ndarray:
    i = abs(letter)
    if letter > 0:
        return embed(r, i, n)
    d, m = r.ty.d, r.ty.m
    return np.kron(np.kron(np.eye(d ** (m * (i - 1))), r.inverse), np.eye(d ** (m * (n - i - 1))))


def apply_word_dense(r: GybOperator, w: BraidWord, v: np.ndarray) -> np.ndarray:
    """``rho_n(w) v`` using the full generator matrices."""
    out = np.asarray(v, dtype=np.complex128)
    if w.strands == 1:
        return out.copy()
    cache: dict[int, np.ndarray] = {}
    for x in w.letters:
        g = cache.get(x)
        if g is None:
            g = cache[x] = _generator(r, x, w.strands)
        out = g @ out
    return out


def rep_matrix(r: GybOperator, w: BraidWord) -> np.ndarray:
    return apply_word_dense(r, w, np.eye(r.ty.space_dim(w.strands), dtype=np.complex128))


def _blocks_or_raise(r: GybOperator, inverse: bool = False) -> np.ndarray:
    blocks = r.middle_blocks
    if blocks is None:
        raise StructureError("operator lacks the middle-coupling structure; fall back to dense application")
    if inverse:
        return _inverse_blocks(r)
    return blocks


def _inverse_blocks(r: GybOperator) -> np.ndarray:
    # the inverse of a block-diagonal operator is blockwise
    blocks = r.middle_blocks
    d = r.ty.d
    inv = np.empty_like(blocks)
    for i1, i3 in product(range(d), repeat=2):
        inv[i1, i3] = np.linalg.inv(blocks[i1, i3])
    return inv


def _apply_blocks(blocks: np.ndarray, x: np.ndarray, axis: int, fixed: dict[int, int]) -> np.ndarray:
    """Apply middle-coupling blocks to axes ``axis-1, axis, axis+1`` of ``x``.

    ``x`` has one axis per tensor factor plus trailing batch axes merged into
    the last. Axes listed in ``fixed`` have length 1 and carry the given index.
    """
    shape = x.shape
    a, c = axis - 1, axis + 1
    d = blocks.shape[0]
    lead = int(np.prod(shape[:a], dtype=np.int64))
    trail = int(np.prod(shape[c + 1 :], dtype=np.int64))
    sa, sc = shape[a], shape[c]
    x5 = x.reshape(lead, sa, d, sc, trail)
    out = np.empty_like(x5)
    for ia in range(sa):
        i1 = fixed[a] if a in fixed else ia
        for ic in range(sc):
            i3 = fixed[c] if c in fixed else ic
            out[:, ia, :, ic, :] = np.matmul(blocks[i1, i3], x5[:, ia, :, ic, :])
    return out.reshape(shape)


def apply_structured(r: GybOperator, position: int, v: np.ndarray, inverse: bool = False) -> np.ndarray:
    """Apply generator ``position`` (or its inverse) to a state on ``V^(n+1)``.

    ``v`` is a vector of length ``d**(n+1)`` or a matrix whose columns are such
    vectors. Cost is linear in the size of ``v``.
    """
    blocks = _blocks_or_raise(r, inverse)
    d = r.ty.d
    v = np.asarray(v, dtype=np.complex128)
    dim = v.shape[0]
    factors = tensor_power_exponent(dim, d)
    n = factors - 1
    if not 1 <= position <= n - 1:
        raise BraidError(f"generator {position} out of range for {n} strands")
    batch = v.shape[1:] if v.ndim > 1 else ()
    width = int(np.prod(batch, dtype=np.int64))
    x = v.reshape((d,) * factors + (width,))
    # the batch axis is absorbed into the trailing product
    out = _apply_blocks(blocks, x, position, {})
    return out.reshape(v.shape)


def apply_word_structured(r: GybOperator, w: BraidWord, v: np.ndarray) -> np.ndarray:
    fwd = _blocks_or_raise(r)
    inv = _inverse_blocks(r)
    d = r.ty.d
    factors = r.ty.factors(w.strands)
    v = np.asarray(v, dtype=np.complex128)
    width = int(np.prod(v.shape[1:], dtype=np.int64)) if v.ndim > 1 else 1
    x = v.reshape((d,) * factors + (width,))
    for letter in w.letters:
        x = _apply_blocks(fwd if letter > 0 else inv, x, abs(letter), {})
    return x.reshape(v.shape)


def structured_trace(r: GybOperator, w: BraidWord, max_chunk_bytes: int = 1 << 20) -> complex:
    """``tr rho_n(w)`` without building any ``d^(n+1)``-dimensional matrix.

    Under the middle-coupling structure every generator is diagonal on the
    first and last tensor factors, so the trace splits into ``d*d`` sectors
    with those indices fixed. Each sector is traced by pushing batches of
    basis columns of the ``d^(n-1)`` middle factors through the word.
    """
    fwd = _blocks_or_raise(r)
    inv = _inverse_blocks(r)
    d, n = r.ty.d, w.strands
    if n == 1:
        return complex(r.ty.space_dim(1))
    factors = n + 1
    middle = d ** (n - 1)
    chunk = max(1, min(middle, max_chunk_bytes // (16 * middle)))
    last = factors - 1
    total = 0j
    for first_idx, last_idx in product(range(d), repeat=2):
        fixed = {0: first_idx, last: last_idx}
        for start in range(0, middle, chunk):
            width = min(chunk, middle - start)
            cols = np.zeros((middle, width), dtype=np.complex128)
            cols[np.arange(start, start + width), np.arange(width)] = 1.0
            x = cols.reshape((1,) + (d,) * (n - 1) + (1, width))
            for letter in w.letters:
                x = _apply_blocks(fwd if letter > 0 else inv, x, abs(letter), fixed)
            y = x.reshape(middle, width)
            total += complex(y[np.arange(start, start + width), np.arange(width)].sum())
    return total

# numpy einsum accepts at most 52 distinct index labels
_EINSUM_LABELS = 52


def network_trace(r: GybOperator, w: BraidWord) -> complex:
    """``tr rho_n(w)`` by contracting the word as a tensor network.

    Each generator is a 4-index tensor ``blocks[i1, i3, j2, i2]`` whose control
    indices ``i1, i3`` are shared with the wires they sit on, so the trace is a
    contraction with hyperedges and its cost is governed by the word's
    treewidth rather than by ``d^(n+1)``.
    """
    fwd = _blocks_or_raise(r)
    d, n = r.ty.d, w.strands
    if n == 1:
        return complex(r.ty.space_dim(1))
    labels_needed = n + 1 + len(w.letters)
    if labels_needed > _EINSUM_LABELS:
        raise StructureError(f"word needs {labels_needed} index labels; use structured_trace")
    inv = _inverse_blocks(r)
    start = list(range(n + 1))
    wires = list(start)
    terms: list = []
    for letter in w.letters:
        i = abs(letter)
        new = len(start) + len(terms) // 2
        terms += [fwd if letter > 0 else inv, [wires[i - 1], wires[i + 1], new, wires[i]]]
        wires[i] = new
    close = dict(zip(wires, start))
    operands = []
    for k in range(0, len(terms), 2):
        operands += [terms[k], [close.get(v, v) for v in terms[k + 1]]]
    touched = {v for k in range(1, len(operands), 2) for v in operands[k]}
    free = sum(1 for v in start if v not in touched)
    value = np.einsum(*operands, [], optimize="greedy") if operands else 1.0
    return complex(value) * d**free


def rep_trace(r: GybOperator, w: BraidWord, mu: np.ndarray | None = None, method: str = "auto") -> complex:
    """``tr(rho_n(w) o mu^(x)(k + m(n-2)))``; ``mu=None`` means the identity.

    ``method`` is ``"dense"``, ``"structured"`` (column pushing), ``"network"``
    or ``"auto"``: dense up to six strands, then the network contraction when
    the operator has the middle-coupling structure and the word is short
    enough, otherwise column pushing.
    """
    if method not in ("auto", "dense", "structured", "network"):
        raise ValueError(f"unknown method {method!r}")
    if mu is not None and max_deviation(mu, np.eye(r.ty.d)) == 0.0:
        mu = None
    if method == "auto":
        method = "dense"
        if w.strands > 6 and mu is None and r.has_middle_coupling:
            short = w.strands + 1 + len(w.letters) <= _EINSUM_LABELS
            method = "network" if short else "structured"
    if method in ("structured", "network"):
        if mu is not None:
            raise StructureError("structured traces support mu = Id only")
        return structured_trace(r, w) if method == "structured" else network_trace(r, w)
    rho = rep_matrix(r, w)
    if mu is None:
        return complex(np.trace(rho))
    return complex(np.trace(rho @ kron_power(mu, r.ty.factors(w.strands))))


# -- enhancement -----------------------------------------------------------------

def diag_channel_sum(r: GybOperator, i: int, j: int) -> complex:
    """``sum_k R[(i, j, k), (i, j, k)]`` for a type ``(d, 3, 1)`` operator."""
    d = r.ty.d
    if (r.ty.k, r.ty.m) != (3, 1):
        raise ValueError("channel sums are defined for (d,3,1) operators")
    if not (0 <= i < d and 0 <= j < d):
        raise IndexError(f"indices ({i}, {j}) out of range for d={d}")
    return complex(sum(r.matrix[(i * d + j) * d + k, (i * d + j) * d + k] for k in range(d)))


def channel_sums(r: GybOperator, inverse: bool = False) -> np.ndarray:
    op = GybOperator(r.ty, r.inverse) if inverse else r
    d = r.ty.d
    return np.array([[diag_channel_sum(op, i, j) for j in range(d)] for i in range(d)])


def image_basis(r: GybOperator, n: int, tol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis (rows, flattened matrices) of the span of ``rho_n(B_n)``.

    The span of the image equals the algebra generated by the generators, so
    it is found by closing ``{Id}`` under right multiplication by them.
    """
    dim = r.ty.space_dim(n)
    gens = [embed(r, i, n) for i in range(1, n)]
    basis: list[np.ndarray] = []
    frontier = [np.eye(dim, dtype=np.complex128)]

    def add(mat: np.ndarray) -> bool:
        v = mat.reshape(-1).copy()
        for _ in range(2):
            for b in basis:
                v -= np.vdot(b, v) * b
        norm = np.linalg.norm(v)
        if norm <= tol * max(1.0, np.linalg.norm(mat)):
            return False
        basis.append(v / norm)
        return True

    add(frontier[0])
    while frontier:
        nxt = []
        for mat in frontier:
            for g in gens:
                prod_ = mat @ g
                if add(prod_):
                    nxt.append(prod_)
        frontier = nxt
    return np.array(basis)


def _offdiag_last_factor_residual(f: np.ndarray, d: int) -> float:
    """Largest entry of ``f`` whose row and column agree in the last tensor factor."""
    dim = f.shape[0]
    t = f.reshape(dim // d, d, dim // d, d)
    return float(np.abs(np.einsum("ajbj->abj", t)).max())


def check_enhancement(
    s: EgybOperator, n_max: int = 4, tol: float = 1e-10, method: str = "auto"
) -> CheckReport:
    """Check the enhancement conditions of ``s`` in all ``n`` up to ``n_max``.

    ``method="channel"`` uses the sufficient criterion available for
    middle-coupling operators with ``mu = Id``: ``Sp(R) - alpha*beta*Id`` (and
    the analogue for ``R^-1`` with ``beta/alpha``) must vanish wherever row and
    column agree in the last factor, which for these operators is the statement
    that every channel sum equals ``alpha*beta``. ``method="span"`` checks
    orthogonality of the test elements against an orthonormal basis of the
    image of the braid representation for ``3 <= n <= n_max``.
    """
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    op, enh = s.op, s.enh
    ty = op.ty
    d, k, m = ty.d, ty.k, ty.m
    mu = enh.mu
    mu_k = kron_power(mu, k)
    commute = max_deviation(mu_k @ op.matrix, op.matrix @ mu_k)

    if method == "auto":
        method = "channel" if (enh.mu_is_identity and op.has_middle_coupling) else "span"
    details: dict = {"method": method, "commutation": commute}

    targets = {
        "forward": (op.matrix, enh.alpha * enh.beta),
        "inverse": (op.inverse, enh.beta / enh.alpha),
    }
    if method == "channel":
        if not (enh.mu_is_identity and op.has_middle_coupling):
            raise StructureError("channel criterion needs mu = Id and the middle-coupling structure")
        residuals = {}
        for label, (mat, const) in targets.items():
            sp = partial_trace_last(mat, d, m)
            diff = sp - const * np.eye(sp.shape[0])
            residuals[label] = _offdiag_last_factor_residual(diff, d)
        details["channel_sums"] = channel_sums(op).round(15).tolist()
        details["inverse_channel_sums"] = channel_sums(op, inverse=True).round(15).tolist()
    elif method == "span":
        residuals = {}
        for n in range(3, n_max + 1):
            basis = image_basis(op, n)
            details[f"image_dim_n{n}"] = int(basis.shape[0])
            for label, (mat, const) in targets.items():
                sp = partial_trace_last(mat @ mu_k, d, m)
                core = sp - const * kron_power(mu, k - m)
                elem = np.kron(kron_power(mu, m * (n - 1)), core)
                overlaps = basis.conj() @ elem.reshape(-1)
                residuals[f"{label}_n{n}"] = float(np.abs(overlaps).max())
    else:
        raise ValueError(f"unknown method {method!r}")
    details.update({f"residual_{key}": val for key, val in residuals.items()})
    residual = max([commute, *residuals.values()])
    return CheckReport("enhancement", residual <= tol, residual, tol, details)


# -- spectra ---------------------------------------------------------------------

def min_poly_check(N: int, tol: float = 1e-12) -> CheckReport:
    """Cubic annihilating polynomial of ``-R_{+1}(N)`` and its degree minimality.

    ``R^3 + e^{-i pi/N} R^2 - e^{2 i pi/N} R - e^{i pi/N} Id`` must vanish,
    while no monic quadratic whose roots are two of the three eigenvalues
    ``-e^{i pi/N}, e^{i pi/N}, -e^{-i pi/N}`` does.
    """
    _check_odd(N)
    r = -r_nu(N, 1).matrix
    eye = np.eye(8)
    q = cmath.exp(1j * math.pi / N)
    cubic = r @ r @ r + (1 / q) * (r @ r) - q * q * r - q * eye
    residual = float(np.abs(cubic).max())
    roots = [-q, q, -1 / q]
    quads = {}
    for a, b in combinations(roots, 2):
        quad = (r - a * eye) @ (r - b * eye)
        quads[f"({a:.6f})({b:.6f})"] = float(np.abs(quad).max())
    minimal = min(quads.values()) > 1e-3
    return CheckReport(
        "minimal polynomial",
        residual <= tol and minimal,
        residual,
        tol,
        {"N": N, "quadratic_residuals": quads, "degree_minimal": minimal},
    )


def spectrum_check(r: GybOperator, expected: Sequence[complex], tol: float = 1e-10) -> CheckReport:
    """Confirm the spectrum of ``r`` lies in ``expected`` and report multiplicities.

    Raises :class:`SpectrumMismatchError` if it does not.
    """
    projectors = spectral_projectors(r.matrix, expected, ToleranceConfig(abs_tol=tol))
    mults = [float(np.trace(p).real) for p in projectors]
    rounded = [int(round(x)) for x in mults]
    residual = max(abs(a - b) for a, b in zip(mults, rounded))
    return CheckReport(
        "spectrum",
        residual <= 1e-6,
        residual,
        tol,
        {"eigenvalues": [complex(x) for x in expected], "multiplicities": rounded},
    )


# -- serialization -----------------------------------------------------------------

OPERATOR_FORMAT = "gyblink-operator"


def operator_to_json(r: GybOperator) -> str:
    """Serialize as JSON: type triple plus row-major ``[re, im]`` pairs.

    Floats are written with Python's shortest round-trip repr, so parsing the
    output reproduces the matrix bit for bit.
    """
    entries = [[float(z.real), float(z.imag)] for z in r.matrix.reshape(-1)]
    obj = {"format": OPERATOR_FORMAT, "version": 1, "type": [r.ty.d, r.ty.k, r.ty.m], "entries": entries}
    return json.dumps(obj)


def operator_from_json(text: str) -> GybOperator:
    obj = json.loads(text)
    if obj.get("format") != OPERATOR_FORMAT or obj.get("version") != 1:
        raise ValueError("not a version-1 gyblink operator")
    ty = GybType(*obj["type"])
    size = ty.d**ty.k
    entries = obj["entries"]
    if len(entries) != size * size:
        raise ShapeError(f"expected {size * size} entries, got {len(entries)}")
    mat = np.array([complex(re, im) for re, im in entries], dtype=np.complex128).reshape(size, size)
    return GybOperator(ty, mat)
