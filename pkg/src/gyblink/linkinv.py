"""Link invariants from enhanced gYB operators via braid closures.

For an enhanced operator ``(R, mu, alpha, beta)`` and a braid word ``w`` on
``n`` strands the invariant is

    T(w) = alpha^(-writhe) * beta^(-n) * tr(rho_n(w) o mu^(x)(k + m(n-2)))

and the framed value drops the ``alpha^(-writhe)`` factor.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .braidkit import (
    BraidWord,
    disjoint_union,
    markov_conjugate,
    markov_stabilize,
    random_word,
    writhe,
)
from .gybcore import (
    EgybOperator,
    Enhancement,
    GybOperator,
    StructureError,
    channel_sums,
    embed,
    rep_trace,
)
from .numkit import ToleranceConfig, max_deviation, spectral_projectors
from .reports import CheckReport
from .so_n2 import build_gyb, classify_against_twist, category_data

__all__ = [
    "SCHEMES",
    "InvariantResult",
    "enhancement_constant",
    "standard_egyb",
    "t_invariant",
    "framed_invariant",
    "normalized_invariant",
    "evaluate",
    "multiplicativity_check",
    "random_markov_moves",
    "markov_invariance_test",
    "trivial_channel_eigenvalue",
    "cup_cap",
    "skein_operator_check",
    "quadruple_values",
    "skein_quadruple_check",
    "DEFAULT_QUADRUPLES",
    "skein_sign",
]

SCHEMES = ("raw", "framed", "multiplicative", "unit-knot")


@dataclass(frozen=True)
class InvariantResult:
    value: complex
    word: BraidWord
    writhe: int
    strand_count: int
    normalization: str


def enhancement_constant(op: GybOperator, tol: float = 1e-12) -> complex:
    """The common value of all channel sums; raises if they are not constant."""
    sums = channel_sums(op)
    value = complex(sums[0, 0])
    spread = float(np.abs(sums - value).max())
    if spread > tol:
        raise ValueError(f"channel sums are not constant (spread {spread:.3e})")
    return value


def skein_sign(N: int) -> int:
    return -1 if N == 3 else 1


def standard_egyb(N: int, op: GybOperator | None = None) -> EgybOperator:
    """``(R, Id, alpha, 1)`` with ``alpha`` the verified constant channel sum of ``R``.

    ``R`` defaults to :func:`build_gyb`. For ``N >= 5`` alpha equals the twist
    ``e^{i pi (N-1)/N}`` of ``X1``; for ``N = 3`` it is the inverse of the
    tabulated twist, i.e. the twist of the mirrored data.
    """
    op = op if op is not None else build_gyb(N)
    alpha = enhancement_constant(op)
    return EgybOperator(op, Enhancement(np.eye(op.ty.d), alpha, 1.0))


def twist_relation(N: int, op: GybOperator | None = None) -> str | None:
    """How the enhancement constant relates to the tabulated twist of ``X1``."""
    alpha = standard_egyb(N, op).enh.alpha
    return classify_against_twist(alpha, category_data(N).twist)


def _mu_or_none(s: EgybOperator) -> np.ndarray | None:
    return None if s.enh.mu_is_identity else s.enh.mu


def framed_invariant(s: EgybOperator, w: BraidWord, method: str = "auto") -> complex:
    tr = rep_trace(s.op, w, _mu_or_none(s), method)
    return complex(s.enh.beta ** (-w.strands) * tr)


def t_invariant(s: EgybOperator, w: BraidWord, method: str = "auto") -> complex:
    return complex(s.enh.alpha ** (-writhe(w)) * framed_invariant(s, w, method))


def _multiplicative_factor(s: EgybOperator) -> complex:
    ty = s.op.ty
    return complex(np.trace(s.enh.mu)) ** (2 * ty.m - ty.k)


def normalized_invariant(s: EgybOperator, w: BraidWord, scheme: str = "unit-knot", method: str = "auto") -> complex:
    """``multiplicative``: ``tr(mu)^(2m-k) * T``; ``unit-knot``: ``T / 4``."""
    if scheme == "multiplicative":
        return _multiplicative_factor(s) * t_invariant(s, w, method)
    if scheme == "unit-knot":
        return t_invariant(s, w, method) / 4
    raise ValueError(f"unknown normalization scheme {scheme!r}")


def evaluate(s: EgybOperator, w: BraidWord, scheme: str = "unit-knot", method: str = "auto") -> InvariantResult:
    if scheme == "raw":
        value = t_invariant(s, w, method)
    elif scheme == "framed":
        value = framed_invariant(s, w, method)
    else:
        value = normalized_invariant(s, w, scheme, method)
    return InvariantResult(value, w, writhe(w), w.strands, scheme)


def multiplicativity_check(s: EgybOperator, a: BraidWord, b: BraidWord, tol: float = 1e-9) -> CheckReport:
    """Compare ``T(a + b)`` with ``tr(mu)^(2m-k) T(a) T(b)`` and report the measured factor."""
    ta, tb = t_invariant(s, a), t_invariant(s, b)
    tab = t_invariant(s, disjoint_union(a, b))
    expected_factor = _multiplicative_factor(s)
    residual = abs(tab - expected_factor * ta * tb)
    measured = tab / (ta * tb) if ta * tb != 0 else complex("nan")
    return CheckReport(
        "disjoint-union multiplicativity",
        residual <= tol * max(1.0, abs(tab)),
        residual,
        tol,
        {"T(a)": ta, "T(b)": tb, "T(a+b)": tab, "measured_factor": measured, "expected_factor": expected_factor},
    )


def random_markov_moves(w: BraidWord, rng: random.Random, moves: int, max_strands: int = 7) -> BraidWord:
    """Apply ``moves`` random conjugations and stabilizations to ``w``."""
    for _ in range(moves):
        if w.strands < 2 or (w.strands < max_strands and rng.random() < 0.5):
            w = markov_stabilize(w, rng.choice((1, -1)))
        else:
            g = random_word(w.strands, rng.randint(1, 3), rng.randrange(1 << 30))
            w = markov_conjugate(w, g)
    return w


def markov_invariance_test(
    s: EgybOperator,
    w: BraidWord,
    trials: int = 20,
    seed: int = 0,
    tol: float = 1e-8,
    max_moves: int = 4,
    max_strands: int = 7,
) -> CheckReport:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    base = t_invariant(s, w)
    worst = 0.0
    largest_n = w.strands
    for _ in range(trials):
        moved = random_markov_moves(w, rng, rng.randint(1, max_moves), max_strands)
        largest_n = max(largest_n, moved.strands)
        worst = max(worst, abs(t_invariant(s, moved) - base))
    return CheckReport(
        "Markov invariance",
        worst <= tol,
        worst,
        tol,
        {"T": base, "trials": trials, "max_strands": largest_n},
    )


# -- skein relation ----------------------------------------------------------------

def _block_eigenvalues(op: GybOperator) -> tuple[list[complex], list[complex]]:
    blocks = op.middle_blocks
    if blocks is None:
        raise StructureError("skein checks need the middle-coupling structure")
    d = op.ty.d
    same, other = [], []
    for i1 in range(d):
        for i3 in range(d):
            (same if i1 == i3 else other).extend(complex(x) for x in np.linalg.eigvals(blocks[i1, i3]))
    return same, other


def _distinct(values, tol=1e-8) -> list[complex]:
    out: list[complex] = []
    for v in values:
        if all(abs(v - u) > tol for u in out):
            out.append(v)
    return out


def trivial_channel_eigenvalue(op: GybOperator) -> complex:
    """Eigenvalue carried only by the blocks with equal outer indices.

    Those blocks see the channels ``Unit`` and ``X2``, the others ``Z`` and
    ``X2``, so the trivial channel is the one eigenvalue that never occurs in
    the blocks with distinct outer indices.
    """
    same, other = _block_eigenvalues(op)
    candidates = [v for v in _distinct(same) if all(abs(v - u) > 1e-8 for u in other)]
    if len(candidates) != 1:
        raise ValueError(f"cannot identify the trivial channel eigenvalue (candidates {candidates})")
    return candidates[0]


def cup_cap(op: GybOperator) -> np.ndarray:
    """``d`` times the spectral projector of ``R`` onto the trivial channel."""
    same, other = _block_eigenvalues(op)
    spectrum = _distinct(same + other)
    lam = trivial_channel_eigenvalue(op)
    projectors = spectral_projectors(op.matrix, spectrum)
    idx = min(range(len(spectrum)), key=lambda i: abs(spectrum[i] - lam))
    return op.ty.d * projectors[idx]


def skein_operator_check(op: GybOperator, N: int, eta: int, tol: float = 1e-11) -> CheckReport:
    """``R - R^-1 = eta * 2i sin(pi/N) (Id - E)`` with ``E`` the cup-cap, ``tr E = 4``."""
    e = cup_cap(op)
    eye = np.eye(e.shape[0])
    lhs = op.matrix - op.inverse
    rhs = eta * 2j * math.sin(math.pi / N) * (eye - e)
    residual = max_deviation(lhs, rhs)
    tr_e = complex(np.trace(e))
    trace_dev = abs(tr_e - 4)
    return CheckReport(
        "skein operator identity",
        residual <= tol and trace_dev <= tol,
        max(residual, trace_dev),
        tol,
        {"N": N, "eta": eta, "operator_residual": residual, "trace_E": tr_e,
         "trivial_eigenvalue": trivial_channel_eigenvalue(op)},
    )


def _word_trace(op: GybOperator, n: int, factors: list[np.ndarray]) -> complex:
    dim = op.ty.space_dim(n)
    out = np.eye(dim, dtype=np.complex128)
    for f in factors:
        out = f @ out
    return complex(np.trace(out))


def _embedded(op: GybOperator, mat: np.ndarray, position: int, n: int) -> np.ndarray:
    d, m = op.ty.d, op.ty.m
    left = np.eye(d ** (m * (position - 1)))
    right = np.eye(d ** (m * (n - position - 1)))
    return np.kron(np.kron(left, mat), right)


def quadruple_values(s: EgybOperator, w: BraidWord, site: int) -> dict[str, complex]:
    """Framed values of the four diagrams that differ at crossing ``site`` of ``w``.

    ``D+``/``D-`` carry the positive/negative crossing, ``D0`` drops it (the
    orientation-preserving smoothing) and ``Dinf`` replaces it by the cup-cap.
    """
    if not 0 <= site < len(w.letters):
        raise IndexError(f"site {site} out of range for a word of length {len(w.letters)}")
    if not s.enh.mu_is_identity:
        raise ValueError("quadruples are evaluated for mu = Id")
    op, n = s.op, w.strands
    pos = abs(w.letters[site])
    e = cup_cap(op)
    gens = {x: _embedded(op, op.matrix if x > 0 else op.inverse, abs(x), n) for x in set(w.letters) | {pos, -pos}}
    before = [gens[x] for x in w.letters[:site]]
    after = [gens[x] for x in w.letters[site + 1 :]]
    beta_n = s.enh.beta ** (-n)
    return {
        "D+": beta_n * _word_trace(op, n, before + [gens[pos]] + after),
        "D-": beta_n * _word_trace(op, n, before + [gens[-pos]] + after),
        "D0": beta_n * _word_trace(op, n, before + after),
        "Dinf": beta_n * _word_trace(op, n, before + [_embedded(op, e, pos, n)] + after),
    }


DEFAULT_QUADRUPLES = (
    ("B2 crossing", BraidWord(2, (1,)), 0),
    ("trefoil site", BraidWord(2, (1, 1, 1)), 0),
    ("figure-eight site", BraidWord(3, (1, -2, 1, -2)), 1),
)


def skein_quadruple_check(
    s: EgybOperator, N: int, eta: int, tol: float = 1e-10, quadruples=DEFAULT_QUADRUPLES
) -> CheckReport:
    """Framed skein relation ``D+ - D- = eta 2i sin(pi/N) (D0 - Dinf)`` on closed diagrams."""
    coeff = eta * 2j * math.sin(math.pi / N)
    worst = 0.0
    rows = {}
    for name, w, site in quadruples:
        vals = quadruple_values(s, w, site)
        res = abs((vals["D+"] - vals["D-"]) - coeff * (vals["D0"] - vals["Dinf"]))
        rows[name] = {"values": vals, "residual": res}
        worst = max(worst, res)
    return CheckReport("skein quadruples", worst <= tol, worst, tol, {"N": N, "eta": eta, "quadruples": rows})
