import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gyblink.gybcore import r_nu
from gyblink.numkit import (
    ShapeError,
    SpectrumMismatchError,
    ToleranceConfig,
    approx_eq,
    kron,
    kron_power,
    partial_trace_last,
    spectral_projectors,
    trace_inner,
)


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_kron_examples():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    assert np.array_equal(kron(np.diag([2.0, 3.0]), np.eye(2)), np.diag([2.0, 2.0, 3.0, 3.0]))
    assert kron(np.ones((4, 4)), np.ones((2, 2))).shape == (8, 8)


def test_kron_power_zero_is_scalar_one():
    assert np.array_equal(kron_power(np.eye(2), 0), np.ones((1, 1)))


def test_partial_trace_examples():
    rng = np.random.default_rng(0)
    assert np.allclose(partial_trace_last(np.eye(8), 2, 1), 2 * np.eye(4))
    a, b = random_complex(rng, (4, 4)), random_complex(rng, (2, 2))
    assert np.allclose(partial_trace_last(np.kron(a, b), 2, 1), np.trace(b) * a)
    e = np.zeros((8, 8))
    e[0, 0] = 1
    expected = np.zeros((4, 4))
    expected[0, 0] = 1
    assert np.array_equal(partial_trace_last(e, 2, 1), expected)


def test_partial_trace_rejects_bad_shape():
    with pytest.raises(ShapeError):
        partial_trace_last(np.eye(6), 2, 1)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), k=st.sampled_from([3, 4]), m=st.sampled_from([1, 2]))
def test_partial_trace_preserves_trace(seed, k, m):
    rng = np.random.default_rng(seed)
    f = random_complex(rng, (2**k, 2**k))
    assert np.isclose(np.trace(partial_trace_last(f, 2, m)), np.trace(f))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_partial_trace_is_linear(seed):
    rng = np.random.default_rng(seed)
    f, g = random_complex(rng, (8, 8)), random_complex(rng, (8, 8))
    a, b = random_complex(rng, 2)
    lhs = partial_trace_last(a * f + b * g, 2, 1)
    rhs = a * partial_trace_last(f, 2, 1) + b * partial_trace_last(g, 2, 1)
    assert np.allclose(lhs, rhs)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_kron_associative(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (random_complex(rng, (2, 3)), random_complex(rng, (3, 2)), random_complex(rng, (2, 2)))
    assert np.allclose(kron(kron(a, b), c), kron(a, kron(b, c)))


def test_trace_inner_examples():
    assert trace_inner(np.eye(5), np.eye(5)) == 5
    rng = np.random.default_rng(1)
    f = random_complex(rng, (3, 3))
    v = trace_inner(f, f)
    assert abs(v.imag) < 1e-12 and v.real >= 0
    units = [np.eye(1, 4, k).reshape(2, 2) for k in range(4)]
    for i, p in enumerate(units):
        for j, q in enumerate(units):
            assert trace_inner(p, q) == (1 if i == j else 0)


def test_trace_inner_is_conjugate_linear_in_first_slot():
    rng = np.random.default_rng(2)
    f, g = random_complex(rng, (3, 3)), random_complex(rng, (3, 3))
    assert np.isclose(trace_inner(f, g), np.trace(f.conj().T @ g))
    assert np.isclose(trace_inner(2j * f, g), -2j * trace_inner(f, g))


def test_spectral_projectors_examples():
    p = spectral_projectors(np.diag([1.0, 2.0]), [1, 2])
    assert np.allclose(p[0], np.diag([1, 0])) and np.allclose(p[1], np.diag([0, 1]))
    (only,) = spectral_projectors(np.eye(4), [1])
    assert np.allclose(only, np.eye(4))


def test_spectral_projectors_paper_operator():
    q = np.exp(1j * np.pi / 5)
    r = -r_nu(5, 1).matrix
    projs = spectral_projectors(r, [q, -q, -q.conjugate()])
    ranks = [round(np.trace(p).real) for p in projs]
    assert ranks == [2, 2, 4]
    assert np.allclose(sum(projs), np.eye(8))
    for p, lam in zip(projs, [q, -q, -q.conjugate()]):
        assert np.allclose(p @ p, p)
        assert np.allclose(r @ p, lam * p)


def test_spectral_projectors_detects_missing_eigenvalue():
    with pytest.raises(SpectrumMismatchError):
        spectral_projectors(-r_nu(5, 1).matrix, [1, -1])


def test_spectral_projectors_rejects_duplicates():
    with pytest.raises(ValueError):
        spectral_projectors(np.eye(2), [1, 1])


def test_approx_eq_examples():
    rng = np.random.default_rng(3)
    a = random_complex(rng, (4, 4))
    assert approx_eq(a, a)
    assert not approx_eq(a, a + 1e-6, ToleranceConfig(abs_tol=1e-10, rel_tol=0.0))
    assert approx_eq(np.eye(4), np.eye(4) + 1e-12 * rng.standard_normal((4, 4)))
    assert not approx_eq(np.eye(2), np.eye(3))


def test_tolerance_config_validation():
    with pytest.raises(ValueError):
        ToleranceConfig(abs_tol=-1.0)
    with pytest.raises(ValueError):
        ToleranceConfig(rel_tol=float("nan"))
