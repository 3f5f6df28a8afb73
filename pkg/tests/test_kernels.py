import numpy as np
import pytest

from expoconv import kernels
from expoconv._pykernels import confluent_matrix as py_confluent

BACKENDS = kernels.available_backends()
needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")


def test_backend_name_is_known():
    assert kernels.BACKEND in BACKENDS


@needs_both
@pytest.mark.parametrize("mults", [(1, 1, 1), (3,), (2, 1, 3), (1, 4)])
def test_confluent_matrix_backends_agree(mults):
    rng = np.random.default_rng(len(mults))
    roots = rng.normal(size=len(mults)) + 1j * rng.normal(size=len(mults))
    a = BACKENDS["python"].confluent_matrix(roots, mults)
    b = BACKENDS["cython"].confluent_matrix(roots, mults)
    np.testing.assert_allclose(a, b, rtol=1e-15, atol=0)


@needs_both
@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_gauss_solve_backends_agree(n):
    rng = np.random.default_rng(n)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    b = rng.normal(size=(n, 2)) + 0j
    xp, fp = BACKENDS["python"].gauss_solve(a, b, 1e-13)
    xc, fc = BACKENDS["cython"].gauss_solve(a, b, 1e-13)
    assert fp == fc == -1
    np.testing.assert_allclose(xp, xc, rtol=1e-12)
    np.testing.assert_allclose(a @ xp, b, atol=1e-10)


def test_gauss_solve_reports_failing_column(backend):
    a = np.array([[1, 2], [2, 4]], dtype=complex)
    x, fail = kernels.gauss_solve(a, np.ones((2, 1), dtype=complex), 1e-13)
    assert fail == 1


def test_gauss_solve_does_not_touch_inputs(backend):
    a = np.array([[0, 1], [1, 0]], dtype=complex)
    b = np.array([[1], [2]], dtype=complex)
    a0, b0 = a.copy(), b.copy()
    kernels.gauss_solve(a, b, 1e-13)
    assert np.array_equal(a, a0) and np.array_equal(b, b0)


@pytest.mark.parametrize("roots", [[-1, -2], [1, 2, 3, 4], [1j, -1j, 0.5]])
def test_aberth_finds_roots(backend, roots):
    c = np.poly(roots)[::-1].astype(complex)
    z, sweeps, ok = kernels.aberth(c, kernels.initial_circle(c), 200, 1e-13)
    assert ok and sweeps <= 200
    for r in roots:
        assert np.min(np.abs(z - r)) < 1e-10


def test_weierstrass_radii_contain_true_root(backend):
    c = np.poly([0.5, 0.5, 0.5])[::-1].astype(complex)
    z, _, _ = kernels.aberth(c, kernels.initial_circle(c), 200, 1e-13)
    rad = kernels.weierstrass_radii(c, z)
    assert np.all(np.abs(z - 0.5) <= rad + 1e-12)


def test_confluent_matrix_single_simple_root():
    assert py_confluent([3.0], [1]).tolist() == [[1.0]]
