import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expoconv import roots as roots_mod
from expoconv.errors import AmbiguousClustering, NoConvergence
from expoconv.roots import (
    characteristic_multiset,
    cluster,
    expand,
    find_roots,
    inclusion_radii,
    residuals,
    symmetrize_conjugates,
)
from expoconv.vandermonde import RootMultiset


def _sorted(z):
    return sorted(np.asarray(z, dtype=complex), key=lambda w: (round(w.real, 6), round(w.imag, 6)))


@pytest.mark.parametrize("coeffs,want", [
    ([2, 3], [-2, -1]),
    ([24, 20, 7], [-3, -2 - 2j, -2 + 2j]),
    ([4, 0], [-2j, 2j]),
    ([5], [-5]),
])
def test_find_roots(backend, coeffs, want):
    z = find_roots(coeffs)
    np.testing.assert_allclose(_sorted(z), _sorted(want), atol=1e-12)
    assert residuals(coeffs, z).max() < 1e-12


@pytest.mark.parametrize("coeffs,want", [
    ([-0.125, 0.75, -1.5], ((0.5, 3),)),
    ([4, 0], ((2j, 1), (-2j, 1))),
    ([16, 0, 8, 0], ((2j, 2), (-2j, 2))),
    ([-0.2, 0.9, -1.4], ((0.4, 1), (0.5 + 0.5j, 1), (0.5 - 0.5j, 1))),
])
def test_characteristic_multiset(backend, coeffs, want):
    rm = characteristic_multiset(coeffs)
    assert rm.order == len(coeffs)
    got = sorted(rm.clusters, key=lambda c: (c[0].real, c[0].imag))
    exp = sorted(want, key=lambda c: (complex(c[0]).real, complex(c[0]).imag))
    assert [m for _, m in got] == [m for _, m in exp]
    for (r, _), (s, _) in zip(got, exp):
        assert abs(r - s) < 1e-6


def test_conjugates_are_exact_for_real_coefficients():
    rm = characteristic_multiset([24, 20, 7])
    cplx = [r for r in rm.roots if r.imag != 0]
    assert len(cplx) == 2 and cplx[0] == cplx[1].conjugate()
    assert any(r.imag == 0 for r in rm.roots)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=3, unique=True),
       st.lists(st.integers(1, 3), min_size=3, max_size=3))
def test_round_trip_through_expand(points, mults):
    rm = RootMultiset(tuple((complex(a, b) / 2, m) for (a, b), m in zip(points, mults)))
    back = characteristic_multiset(expand(rm))
    assert back.order == rm.order
    for r, m in rm.clusters:
        hits = [k for s, k in back.clusters if abs(s - r) < 1e-4]
        assert hits == [m]


def test_cluster_groups_within_tolerance():
    rm = cluster([1.0, 1.0 + 1e-9, 3.0], tol=1e-6)
    assert sorted(rm.multiplicities) == [1, 2]


def test_cluster_uses_inclusion_radii():
    rm = cluster([1.0, 1.001], tol=1e-6, radii=[0.01, 0.01])
    assert rm.clusters == ((1.0005, 2),)


def test_ambiguous_clustering():
    with pytest.raises(AmbiguousClustering):
        cluster([0.0, 1.5e-6, 3.0e-6 + 1e-9], tol=1e-6)


def test_symmetrize_snaps_real_axis():
    rm = symmetrize_conjugates(RootMultiset(((1.0 + 1e-9j, 1), (2 + 1j, 1), (2 - 1.0000001j, 1))))
    assert rm.roots[0] == 1.0
    assert rm.roots[1] == rm.roots[2].conjugate()


def test_inclusion_radii_cover_roots(backend):
    coeffs = expand(RootMultiset(((0.5, 3), (-1.0, 1))))
    z = find_roots(coeffs.real)
    rad = inclusion_radii(coeffs.real, z)
    # the union of the disks holds every root, one disk need not
    for true in (0.5, -1.0):
        assert np.any(np.abs(z - true) <= rad + 1e-12)


def test_no_convergence(monkeypatch):
    monkeypatch.setattr(roots_mod, "MAX_SWEEPS", 1)
    with pytest.raises(NoConvergence) as exc:
        find_roots([1.0, -3.0, 0.5, 2.0, -7.0, 1.5])
    assert exc.value.roots is not None
    assert len(exc.value.residuals) == 6


def test_degree_zero_rejected():
    with pytest.raises(ValueError):
        find_roots([])
