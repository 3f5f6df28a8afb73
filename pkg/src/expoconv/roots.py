"""Characteristic-polynomial roots and their grouping into a multiset."""
from __future__ import annotations

import numpy as np

from . import kernels
from .errors import AmbiguousClustering, NoConvergence
from .vandermonde import RootMultiset

MAX_SWEEPS = 200
CORRECTION_TOL = 1e-13
CLUSTER_TOL = 1e-6


def _ascending(coeffs) -> np.ndarray:
    # monic a_0..a_{n-1} plus the leading 1
    a = np.asarray([complex(c) for c in coeffs], dtype=np.complex128)
    if not np.all(np.isfinite(a)):
        raise ValueError("non-finite polynomial coefficient")
    return np.concatenate([a, [1.0 + 0j]])


def residuals(coeffs, roots) -> np.ndarray:
    """``|p(r)|`` for each root of the monic polynomial with tail ``coeffs``."""
    c = _ascending(coeffs)
    out = []
    for r in roots:
        acc = 0j
        for v in c[::-1]:
            acc = acc * r + v
        out.append(abs(acc))
    return np.array(out)


def find_roots(coeffs) -> np.ndarray:
    """All ``n`` roots (with repetition) of ``x^n + a_{n-1}x^{n-1} + ... + a_0``.

    Parameters
    ----------
    coeffs : sequence
        ``a_0 .. a_{n-1}``; the leading coefficient is implicitly 1.

    Raises
    ------
    NoConvergence
        The sweep cap was hit and some residual exceeds
        ``1e-8 * max(1, sum |a_i|)``. ``roots`` and ``residuals`` on the
        exception carry the best iterate.
    """
    c = _ascending(coeffs)
    n = len(c) - 1
    if n < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if n == 1:
        return np.array([-c[0]])
    z0 = kernels.initial_circle(c)
    z, sweeps, ok = kernels.aberth(c, z0, MAX_SWEEPS, CORRECTION_TOL)
    res = residuals(coeffs, z)
    bound = 1e-8 * max(1.0, float(np.sum(np.abs(c[:-1]))))
    if not ok and np.any(res > bound):
        raise NoConvergence(
            f"root iteration stopped after {sweeps} sweeps, max residual {res.max():.3g}",
            roots=z, residuals=res,
        )
    return z


def inclusion_radii(coeffs, roots) -> np.ndarray:
    """Weierstrass inclusion radii of approximate roots (0 where exact)."""
    return kernels.weierstrass_radii(_ascending(coeffs), np.asarray(roots, dtype=np.complex128))


def _threshold(r, tol):
    return tol * max(1.0, abs(r))


def cluster(roots, tol: float = CLUSTER_TOL, radii=None) -> RootMultiset:
    """Single-linkage grouping of approximate roots into a multiset.

    Two roots link when within ``tol * max(1, |r|)``, or, if inclusion
    ``radii`` are given, when their inclusion disks overlap. Each cluster is
    represented by its mean.

    Raises
    ------
    AmbiguousClustering
        Two resulting representatives lie within twice the threshold.
    """
    zs = [complex(r) for r in roots]
    n = len(zs)
    if n == 0:
        raise ValueError("nothing to cluster")
    rad = [0.0] * n if radii is None else [float(x) for x in radii]
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            d = abs(zs[i] - zs[j])
            lim = max(_threshold(zs[i], tol), _threshold(zs[j], tol), rad[i] + rad[j])
            if d <= lim:
                parent[find(i)] = find(j)
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(zs[i])
    reps = [(sum(g) / len(g), len(g)) for g in sorted(groups.values(), key=lambda g: zs.index(g[0]))]
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            a, b = reps[i][0], reps[j][0]
            if abs(a - b) <= 2.0 * max(_threshold(a, tol), _threshold(b, tol)):
                raise AmbiguousClustering(
                    f"clusters at {a:.6g} and {b:.6g} are too close to separate; "
                    "give roots and multiplicities explicitly"
                )
    return RootMultiset(tuple(reps))


def symmetrize_conjugates(rm: RootMultiset, tol: float = CLUSTER_TOL) -> RootMultiset:
    """Snap near-real clusters to the real axis and average conjugate partners.

    Meant for real-coefficient polynomials, whose roots come in exact
    conjugate pairs.
    """
    cl = list(rm.clusters)
    out = []
    used = [False] * len(cl)
    for i, (r, m) in enumerate(cl):
        if used[i]:
            continue
        used[i] = True
        if abs(r.imag) <= _threshold(r, tol):
            out.append((complex(r.real, 0.0), m))
            continue
        best = None
        for j in range(i + 1, len(cl)):
            if used[j] or cl[j][1] != m:
                continue
            d = abs(cl[j][0] - r.conjugate())
            if d <= max(_threshold(r, tol) * 10, 1e-6) and (best is None or d < best[1]):
                best = (j, d)
        if best is None:
            out.append((r, m))
            continue
        j = best[0]
        used[j] = True
        avg = 0.5 * (r + cl[j][0].conjugate())
        out.append((avg, m))
        out.append((avg.conjugate(), m))
    return RootMultiset(tuple(out))


def characteristic_multiset(coeffs, tol: float = CLUSTER_TOL) -> RootMultiset:
    """Clustered roots of ``x^n + a_{n-1}x^{n-1} + ... + a_0``.

    Real coefficients get a conjugate-symmetrization pass so the multiset is
    closed under conjugation.
    """
    z = find_roots(coeffs)
    rad = inclusion_radii(coeffs, z)
    # an exactly converged root has radius 0; that is fine for linking
    rad = np.where(np.isfinite(rad), rad, 0.0)
    rm = cluster(z, tol, rad)
    if all(complex(c).imag == 0 for c in coeffs):
        rm = symmetrize_conjugates(rm, tol)
    return rm


def expand(rm: RootMultiset) -> np.ndarray:
    """Monic coefficients ``a_0..a_{n-1}`` of ``prod (x - r)^m``."""
    p = np.array([1.0 + 0j])
    for r in rm.expanded():
        p = np.convolve(p, np.array([-r, 1.0]))
    return p[:-1]
