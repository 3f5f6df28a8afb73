"""Pure-Python versions of the numerical kernels.

Signatures match :mod:`expoconv._ckernels` exactly; :mod:`expoconv.kernels`
picks one of the two at import time.
"""
import cmath
import math

import numpy as np

_EPS = 2.220446049250313e-16


def confluent_matrix(roots, mults):
    """Confluent Vandermonde matrix, blocks in the order of ``roots``.

    Block ``s`` column ``j`` row ``i`` (0-based) holds ``C(i, j) * r_s**(i - j)``
    for ``i >= j`` and 0 above the diagonal.
    """
    roots = [complex(r) for r in roots]
    mults = [int(m) for m in mults]
    n = sum(mults)
    cols = []
    for r, m in zip(roots, mults):
        powers = [1.0 + 0j]
        for i in range(1, n):
            powers.append(powers[-1] * r)
        prev = powers
        cols.append(prev)
        for j in range(1, m):
            col = [0j] * n
            col[j] = 1.0 + 0j
            for i in range(j + 1, n):
                # Pascal step: C(i,j) r^(i-j) = r*C(i-1,j) r^(i-1-j) + C(i-1,j-1) r^(i-j)
                col[i] = r * col[i - 1] + prev[i - 1]
            cols.append(col)
            prev = col
    out = np.empty((n, n), dtype=np.complex128)
    for j, col in enumerate(cols):
        out[:, j] = col
    return out


def gauss_solve(a, b, pivot_tol):
    """Solve ``a @ x = b`` by scaled partial pivoting.

    ``b`` is ``(n, m)``. Returns ``(x, fail_col)`` with ``fail_col == -1`` on
    success, otherwise the elimination column whose best scaled pivot fell
    below ``pivot_tol`` (``x`` is then meaningless).
    """
    n = a.shape[0]
    m = b.shape[1]
    A = [list(row) for row in np.asarray(a, dtype=np.complex128).tolist()]
    B = [list(row) for row in np.asarray(b, dtype=np.complex128).tolist()]
    scale = [max(abs(v) for v in row) if n else 0.0 for row in A]
    for k in range(n):
        p = -1
        best = -1.0
        for i in range(k, n):
            if scale[i] == 0.0:
                continue
            ratio = abs(A[i][k]) / scale[i]
            if ratio > best:
                best = ratio
                p = i
        if p < 0 or best < pivot_tol:
            return np.zeros((n, m), dtype=np.complex128), k
        if p != k:
            A[k], A[p] = A[p], A[k]
            B[k], B[p] = B[p], B[k]
            scale[k], scale[p] = scale[p], scale[k]
        rowk = A[k]
        bk = B[k]
        piv = rowk[k]
        for i in range(k + 1, n):
            rowi = A[i]
            if rowi[k] == 0:
                continue
            lam = rowi[k] / piv
            rowi[k] = 0j
            for j in range(k + 1, n):
                rowi[j] -= lam * rowk[j]
            bi = B[i]
            for j in range(m):
                bi[j] -= lam * bk[j]
    X = [[0j] * m for _ in range(n)]
    for k in range(n - 1, -1, -1):
        rowk = A[k]
        for j in range(m):
            acc = B[k][j]
            for c in range(k + 1, n):
                acc -= rowk[c] * X[c][j]
            X[k][j] = acc / rowk[k]
    return np.array(X, dtype=np.complex128).reshape(n, m), -1


def _eval_with_bound(coeffs, z):
    # Horner for p, p' and the rounding-error envelope sum |a_i| |z|^i
    n = len(coeffs) - 1
    p = coeffs[n]
    dp = 0j
    az = abs(z)
    env = abs(coeffs[n])
    for i in range(n - 1, -1, -1):
        dp = dp * z + p
        p = p * z + coeffs[i]
        env = env * az + abs(coeffs[i])
    return p, dp, env


def aberth(coeffs, z0, max_sweeps, tol):
    """Aberth-Ehrlich simultaneous iteration (Gauss-Seidel updates).

    ``coeffs`` are ascending, leading coefficient last. A root is frozen once
    its correction drops below ``tol * |z|`` or ``|p(z)|`` reaches the
    rounding floor of Horner's rule. Returns ``(z, sweeps, converged)``.
    """
    c = [complex(v) for v in coeffs]
    z = [complex(v) for v in z0]
    n = len(z)
    done = [False] * n
    floor = 4.0 * (n + 1) * _EPS
    sweeps = 0
    while sweeps < max_sweeps and not all(done):
        sweeps += 1
        for k in range(n):
            if done[k]:
                continue
            zk = z[k]
            p, dp, env = _eval_with_bound(c, zk)
            if abs(p) <= floor * env:
                done[k] = True
                continue
            ratio = p / dp if dp != 0 else complex(abs(p), 0.0)
            s = 0j
            for j in range(n):
                if j != k:
                    d = zk - z[j]
                    if d != 0:
                        s += 1.0 / d
            denom = 1.0 - ratio * s
            corr = ratio / denom if denom != 0 else ratio
            z[k] = zk - corr
            if abs(corr) <= tol * max(abs(z[k]), _EPS):
                done[k] = True
    return np.array(z, dtype=np.complex128), sweeps, all(done)


def weierstrass_radii(coeffs, z):
    """Inclusion radii ``n * |p(z_k)| / |lead * prod_{j!=k}(z_k - z_j)|``."""
    c = [complex(v) for v in coeffs]
    zs = [complex(v) for v in z]
    n = len(zs)
    lead = c[-1]
    out = np.empty(n, dtype=np.float64)
    for k in range(n):
        p, _, _ = _eval_with_bound(c, zs[k])
        prod = lead
        for j in range(n):
            if j != k:
                prod *= zs[k] - zs[j]
        out[k] = math.inf if prod == 0 else n * abs(p) / abs(prod)
    return out


def initial_circle(coeffs):
    """Perturbed-circle starting points around the root centroid."""
    c = [complex(v) for v in coeffs]
    n = len(c) - 1
    lead = c[-1]
    mono = [v / lead for v in c]
    center = -mono[n - 1] / n
    # Taylor shift p(x + center) by repeated synthetic division
    shifted = list(mono)
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            shifted[j] += center * shifted[j + 1]
    radius = 0.0
    for i in range(1, n + 1):
        radius = max(radius, abs(shifted[n - i]) ** (1.0 / i))
    radius = max(radius, 1e-8 * max(1.0, abs(center)))
    return np.array(
        [center + radius * cmath.exp(1j * (2.0 * math.pi * k / n + 0.7)) for k in range(n)],
        dtype=np.complex128,
    )
