# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels. Mirrors :mod:`expoconv._pykernels`."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt, pow, cos, sin, M_PI, INFINITY

cnp.import_array()

ctypedef double complex cplx

cdef double _EPS = 2.220446049250313e-16


cdef inline double cabs_(cplx z) nogil:
    cdef double a = fabs(z.real)
    cdef double b = fabs(z.imag)
    cdef double t
    if a < b:
        t = a
        a = b
        b = t
    if a == 0.0:
        return 0.0
    t = b / a
    return a * sqrt(1.0 + t * t)


def confluent_matrix(roots, mults):
    cdef cplx[::1] r = np.ascontiguousarray(roots, dtype=np.complex128)
    cdef cnp.int64_t[::1] m = np.ascontiguousarray(mults, dtype=np.int64)
    cdef Py_ssize_t q = r.shape[0]
    cdef Py_ssize_t n = 0
    cdef Py_ssize_t s, i, j, col
    for s in range(q):
        n += m[s]
    out = np.zeros((n, n), dtype=np.complex128)
    cdef cplx[:, ::1] V = out
    cdef cplx rs
    col = 0
    with nogil:
        for s in range(q):
            rs = r[s]
            if n > 0:
                V[0, col] = 1.0
            for i in range(1, n):
                V[i, col] = V[i - 1, col] * rs
            for j in range(1, m[s]):
                V[j, col + j] = 1.0
                for i in range(j + 1, n):
                    V[i, col + j] = rs * V[i - 1, col + j] + V[i - 1, col + j - 1]
            col += m[s]
    return out


def gauss_solve(a, b, double pivot_tol):
    A_arr = np.array(a, dtype=np.complex128, order="C", copy=True)
    B_arr = np.array(b, dtype=np.complex128, order="C", copy=True)
    cdef cplx[:, ::1] A = A_arr
    cdef cplx[:, ::1] B = B_arr
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t m = B.shape[1]
    scale_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] scale = scale_arr
    cdef Py_ssize_t i, j, k, p
    cdef double best, ratio, v, tmpd
    cdef cplx lam, piv, tmp, acc
    cdef Py_ssize_t fail = -1
    with nogil:
        for i in range(n):
            v = 0.0
            for j in range(n):
                tmpd = cabs_(A[i, j])
                if tmpd > v:
                    v = tmpd
            scale[i] = v
        for k in range(n):
            p = -1
            best = -1.0
            for i in range(k, n):
                if scale[i] == 0.0:
                    continue
                ratio = cabs_(A[i, k]) / scale[i]
                if ratio > best:
                    best = ratio
                    p = i
            if p < 0 or best < pivot_tol:
                fail = k
                break
            if p != k:
                for j in range(n):
                    tmp = A[k, j]
                    A[k, j] = A[p, j]
                    A[p, j] = tmp
                for j in range(m):
                    tmp = B[k, j]
                    B[k, j] = B[p, j]
                    B[p, j] = tmp
                tmpd = scale[k]
                scale[k] = scale[p]
                scale[p] = tmpd
            piv = A[k, k]
            for i in range(k + 1, n):
                if A[i, k] == 0:
                    continue
                lam = A[i, k] / piv
                A[i, k] = 0
                for j in range(k + 1, n):
                    A[i, j] = A[i, j] - lam * A[k, j]
                for j in range(m):
                    B[i, j] = B[i, j] - lam * B[k, j]
        if fail < 0:
            for k in range(n - 1, -1, -1):
                for j in range(m):
                    acc = B[k, j]
                    for i in range(k + 1, n):
                        acc = acc - A[k, i] * B[i, j]
                    B[k, j] = acc / A[k, k]
    if fail >= 0:
        return np.zeros((n, m), dtype=np.complex128), fail
    return B_arr, -1


cdef inline void _eval_with_bound(cplx[::1] c, cplx z, cplx* p_out, cplx* dp_out,
                                  double* env_out) nogil:
    cdef Py_ssize_t n = c.shape[0] - 1
    cdef Py_ssize_t i
    cdef cplx p = c[n]
    cdef cplx dp = 0
    cdef double az = cabs_(z)
    cdef double env = cabs_(c[n])
    for i in range(n - 1, -1, -1):
        dp = dp * z + p
        p = p * z + c[i]
        env = env * az + cabs_(c[i])
    p_out[0] = p
    dp_out[0] = dp
    env_out[0] = env


def aberth(coeffs, z0, int max_sweeps, double tol):
    cdef cplx[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    z_arr = np.array(z0, dtype=np.complex128, order="C", copy=True)
    cdef cplx[::1] z = z_arr
    cdef Py_ssize_t n = z.shape[0]
    done_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] done = done_arr
    cdef double floor = 4.0 * (n + 1) * _EPS
    cdef int sweeps = 0
    cdef Py_ssize_t k, j, remaining
    cdef cplx zk, p, dp, ratio, s, d, denom, corr
    cdef double env, az
    with nogil:
        remaining = n
        while sweeps < max_sweeps and remaining > 0:
            sweeps += 1
            for k in range(n):
                if done[k]:
                    continue
                zk = z[k]
                _eval_with_bound(c, zk, &p, &dp, &env)
                if cabs_(p) <= floor * env:
                    done[k] = 1
                    remaining -= 1
                    continue
                if dp != 0:
                    ratio = p / dp
                else:
                    ratio = cabs_(p)
                s = 0
                for j in range(n):
                    if j != k:
                        d = zk - z[j]
                        if d != 0:
                            s = s + 1.0 / d
                denom = 1.0 - ratio * s
                if denom != 0:
                    corr = ratio / denom
                else:
                    corr = ratio
                z[k] = zk - corr
                az = cabs_(z[k])
                if az < _EPS:
                    az = _EPS
                if cabs_(corr) <= tol * az:
                    done[k] = 1
                    remaining -= 1
    return z_arr, sweeps, bool(remaining == 0)


def weierstrass_radii(coeffs, z):
    cdef cplx[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef cplx[::1] zs = np.ascontiguousarray(z, dtype=np.complex128)
    cdef Py_ssize_t n = zs.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t k, j
    cdef cplx p, dp, prod
    cdef double env
    with nogil:
        for k in range(n):
            _eval_with_bound(c, zs[k], &p, &dp, &env)
            prod = c[c.shape[0] - 1]
            for j in range(n):
                if j != k:
                    prod = prod * (zs[k] - zs[j])
            if prod == 0:
                out[k] = INFINITY
            else:
                out[k] = n * cabs_(p) / cabs_(prod)
    return out_arr


def initial_circle(coeffs):
    cdef cplx[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef Py_ssize_t n = c.shape[0] - 1
    cdef Py_ssize_t i, j
    cdef cplx lead = c[n]
    shifted_arr = np.empty(n + 1, dtype=np.complex128)
    cdef cplx[::1] sh = shifted_arr
    for i in range(n + 1):
        sh[i] = c[i] / lead
    cdef cplx center = -sh[n - 1] / n
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            sh[j] = sh[j] + center * sh[j + 1]
    cdef double radius = 0.0
    cdef double v
    for i in range(1, n + 1):
        v = pow(cabs_(sh[n - i]), 1.0 / i)
        if v > radius:
            radius = v
    v = cabs_(center)
    if v < 1.0:
        v = 1.0
    if radius < 1e-8 * v:
        radius = 1e-8 * v
    out_arr = np.empty(n, dtype=np.complex128)
    cdef cplx[::1] out = out_arr
    cdef double ang
    for i in range(n):
        ang = 2.0 * M_PI * i / n + 0.7
        out[i] = center + radius * (cos(ang) + 1j * sin(ang))
    return out_arr
