"""Closed-form convolution of analog exponential signals.

The n-fold convolution of atoms ``h_r(t) = exp(r t) sigma(t)`` over a root
multiset equals ``sum_s p_s(t) h_{r_s}(t)`` where the coefficients of ``p_s``
come from the last column of the inverse confluent Vandermonde matrix.
"""
from __future__ import annotations

import math

from .errors import DegreeTooHigh
from .signals import AnalogSignal, Poly, binom
from .vandermonde import RootMultiset, VandermondeSystem, build_confluent, solve_system

#: Largest polynomial degree accepted by the monomial/power-basis conversion.
MAX_DEGREE = 20


def convolution_system(rm: RootMultiset) -> VandermondeSystem:
    """The solved confluent system behind :func:`conv_atoms`."""
    return solve_system(build_confluent(rm))


def _assemble(rm: RootMultiset, coeffs) -> AnalogSignal:
    terms = []
    for (r, m), off in zip(rm.clusters, rm.offsets()):
        a = coeffs[off:off + m]
        terms.append((r, Poly(tuple(a[j] / math.factorial(j) for j in range(m)))))
    return AnalogSignal(tuple(terms))


def conv_atoms(rm: RootMultiset) -> AnalogSignal:
    """``h_{r_1}^{*n_1} * ... * h_{r_q}^{*n_q}`` in closed form.

    A single simple root returns the atom itself; a single cluster uses the
    direct power formula; everything else solves the confluent system.
    """
    if len(rm.clusters) == 1:
        r, m = rm.clusters[0]
        return power_conv(r, m)
    sys = convolution_system(rm)
    return _assemble(rm, sys.solution)


def power_conv(r: complex, n: int) -> AnalogSignal:
    """``h_r^{*n} = t**(n-1) / (n-1)! * exp(r t) sigma(t)``."""
    if n < 1:
        raise ValueError("convolution power needs n >= 1")
    return AnalogSignal(((r, Poly.monomial(n - 1, 1.0 / math.factorial(n - 1))),))


def _power_basis(poly: Poly) -> list:
    # t^(j-1) = (j-1)! * h^{*j} / h, so coefficient j of the power basis
    if poly.degree > MAX_DEGREE:
        raise DegreeTooHigh(f"polynomial degree {poly.degree} exceeds {MAX_DEGREE}")
    return [c * math.factorial(j) for j, c in enumerate(poly.coeffs)]


def conv_signals(a: AnalogSignal, b: AnalogSignal) -> AnalogSignal:
    """Convolution of two closed-form analog signals.

    Each term is decomposed into convolution powers of its atom; every pair of
    powers is convolved over the merged multiset. Delta atoms act as identity.
    """
    out = AnalogSignal(
        tuple((t.root, t.poly * a.impulse_weight) for t in b.terms)
        + tuple((t.root, t.poly * b.impulse_weight) for t in a.terms),
        a.impulse_weight * b.impulse_weight,
    )
    for ta in a.terms:
        ca = _power_basis(ta.poly)
        for tb in b.terms:
            cb = _power_basis(tb.poly)
            for j, x in enumerate(ca, start=1):
                if x == 0:
                    continue
                for l, y in enumerate(cb, start=1):
                    if y == 0:
                        continue
                    rm = RootMultiset.merged(((ta.root, j), (tb.root, l)))
                    out = out + conv_atoms(rm) * (x * y)
    return out


def derivative_profile(rm: RootMultiset, i_max: int) -> list:
    """Right-derivatives at ``0+`` of ``conv_atoms(rm)`` for orders ``0..i_max``.

    Computed from the closed form: for ``sum_m c_m t^m e^{rt}`` the i-th
    derivative at 0 is ``sum_m c_m m! C(i, m) r^(i-m)``.
    """
    s = conv_atoms(rm)
    out = []
    for i in range(i_max + 1):
        acc = 0j
        for term in s.terms:
            r = term.root
            for m, c in enumerate(term.poly.coeffs):
                if m > i:
                    break
                acc += c * math.factorial(m) * binom(i, m) * r ** (i - m)
        out.append(acc)
    return out
