"""Closed-form convolution of discrete exponential signals.

Atoms are h-type, ``h_r(k) = r^(k-1) sigma(k-1)``. Their n-fold convolution
over a multiset uses the same confluent system as the analog case; the
coefficients ``A_sj`` land directly on the binomial basis
``C(k-1, j-1) r_s^(k-j) sigma(k-1)``.
"""
from __future__ import annotations

from .errors import ZeroRootAtom
from .signals import DiscreteSignal, advance_discrete, evaluate_discrete
from .vandermonde import RootMultiset, build_confluent, solve_system


def _check_nonzero(rm: RootMultiset):
    for r in rm.roots:
        if r == 0:
            raise ZeroRootAtom("zero roots have no discrete atom; reduce the order first")


def dconv_atoms(rm: RootMultiset) -> DiscreteSignal:
    """``h_{r_1}^{*n_1} * ... * h_{r_q}^{*n_q}`` in the binomial basis."""
    _check_nonzero(rm)
    if len(rm.clusters) == 1:
        r, m = rm.clusters[0]
        return DiscreteSignal.h_power(r, m)
    a = solve_system(build_confluent(rm)).solution
    terms = []
    for (r, m), off in zip(rm.clusters, rm.offsets()):
        terms.append((r, tuple(a[off:off + m]), 0))
    return DiscreteSignal(tuple(terms))


def dpower_conv_e(r: complex, n: int) -> DiscreteSignal:
    """``e_r^{*n}(k) = C(n-1+k, n-1) r^k sigma(k)`` with ``e_r(k) = r^k sigma(k)``.

    Since ``e_r`` is ``h_r`` advanced one step, the n-fold power is ``h_r^{*n}``
    advanced ``n`` steps.
    """
    if n < 1:
        raise ValueError("convolution power needs n >= 1")
    if r == 0:
        raise ZeroRootAtom("zero roots have no discrete atom")
    return advance_discrete(DiscreteSignal.h_power(r, n), n)


def dconv_signals(a: DiscreteSignal, b: DiscreteSignal) -> DiscreteSignal:
    """Convolution of two closed-form discrete signals.

    Shifts add; impulse atoms act as shift operators; each pair of basis
    powers ``H_j^{r} * H_l^{s}`` is one call to :func:`dconv_atoms`.
    """
    terms: list = []
    imps: list = []
    for da, wa in a.impulses:
        for db, wb in b.impulses:
            imps.append((da + db, wa * wb))
        for t in b.terms:
            terms.append((t.root, tuple(c * wa for c in t.coeffs), t.shift + da))
    for db, wb in b.impulses:
        for t in a.terms:
            terms.append((t.root, tuple(c * wb for c in t.coeffs), t.shift + db))
    out = DiscreteSignal(tuple(terms), tuple(imps))
    for ta in a.terms:
        for tb in b.terms:
            d = ta.shift + tb.shift
            for j, x in enumerate(ta.coeffs, start=1):
                if x == 0:
                    continue
                for l, y in enumerate(tb.coeffs, start=1):
                    if y == 0:
                        continue
                    rm = RootMultiset.merged(((ta.root, j), (tb.root, l)))
                    piece = dconv_atoms(rm)
                    out = out + DiscreteSignal(
                        tuple((t.root, tuple(c * x * y for c in t.coeffs), t.shift + d)
                              for t in piece.terms)
                    )
    return out


def dvalue_profile(rm: RootMultiset) -> list:
    """Samples of :func:`dconv_atoms` at ``k = 0..n``.

    For ``n >= 2`` these are ``0, ..., 0, 1`` (zero through ``k = n-1``, one at
    ``k = n``). Returned as computed; callers compare.
    """
    s = dconv_atoms(rm)
    return [evaluate_discrete(s, k) for k in range(rm.order + 1)]
