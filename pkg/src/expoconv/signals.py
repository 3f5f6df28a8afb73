"""Closed-form signal algebra.

Analog signals are finite sums ``sum_s p_s(t) exp(r_s t) sigma(t) + w delta(t)``.
Discrete signals are finite sums of shifted exponential-polynomial terms in the
binomial basis ``H_j(k) = C(k-1, j-1) r^(k-j) sigma(k-1)`` (the j-fold
convolution power of ``r^(k-1) sigma(k-1)``) plus impulse atoms ``w delta(k-d)``.

All values are immutable; every constructor canonicalizes (merges terms whose
roots agree within :data:`ROOT_TOL`, strips trailing zero coefficients, drops
empty terms).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BinomialOverflow,
    ImpulseAtPoint,
    NotConjugateClosed,
    UnsupportedImpulseDerivative,
    ZeroRootAtom,
)

#: Relative tolerance under which two roots denote the same term.
ROOT_TOL = 1e-8
#: Relative tolerance for conjugate pairing of polynomial coefficients.
CONJ_TOL = 1e-9

_INT64_MAX = 2**63 - 1


def same_root(a: complex, b: complex, tol: float = ROOT_TOL) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a))


def _finite(z: complex, what: str) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite {what}: {z!r}")
    return z


def binom(n: int, k: int) -> int:
    """Binomial coefficient as an exact int, 0 outside ``0 <= k <= n``.

    Raises BinomialOverflow when the value does not fit a signed 64-bit int.
    """
    if k < 0 or n < 0 or k > n:
        return 0
    k = min(k, n - k)
    out = 1
    for i in range(1, k + 1):
        out = out * (n - k + i) // i
        if out > _INT64_MAX:
            raise BinomialOverflow(f"C({n}, {k}) exceeds the 64-bit range")
    return out


# --------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class Poly:
    """Complex polynomial, ``coeffs[j]`` multiplies ``x**j``.

    Trailing exact zeros are stripped, so the zero polynomial has no coeffs.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        c = [_finite(v, "coefficient") for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, degree: int, coeff: complex = 1.0) -> "Poly":
        return cls((0.0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, x):
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            if not self.coeffs or not other.coeffs:
                return Poly()
            out = [0j] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Poly(tuple(out))
        s = complex(other)
        return Poly(tuple(c * s for c in self.coeffs))

    __rmul__ = __mul__

    def deriv(self) -> "Poly":
        return Poly(tuple(j * c for j, c in enumerate(self.coeffs) if j > 0))

    def shift_arg(self, d: complex) -> "Poly":
        """Return ``q(x) = p(x - d)``."""
        out = Poly()
        base = Poly((-d, 1.0))
        power = Poly((1.0,))
        for c in self.coeffs:
            out = out + power * c
            power = power * base
        return out

    def conj(self) -> "Poly":
        return Poly(tuple(c.conjugate() for c in self.coeffs))

    def max_abs(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)


def _binom_poly(j: int) -> Poly:
    """``C(x - 1, j - 1)`` as a polynomial in ``x`` (monomial basis)."""
    p = Poly((1.0,))
    for i in range(1, j):
        p = p * Poly((-float(i), 1.0))
    return p * (1.0 / math.factorial(j - 1))


# --------------------------------------------------------------------------
# analog


@dataclass(frozen=True)
class AnalogTerm:
    """``poly(t) * exp(root * t) * sigma(t)``."""

    root: complex
    poly: Poly

    def __post_init__(self):
        object.__setattr__(self, "root", _finite(self.root, "root"))
        if not isinstance(self.poly, Poly):
            object.__setattr__(self, "poly", Poly(tuple(self.poly)))
        if not self.poly:
            raise ValueError("AnalogTerm needs a nonzero polynomial")


def _merge_analog(terms: Iterable) -> tuple:
    merged: list = []
    for t in terms:
        if isinstance(t, AnalogTerm):
            root, poly = t.root, t.poly
        else:
            root, poly = t
            root = _finite(root, "root")
            poly = poly if isinstance(poly, Poly) else Poly(tuple(poly))
        for i, (r, p) in enumerate(merged):
            if same_root(r, root):
                merged[i] = (r, p + poly)
                break
        else:
            merged.append((root, poly))
    return tuple(AnalogTerm(r, p) for r, p in merged if p)


@dataclass(frozen=True)
class AnalogSignal:
    """``sum_s p_s(t) exp(r_s t) sigma(t) + impulse_weight * delta(t)``."""

    terms: tuple = ()
    impulse_weight: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "terms", _merge_analog(self.terms))
        object.__setattr__(self, "impulse_weight", _finite(self.impulse_weight, "impulse weight"))

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls) -> "AnalogSignal":
        return cls()

    @classmethod
    def exp(cls, root: complex, amp: complex = 1.0, degree: int = 0) -> "AnalogSignal":
        """``amp * t**degree * exp(root t) sigma(t)``."""
        return cls(((root, Poly.monomial(degree, amp)),))

    @classmethod
    def delta(cls, weight: complex = 1.0) -> "AnalogSignal":
        return cls((), weight)

    # algebra --------------------------------------------------------------
    def __add__(self, other: "AnalogSignal") -> "AnalogSignal":
        return add(self, other)

    def __neg__(self) -> "AnalogSignal":
        return scale(self, -1.0)

    def __sub__(self, other: "AnalogSignal") -> "AnalogSignal":
        return add(self, scale(other, -1.0))

    def __mul__(self, c) -> "AnalogSignal":
        return scale(self, c)

    __rmul__ = __mul__

    def __call__(self, t: float) -> complex:
        return evaluate(self, t)

    @property
    def roots(self) -> tuple:
        return tuple(term.root for term in self.terms)

    def is_zero(self) -> bool:
        return not self.terms and self.impulse_weight == 0

    def term(self, root: complex):
        """Polynomial attached to ``root`` (zero Poly if absent)."""
        for t in self.terms:
            if same_root(t.root, root):
                return t.poly
        return Poly()


# --------------------------------------------------------------------------
# discrete


@dataclass(frozen=True)
class DiscreteTerm:
    """``sum_j coeffs[j-1] * H_j(k - shift)`` with ``H_j`` the j-fold power of
    ``root**(k-1) sigma(k-1)``."""

    root: complex
    coeffs: tuple
    shift: int = 0

    def __post_init__(self):
        root = _finite(self.root, "root")
        if root == 0:
            raise ZeroRootAtom("discrete atoms need a nonzero root")
        if self.shift < 0 or int(self.shift) != self.shift:
            raise ValueError(f"shift must be a nonnegative integer, got {self.shift!r}")
        c = [_finite(v, "coefficient") for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        if not c:
            raise ValueError("DiscreteTerm needs a nonzero coefficient")
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "shift", int(self.shift))

    def value(self, k: int) -> complex:
        m = k - self.shift
        if m < 1:
            return 0j
        r = self.root
        acc = 0j
        for j, c in enumerate(self.coeffs, start=1):
            b = binom(m - 1, j - 1)
            if b:
                acc += c * b * r ** (m - j)
        return acc


def _add_coeffs(a: Sequence, b: Sequence) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))


def _strip(c: Sequence) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _merge_discrete(terms: Iterable, impulses: Iterable):
    merged: list = []
    for t in terms:
        if isinstance(t, DiscreteTerm):
            root, coeffs, shift = t.root, t.coeffs, t.shift
        else:
            root, coeffs, shift = t
        for i, (r, c, d) in enumerate(merged):
            if d == shift and same_root(r, root):
                merged[i] = (r, _add_coeffs(c, coeffs), d)
                break
        else:
            merged.append((root, tuple(coeffs), int(shift)))
    out_terms = tuple(DiscreteTerm(r, c, d) for r, c, d in merged if _strip(c))
    imp: dict = {}
    for d, w in impulses:
        d = int(d)
        if d < 0:
            raise ValueError("impulse shifts must be nonnegative")
        imp[d] = imp.get(d, 0j) + _finite(w, "impulse weight")
    out_imp = tuple((d, imp[d]) for d in sorted(imp) if imp[d] != 0)
    return out_terms, out_imp


@dataclass(frozen=True)
class DiscreteSignal:
    """Shifted binomial-basis exponential terms plus ``sum_i w_i delta(k - d_i)``."""

    terms: tuple = ()
    impulses: tuple = ()

    def __post_init__(self):
        t, i = _merge_discrete(self.terms, self.impulses)
        object.__setattr__(self, "terms", t)
        object.__setattr__(self, "impulses", i)

    @classmethod
    def zero(cls) -> "DiscreteSignal":
        return cls()

    @classmethod
    def delta(cls, shift: int = 0, weight: complex = 1.0) -> "DiscreteSignal":
        return cls((), ((shift, weight),))

    @classmethod
    def h_power(cls, root: complex, n: int = 1, amp: complex = 1.0) -> "DiscreteSignal":
        """``amp * h^{*n}`` for ``h(k) = root**(k-1) sigma(k-1)``."""
        return cls(((root, (0.0,) * (n - 1) + (amp,), 0),))

    @classmethod
    def e_atom(cls, root: complex, amp: complex = 1.0) -> "DiscreteSignal":
        """``amp * root**k sigma(k)`` (= ``root*h + delta``)."""
        return cls(((root, (amp * root,), 0),), ((0, amp),))

    def __add__(self, other):
        return add(self, other)

    def __neg__(self):
        return scale(self, -1.0)

    def __sub__(self, other):
        return add(self, scale(other, -1.0))

    def __mul__(self, c):
        return scale(self, c)

    __rmul__ = __mul__

    def __call__(self, k: int) -> complex:
        return evaluate_discrete(self, k)

    def is_zero(self) -> bool:
        return not self.terms and not self.impulses

    def impulse_at(self, k: int) -> complex:
        for d, w in self.impulses:
            if d == k:
                return w
        return 0j


# --------------------------------------------------------------------------
# operations


def add(a, b):
    """Sum of two signals of the same kind (termwise merge, canonical form)."""
    if isinstance(a, AnalogSignal) and isinstance(b, AnalogSignal):
        return AnalogSignal(a.terms + b.terms, a.impulse_weight + b.impulse_weight)
    if isinstance(a, DiscreteSignal) and isinstance(b, DiscreteSignal):
        return DiscreteSignal(a.terms + b.terms, a.impulses + b.impulses)
    raise TypeError(f"cannot add {type(a).__name__} and {type(b).__name__}")


def scale(s, c):
    c = _finite(c, "scale factor")
    if isinstance(s, AnalogSignal):
        return AnalogSignal(
            tuple((t.root, t.poly * c) for t in s.terms), s.impulse_weight * c
        )
    return DiscreteSignal(
        tuple((t.root, tuple(x * c for x in t.coeffs), t.shift) for t in s.terms),
        tuple((d, w * c) for d, w in s.impulses),
    )


def evaluate(s: AnalogSignal, t: float) -> complex:
    """Value at ``t``; ``t = 0`` gives the right limit, ``t < 0`` gives 0."""
    if t < 0:
        return 0j
    if t == 0 and s.impulse_weight != 0:
        raise ImpulseAtPoint("delta atom has no pointwise value at t = 0")
    return sum((term.poly(t) * cmath.exp(term.root * t) for term in s.terms), 0j)


def sample(s: AnalogSignal, ts) -> np.ndarray:
    """Vectorized :func:`evaluate` over an array of times (delta ignored)."""
    ts = np.asarray(ts, dtype=np.float64)
    out = np.zeros(ts.shape, dtype=np.complex128)
    pos = ts >= 0
    tp = ts[pos]
    acc = np.zeros(tp.shape, dtype=np.complex128)
    for term in s.terms:
        pv = np.zeros(tp.shape, dtype=np.complex128)
        for c in reversed(term.poly.coeffs):
            pv = pv * tp + c
        acc += pv * np.exp(term.root * tp)
    out[pos] = acc
    return out


def evaluate_discrete(s: DiscreteSignal, k: int) -> complex:
    k = int(k)
    return sum((t.value(k) for t in s.terms), 0j) + s.impulse_at(k)


def differentiate_right(s: AnalogSignal) -> AnalogSignal:
    """Derivative in the generalized sense.

    For t > 0 each term ``p e^{rt}`` becomes ``(p' + r p) e^{rt}``; the jump at
    the origin becomes the impulse weight ``sum_s p_s(0)``.
    """
    if s.impulse_weight != 0:
        raise UnsupportedImpulseDerivative("derivative of delta is not representable")
    jump = sum((t.poly(0.0) for t in s.terms), 0j)
    return AnalogSignal(
        tuple((t.root, t.poly.deriv() + t.poly * t.root) for t in s.terms), jump
    )


def regular_part(s: AnalogSignal) -> AnalogSignal:
    return AnalogSignal(s.terms)


def right_derivatives_at_zero(s: AnalogSignal, order: int) -> list:
    """``[s^{(i)}(0+) for i in 0..order]`` by repeated right differentiation."""
    out = []
    cur = regular_part(s)
    for _ in range(order + 1):
        out.append(evaluate(cur, 0.0))
        cur = regular_part(differentiate_right(cur))
    return out


def shift_discrete(s: DiscreteSignal, d: int) -> DiscreteSignal:
    """``[s]_d(k) = s(k - d)``."""
    if d < 0:
        raise ValueError("shift must be nonnegative; use advance_discrete")
    return DiscreteSignal(
        tuple((t.root, t.coeffs, t.shift + d) for t in s.terms),
        tuple((sd + d, w) for sd, w in s.impulses),
    )


def advance_discrete(s: DiscreteSignal, d: int = 1) -> DiscreteSignal:
    """``y(k) = s(k + d) sigma(k)``: advance by ``d`` and drop negative times.

    At shift 0 the identity ``H_j(k+1) = r H_j(k) + H_{j-1}(k)`` (with
    ``H_0 = delta``) keeps the binomial basis closed under advancing.
    """
    if d < 0:
        raise ValueError("advance must be nonnegative")
    for _ in range(d):
        terms = []
        imps = []
        for t in s.terms:
            if t.shift > 0:
                terms.append((t.root, t.coeffs, t.shift - 1))
                continue
            c = t.coeffs
            r = t.root
            new = tuple(r * c[j] + (c[j + 1] if j + 1 < len(c) else 0) for j in range(len(c)))
            terms.append((r, new, 0))
            imps.append((0, c[0]))
        imps.extend((sd - 1, w) for sd, w in s.impulses if sd > 0)
        s = DiscreteSignal(tuple(terms), tuple(imps))
    return s


def from_e_basis(root: complex, coeffs, shift: int = 0) -> DiscreteSignal:
    """``sum_j coeffs[j] * E_j(k - shift)`` with ``E_j(k) = C(k, j) r^(k-j) sigma(k)``.

    Uses ``E_j = r H_{j+1} + H_j`` (``H_0 = delta``), so the result lives in
    the shift-0 binomial basis plus one impulse at the shift.
    """
    root = _finite(root, "root")
    if root == 0:
        raise ZeroRootAtom("discrete atoms need a nonzero root")
    m = len(coeffs)
    h = [0j] * (m + 1)
    imp = 0j
    for j, b in enumerate(coeffs):
        h[j] += root * b  # H_{j+1} sits at index j
        if j == 0:
            imp += b
        else:
            h[j - 1] += b
    return DiscreteSignal(((root, tuple(h), shift),), ((shift, imp),))


def to_e_basis(term: DiscreteTerm) -> tuple:
    """Inverse of :func:`from_e_basis` for a shift-0 term: ``(coeffs, delta_weight)``.

    Returns e-basis coefficients ``b`` and the impulse weight ``w`` such that
    ``term = sum_j b_j E_j + w delta``.
    """
    c = list(term.coeffs)
    r = term.root
    m = len(c)
    # solve r*b_{j-1} + b_j = c_j (j = 1..m, index shift) from the top down
    b = [0j] * m
    for j in range(m - 1, -1, -1):
        nxt = b[j + 1] if j + 1 < m else 0j
        b[j] = (c[j] - nxt) / r
    return tuple(b), -b[0]


# --------------------------------------------------------------------------
# display-time power form and real forms


@dataclass(frozen=True)
class DiscretePowerForm:
    """``sum_r Q_r(k) r^k`` for ``k >= start`` plus impulse corrections.

    ``modes`` maps roots to polynomials in powers of ``k``; ``impulses`` hold
    whatever the formula misses at the first few samples.
    """

    start: int
    modes: tuple
    impulses: tuple

    def formula(self, k: int) -> complex:
        return sum((q(k) * r**k for r, q in self.modes), 0j)

    def __call__(self, k: int) -> complex:
        if k < self.start:
            return 0j
        extra = sum((w for d, w in self.impulses if d == k), 0j)
        return self.formula(k) + extra


def power_form(s: DiscreteSignal, impulse_tol: float = 1e-10) -> DiscretePowerForm:
    """Rewrite a discrete signal in powers of ``k`` valid from its first support.

    Impulse corrections below ``impulse_tol * max(1, |value|)`` are dropped.
    """
    modes: list = []
    for t in s.terms:
        r = t.root
        p = Poly()
        for j, c in enumerate(t.coeffs, start=1):
            p = p + _binom_poly(j) * (c * r ** (-j))
        q = p.shift_arg(t.shift) * r ** (-t.shift)
        for i, (rr, qq) in enumerate(modes):
            if same_root(rr, r):
                modes[i] = (rr, qq + q)
                break
        else:
            modes.append((r, q))
    modes = [(r, q) for r, q in modes if q]
    starts = [t.shift + 1 for t in s.terms] + [d for d, _ in s.impulses]
    if not starts:
        return DiscretePowerForm(0, (), ())
    start = min(starts)
    end = max([t.shift + 1 for t in s.terms] + [d + 1 for d, _ in s.impulses])
    form = DiscretePowerForm(start, tuple(modes), ())
    imps = []
    for k in range(start, end):
        true = evaluate_discrete(s, k)
        f = form.formula(k)
        w = true - f
        if abs(w) > impulse_tol * max(1.0, abs(true), abs(f)):
            imps.append((k, w))
    return DiscretePowerForm(start, tuple(modes), tuple(imps))


@dataclass(frozen=True)
class RealEntry:
    """``exp(decay t) (cos_poly(t) cos(freq t) + sin_poly(t) sin(freq t))``.

    For discrete signals ``decay`` is read as the modulus ``R`` and ``freq``
    as the phase ``phi``: ``R^k (cos_poly(k) cos(k phi) + sin_poly(k) sin(k phi))``.
    """

    decay: float
    freq: float
    cos_poly: tuple
    sin_poly: tuple = ()


def _real_poly(coeffs) -> tuple:
    c = [float(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _horner_real(c, x):
    acc = 0.0
    for v in reversed(c):
        acc = acc * x + v
    return acc


@dataclass(frozen=True)
class RealForm:
    """Real cos/sin form of a conjugate-closed signal.

    ``kind`` is ``"analog"`` or ``"discrete"``. Analog forms carry one
    ``impulse_weight``; discrete forms carry ``start`` and impulse corrections
    like :class:`DiscretePowerForm`.
    """

    kind: str
    entries: tuple
    impulse_weight: float = 0.0
    start: int = 0
    impulses: tuple = ()

    def __call__(self, x):
        if self.kind == "analog":
            if x < 0:
                return 0.0
            return sum(
                math.exp(e.decay * x)
                * (_horner_real(e.cos_poly, x) * math.cos(e.freq * x)
                   + _horner_real(e.sin_poly, x) * math.sin(e.freq * x))
                for e in self.entries
            )
        k = int(x)
        if k < self.start:
            return 0.0
        val = sum(
            e.decay**k
            * (_horner_real(e.cos_poly, k) * math.cos(e.freq * k)
               + _horner_real(e.sin_poly, k) * math.sin(e.freq * k))
            for e in self.entries
        )
        return val + sum((w for d, w in self.impulses if d == k), 0.0)


def _check_real(z: complex, scale_: float, what: str) -> float:
    if abs(z.imag) > CONJ_TOL * max(scale_, abs(z), 1e-300):
        raise NotConjugateClosed(f"{what} has imaginary part {z.imag!r}")
    return z.real


def _pair_modes(modes, tol):
    """Split ``[(root, Poly)]`` into real modes and (upper, lower) conjugate pairs."""
    used = [False] * len(modes)
    reals, pairs = [], []
    for i, (r, p) in enumerate(modes):
        if used[i]:
            continue
        used[i] = True
        if abs(r.imag) <= ROOT_TOL * max(1.0, abs(r)):
            sc = p.max_abs()
            for c in p.coeffs:
                _check_real(c, sc, f"coefficient of real root {r}")
            reals.append((complex(r.real, 0.0), p))
            continue
        for j in range(i + 1, len(modes)):
            if not used[j] and same_root(modes[j][0], r.conjugate()):
                used[j] = True
                q = modes[j][1]
                break
        else:
            raise NotConjugateClosed(f"root {r} has no conjugate partner")
        sc = max(p.max_abs(), q.max_abs())
        diff = (p - q.conj()).max_abs()
        if diff > tol * sc:
            raise NotConjugateClosed(
                f"terms at {r} and its conjugate are not conjugate (mismatch {diff:.3g})"
            )
        up, lo = (r, p), (modes[j][0], q)
        if r.imag < 0:
            up, lo = lo, up
        pairs.append((up, lo))
    return reals, pairs


def realify(s, tol: float = CONJ_TOL) -> RealForm:
    """Rewrite conjugate pairs as damped cos/sin terms with real polynomials."""
    if isinstance(s, AnalogSignal):
        modes = [(t.root, t.poly) for t in s.terms]
    else:
        pf = power_form(s)
        modes = list(pf.modes)
    reals, pairs = _pair_modes(modes, tol)
    entries = []
    for r, p in reals:
        if isinstance(s, AnalogSignal):
            entries.append(RealEntry(r.real, 0.0, _real_poly(c.real for c in p.coeffs)))
        else:
            phase = math.pi if r.real < 0 else 0.0
            entries.append(RealEntry(abs(r.real), phase, _real_poly(c.real for c in p.coeffs)))
    for (ru, pu), (_, pl) in pairs:
        avg = (pu + pl.conj()) * 0.5
        cos_p = _real_poly(2.0 * c.real for c in avg.coeffs)
        sin_p = _real_poly(-2.0 * c.imag for c in avg.coeffs)
        if isinstance(s, AnalogSignal):
            entries.append(RealEntry(ru.real, ru.imag, cos_p, sin_p))
        else:
            entries.append(RealEntry(abs(ru), cmath.phase(ru), cos_p, sin_p))
    entries.sort(key=lambda e: (e.decay, e.freq))
    if isinstance(s, AnalogSignal):
        w = _check_real(s.impulse_weight, abs(s.impulse_weight), "impulse weight")
        return RealForm("analog", tuple(entries), impulse_weight=w)
    imps = tuple((d, _check_real(w, abs(w), "impulse weight")) for d, w in pf.impulses)
    return RealForm("discrete", tuple(entries), start=pf.start, impulses=imps)


def sorted_terms(terms):
    """Terms ordered by (re, im) of their root, for deterministic display."""
    return sorted(terms, key=lambda t: (t[0].real, t[0].imag) if isinstance(t, tuple)
                  else (t.root.real, t.root.imag))
