"""Constant-coefficient initial value problems, analog and discrete.

Analog: ``y^(n) + a_{n-1} y^(n-1) + ... + a_0 y = u(t)``, initial values
``y(0), y'(0), ..., y^(n-1)(0)``.

Discrete: ``y(k+n) + a_{n-1} y(k+n-1) + ... + a_0 y(k) = u(k)``, initial values
``y(0), ..., y(n-1)``.

The solution is ``y = y_h + y_p``: ``y_h`` solves the confluent system with
the initial values as right-hand side, ``y_p = (u sigma) * h`` is one
augmented confluent system per input mode.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import oracle
from .conv_analog import MAX_DEGREE, conv_atoms, conv_signals
from .conv_discrete import dconv_atoms, dconv_signals
from .errors import (
    DegreeTooHigh,
    InputNotExponential,
    InsufficientInitialValues,
)
from .roots import CLUSTER_TOL, characteristic_multiset
from .signals import (
    AnalogSignal,
    DiscreteSignal,
    Poly,
    advance_discrete,
    differentiate_right,
    evaluate,
    evaluate_discrete,
    from_e_basis,
    regular_part,
    shift_discrete,
)
from .vandermonde import RootMultiset, build_confluent, residual_log, solve_system

ZERO_ROOT_TOL = 1e-14


@dataclass(frozen=True)
class InputAtom:
    """One input mode: ``amp * t^degree * exp(root t)`` or ``amp * k^degree * root^k``."""

    amp: complex
    root: complex = 0j
    degree: int = 0

    def __post_init__(self):
        object.__setattr__(self, "amp", complex(self.amp))
        object.__setattr__(self, "root", complex(self.root))
        if int(self.degree) != self.degree or self.degree < 0:
            raise InputNotExponential(f"polynomial degree must be a nonnegative integer, got {self.degree!r}")
        object.__setattr__(self, "degree", int(self.degree))
        for v in (self.amp, self.root):
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise InputNotExponential(f"non-finite input atom field {v!r}")


@dataclass(frozen=True)
class IvpProblem:
    """An n-th order IVP.

    ``input`` is a tuple of :class:`InputAtom` or a closed-form signal of the
    problem's kind. ``roots`` optionally overrides root finding.
    """

    kind: str
    coeffs: tuple
    initial: tuple
    input: object = ()
    roots: Optional[RootMultiset] = None
    cluster_tol: float = CLUSTER_TOL

    def __post_init__(self):
        if self.kind not in ("analog", "discrete"):
            raise ValueError(f"kind must be 'analog' or 'discrete', got {self.kind!r}")
        coeffs = tuple(float(c) for c in self.coeffs)
        initial = tuple(float(c) for c in self.initial)
        if not all(math.isfinite(c) for c in coeffs + initial):
            raise ValueError("coefficients and initial values must be finite")
        if not coeffs:
            raise ValueError("need order n >= 1")
        if len(initial) != len(coeffs):
            raise InsufficientInitialValues(
                f"order {len(coeffs)} needs {len(coeffs)} initial values, got {len(initial)}"
            )
        inp = self.input
        if isinstance(inp, (list, tuple)):
            inp = tuple(inp)
            for a in inp:
                if not isinstance(a, InputAtom):
                    raise InputNotExponential(f"input term {a!r} is not an exponential atom")
        elif self.kind == "analog" and not isinstance(inp, AnalogSignal):
            raise InputNotExponential("analog input must be atoms or an AnalogSignal")
        elif self.kind == "discrete" and not isinstance(inp, DiscreteSignal):
            raise InputNotExponential("discrete input must be atoms or a DiscreteSignal")
        if self.roots is not None and self.roots.order != len(coeffs):
            raise ValueError(
                f"roots override has total multiplicity {self.roots.order}, order is {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "input", inp)

    @property
    def order(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class SolveRecord:
    """Residual of one linear solve, tagged with the stage that ran it."""

    stage: str
    order: int
    residual: float
    rhs_norm: float

    @property
    def ok(self) -> bool:
        return self.residual <= 1e-8 * (1.0 + self.rhs_norm)


@dataclass(frozen=True)
class IvpSolution:
    problem: IvpProblem
    multiset: Optional[RootMultiset]
    impulse_response: object
    homogeneous: object
    particular: object
    total: object
    zero_roots: int = 0
    diagnostics: tuple = field(default=())

    @property
    def max_residual(self) -> float:
        return max((d.residual for d in self.diagnostics), default=0.0)


def _records(stage, log):
    return [
        SolveRecord(stage, s.n, s.residual, float(np.max(np.abs(s.rhs), initial=0.0)))
        for s in log
    ]


# ------------------------------------------------------------------ analog


def _analog_multiset(p: IvpProblem) -> RootMultiset:
    if p.roots is not None:
        return p.roots
    return characteristic_multiset(p.coeffs, p.cluster_tol)


def _analog_homogeneous(rm: RootMultiset, initial) -> AnalogSignal:
    if not any(initial):
        return AnalogSignal()
    a = solve_system(build_confluent(rm), np.asarray(initial, dtype=np.complex128)).solution
    terms = []
    for (r, m), off in zip(rm.clusters, rm.offsets()):
        terms.append((r, Poly(tuple(a[off + j] / math.factorial(j) for j in range(m)))))
    return AnalogSignal(tuple(terms))


def _analog_particular(rm: RootMultiset, h: AnalogSignal, inp) -> AnalogSignal:
    if isinstance(inp, AnalogSignal):
        return conv_signals(h, inp)
    out = AnalogSignal()
    for atom in inp:
        if atom.amp == 0:
            continue
        if atom.degree > MAX_DEGREE:
            raise DegreeTooHigh(f"input degree {atom.degree} exceeds {MAX_DEGREE}")
        # amp t^m e^{ut} = amp m! h_u^{*(m+1)}
        s = conv_atoms(rm.with_root(atom.root, atom.degree + 1))
        out = out + s * (atom.amp * math.factorial(atom.degree))
    return out


# ------------------------------------------------------------------ discrete


def stirling2(m: int, j: int) -> int:
    """Stirling number of the second kind ``S(m, j)``."""
    row = [1] + [0] * j
    for i in range(1, m + 1):
        new = [0] * (j + 1)
        for q in range(1, min(i, j) + 1):
            new[q] = q * row[q] + row[q - 1]
        row = new
    return row[j]


def _e_basis_input(atom: InputAtom) -> list:
    """``amp k^m rho^k = sum_j beta_j C(k, j) rho^(k-j)`` with
    ``beta_j = amp S(m, j) j! rho^j``."""
    rho = atom.root
    return [
        atom.amp * stirling2(atom.degree, j) * math.factorial(j) * rho**j
        for j in range(atom.degree + 1)
    ]


def reduce_zero_roots(p: IvpProblem):
    """Split off zero characteristic roots.

    Returns ``(m, rm_reduced, reduced_problem)``. ``m`` zero roots mean
    ``a_0 = ... = a_{m-1} = 0``; ``w(k) = y(k+m)`` then solves the order-(n-m)
    problem with coefficients ``a_m..a_{n-1}`` and initial values
    ``y(m)..y(n-1)``. ``rm_reduced`` is ``None`` when every root is zero.
    """
    if p.roots is not None:
        zero = [(r, k) for r, k in p.roots.clusters if abs(r) <= ZERO_ROOT_TOL]
        m = sum(k for _, k in zero)
        rest = tuple((r, k) for r, k in p.roots.clusters if abs(r) > ZERO_ROOT_TOL)
    else:
        m = 0
        while m < p.order and p.coeffs[m] == 0:
            m += 1
        rest = None
    if m == 0:
        return 0, (p.roots if p.roots is not None else None), p
    if m == p.order:
        return m, None, None
    reduced = IvpProblem(
        p.kind, p.coeffs[m:], p.initial[m:], p.input,
        RootMultiset(rest) if rest else None, p.cluster_tol,
    )
    return m, reduced.roots, reduced


def _discrete_homogeneous(rm: RootMultiset, initial) -> DiscreteSignal:
    if not any(initial):
        return DiscreteSignal()
    a = solve_system(build_confluent(rm), np.asarray(initial, dtype=np.complex128)).solution
    out = DiscreteSignal()
    for (r, m), off in zip(rm.clusters, rm.offsets()):
        out = out + from_e_basis(r, tuple(a[off:off + m]))
    return out


def _discrete_particular(rm: Optional[RootMultiset], h: DiscreteSignal, inp) -> DiscreteSignal:
    if isinstance(inp, DiscreteSignal):
        return dconv_signals(h, inp)
    out = DiscreteSignal()
    for atom in inp:
        if atom.amp == 0:
            continue
        if atom.root == 0:
            # 0^k k^m is delta(k) for m = 0 and vanishes otherwise
            if atom.degree == 0:
                out = out + h * atom.amp
            continue
        if atom.degree > MAX_DEGREE:
            raise DegreeTooHigh(f"input degree {atom.degree} exceeds {MAX_DEGREE}")
        # E_j = H_{j+1} advanced one step, and advancing commutes with h * (.)
        # because H_{j+1}(0) = 0; so one advance at the end covers all modes.
        acc = DiscreteSignal()
        for j, beta in enumerate(_e_basis_input(atom)):
            if beta == 0:
                continue
            if rm is None:
                piece = DiscreteSignal.h_power(atom.root, j + 1)
            else:
                piece = dconv_atoms(rm.with_root(atom.root, j + 1))
            acc = acc + piece * beta
        out = out + advance_discrete(acc, 1)
    return out


def _discrete_multiset(p: IvpProblem):
    m, rm, red = reduce_zero_roots(p)
    if red is not None and rm is None:
        rm = characteristic_multiset(red.coeffs, p.cluster_tol)
    return m, rm, red


# ------------------------------------------------------------------ public


def impulse_response(p: IvpProblem):
    """``h`` with ``charpoly(D) h = delta`` (analog) or ``charpoly(E) h = delta``.

    For discrete problems with ``m`` zero roots this is the full-order
    response, i.e. the reduced one shifted right by ``m``.
    """
    if p.kind == "analog":
        return conv_atoms(_analog_multiset(p))
    m, rm, _ = _discrete_multiset(p)
    h = DiscreteSignal.delta() if rm is None else dconv_atoms(rm)
    return shift_discrete(h, m)


def homogeneous_solution(p: IvpProblem):
    """Zero-input response matching the initial values."""
    if p.kind == "analog":
        return _analog_homogeneous(_analog_multiset(p), p.initial)
    return solve(p).homogeneous


def particular_solution(p: IvpProblem):
    """Zero-state response ``(u sigma) * h``."""
    if p.kind == "analog":
        rm = _analog_multiset(p)
        return _analog_particular(rm, conv_atoms(rm), p.input)
    return solve(p).particular


def solve(p: IvpProblem) -> IvpSolution:
    """Impulse response, homogeneous and particular parts, and their sum."""
    diags = []
    if p.kind == "analog":
        rm = _analog_multiset(p)
        with residual_log() as log:
            h = conv_atoms(rm)
        diags += _records("impulse_response", log)
        with residual_log() as log:
            yh = _analog_homogeneous(rm, p.initial)
        diags += _records("homogeneous", log)
        with residual_log() as log:
            yp = _analog_particular(rm, h, p.input)
        diags += _records("particular", log)
        return IvpSolution(p, rm, h, yh, yp, yh + yp, 0, tuple(diags))

    m, rm, red = _discrete_multiset(p)
    with residual_log() as log:
        h_red = DiscreteSignal.delta() if rm is None else dconv_atoms(rm)
    diags += _records("impulse_response", log)
    with residual_log() as log:
        w_h = DiscreteSignal() if rm is None else _discrete_homogeneous(rm, red.initial)
    diags += _records("homogeneous", log)
    with residual_log() as log:
        w_p = _discrete_particular(rm, h_red, p.input)
    diags += _records("particular", log)

    h = shift_discrete(h_red, m)
    yp = shift_discrete(w_p, m)
    yh = shift_discrete(w_h, m)
    if m:
        # the shifted reduced solution says nothing about k < m; pin those
        # samples to the stated initial values with impulse atoms
        fix = []
        for i in range(m):
            cur = evaluate_discrete(yh, i) + evaluate_discrete(yp, i)
            fix.append((i, p.initial[i] - cur))
        yh = yh + DiscreteSignal((), tuple(fix))
    full_rm = rm
    if m:
        full_rm = RootMultiset(((0j, m),)) if rm is None else rm.with_root(0j, m)
    return IvpSolution(p, full_rm, h, yh, yp, yh + yp, m, tuple(diags))


# ------------------------------------------------------------------ verify


@dataclass(frozen=True)
class VerifyReport:
    """Comparison of a closed-form solution with a brute-force oracle.

    ``max_deviation`` is ``max |closed - oracle| / max(1, |oracle|)`` over
    the grid, attained at ``location``. ``equation_residual`` is the largest
    defect found by substituting the closed form back into the equation.
    """

    kind: str
    oracle: str
    points: int
    max_deviation: float
    location: float
    equation_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol


def default_grid(kind: str):
    if kind == "analog":
        return np.linspace(0.0, 5.0, 501)
    return np.arange(0, 41)


def _derivatives(s: AnalogSignal, n: int) -> list:
    out = [regular_part(s)]
    for _ in range(n):
        out.append(regular_part(differentiate_right(out[-1])))
    return out


def verify(p: IvpProblem, sol: IvpSolution | None = None, grid=None,
           tol: float = 1e-6, step: float = 1e-3) -> VerifyReport:
    """Check a solution against RK4 (analog) or forward iteration (discrete)."""
    if sol is None:
        sol = solve(p)
    grid = default_grid(p.kind) if grid is None else np.asarray(grid)
    n = p.order
    a = p.coeffs
    if p.kind == "analog":
        ts = np.asarray(grid, dtype=float)
        _, ref = oracle.rk4_ivp(p, t_eval=ts, step=step)
        ders = _derivatives(sol.total, n)
        u = oracle._input_fn(p, analog=True)
        dev = np.empty(len(ts))
        eq = 0.0
        for i, t in enumerate(ts):
            y = evaluate(ders[0], t)
            dev[i] = abs(y - ref[i]) / max(1.0, abs(ref[i]))
            vals = [evaluate(d, t) for d in ders]
            lhs = vals[n] + sum(a[j] * vals[j] for j in range(n))
            scale = max([1.0] + [abs(v) for v in vals])
            eq = max(eq, abs(lhs - u(t)) / scale)
        i = int(np.argmax(dev)) if len(dev) else 0
        return VerifyReport("analog", "rk4", len(ts), float(dev.max(initial=0.0)),
                            float(ts[i]) if len(ts) else 0.0, eq, tol)
    ks = np.asarray(grid).astype(int)
    kmax = int(ks.max(initial=0)) + n
    ref = oracle.iterate_recurrence(p, kmax)
    vals = np.array([evaluate_discrete(sol.total, k) for k in range(kmax + 1)])
    u = oracle._input_fn(p, analog=False)
    dev = np.array([abs(vals[k] - ref[k]) / max(1.0, abs(ref[k])) for k in ks])
    eq = 0.0
    for k in ks:
        if k < 0:
            continue
        lhs = vals[k + n] + sum(a[j] * vals[k + j] for j in range(n))
        scale = max([1.0] + [abs(vals[k + j]) for j in range(n + 1)])
        eq = max(eq, abs(lhs - u(int(k))) / scale)
    i = int(np.argmax(dev)) if len(dev) else 0
    return VerifyReport("discrete", "recurrence", len(ks), float(dev.max(initial=0.0)),
                        float(ks[i]) if len(ks) else 0.0, eq, tol)
