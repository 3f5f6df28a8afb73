"""Brute-force reference computations.

Nothing here touches the closed-form machinery: convolutions are integrated or
summed numerically, ODEs are stepped with RK4 and recurrences are iterated.
The test suite and :func:`expoconv.lti.verify` use these to falsify the fast
path.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


# ---------------------------------------------------------------- analog


def _cumulative_quad(y: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order running integral ``F[i] = int_0^{x_i} y`` on a uniform grid.

    Even nodes use composite Simpson; node 1 a four-point start formula; odd
    nodes >= 3 add a 3/8 panel to the even prefix.
    """
    n = len(y) - 1
    F = np.zeros_like(y)
    if n == 0:
        return F
    if n < 3:
        # too few nodes for the 4th-order starters; trapezoid is all we need
        F[1:] = np.cumsum(0.5 * h * (y[1:] + y[:-1]))
        return F
    panels = h / 3.0 * (y[0:-2:2] + 4.0 * y[1:-1:2] + y[2::2])
    F[2::2] = np.cumsum(panels)
    F[1] = h / 24.0 * (9 * y[0] + 19 * y[1] - 5 * y[2] + y[3])
    idx = np.arange(3, n + 1, 2)
    if len(idx):
        F[idx] = F[idx - 3] + 3.0 * h / 8.0 * (y[idx - 3] + 3 * y[idx - 2] + 3 * y[idx - 1] + y[idx])
    return F


def _nested(roots, t: float, steps: int, dtype=np.complex128) -> complex:
    x = np.linspace(0.0, t, steps + 1)
    h = t / steps
    f = np.exp(np.asarray(roots[0], dtype=dtype) * x)
    for r in roots[1:]:
        # (f * h_r)(x) = e^{r x} int_0^x f(s) e^{-r s} ds
        f = np.exp(r * x) * _cumulative_quad(f * np.exp(-r * x), h)
    return f[-1]


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    points: int
    change: float       # |last - previous| estimate
    envelope: float     # same integral with every root replaced by Re(r)
    converged: bool


def numeric_conv_analog_detailed(roots, t: float, steps: int = 64, rtol: float = 1e-9,
                                 max_points: int = 2**18) -> QuadratureResult:
    """Repeated-convolution integral of ``exp(r_i t) sigma(t)`` atoms at ``t``.

    The step is halved until two successive estimates differ by less than
    ``rtol`` times the magnitude envelope (the same integral with each root
    replaced by its real part, which bounds ``|value|``), or until the grid
    reaches ``max_points`` nodes.
    """
    roots = [complex(r) for r in roots]
    if len(roots) == 0:
        raise ValueError("need at least one atom")
    if t < 0:
        return QuadratureResult(0j, 0, 0.0, 0.0, True)
    if len(roots) == 1:
        v = complex(np.exp(roots[0] * t))
        return QuadratureResult(v, 1, 0.0, abs(v), True)
    if t == 0:
        return QuadratureResult(0j, 1, 0.0, 0.0, True)
    steps = max(64, steps + (steps % 2))
    env_roots = [r.real for r in roots]
    prev = _nested(roots, t, steps)
    while True:
        steps *= 2
        cur = _nested(roots, t, steps)
        env = float(_nested(env_roots, t, steps, np.float64))
        change = abs(cur - prev)
        if change < rtol * env:
            return QuadratureResult(complex(cur), steps + 1, change, env, True)
        if steps + 1 >= max_points:
            return QuadratureResult(complex(cur), steps + 1, change, env, False)
        prev = cur


def numeric_conv_analog(roots, t: float, steps: int = 64) -> complex:
    """Value of ``h_{r_1} * ... * h_{r_n}`` at ``t`` by nested Simpson quadrature."""
    return numeric_conv_analog_detailed(roots, t, steps).value


# ---------------------------------------------------------------- discrete


def numeric_conv_discrete(atoms, k_max: int, kind: str = "h") -> np.ndarray:
    """Direct nested summation of discrete atoms for ``k = 0..k_max``.

    ``kind`` selects h-type atoms ``r^(k-1) sigma(k-1)`` or e-type
    ``r^k sigma(k)``. ``atoms`` is a sequence of roots.
    """
    ks = np.arange(k_max + 1)
    out = None
    for r in atoms:
        r = complex(r)
        if kind == "h":
            a = np.where(ks >= 1, r ** (ks - 1.0), 0.0).astype(np.complex128)
        elif kind == "e":
            a = (r ** ks.astype(float)).astype(np.complex128)
        else:
            raise ValueError(f"unknown atom kind {kind!r}")
        out = a if out is None else np.convolve(out, a)[: k_max + 1]
    if out is None:
        raise ValueError("need at least one atom")
    return out


# ---------------------------------------------------------------- inputs


def input_value(atoms, x) -> complex:
    """``sum amp * k^m * root^k`` for raw discrete input atoms.

    ``atoms`` yields objects with ``amp``, ``root`` and ``degree``. A zero
    root of degree 0 is a unit impulse at ``k = 0``.
    """
    k = int(x)
    acc = 0j
    for a in atoms:
        if a.root == 0:
            acc += a.amp if (k == 0 and a.degree == 0) else 0.0
        else:
            acc += a.amp * float(k) ** a.degree * complex(a.root) ** k
    return acc


def analog_input(atoms, t: float) -> complex:
    """``sum amp * t^m * exp(root t)`` for raw input atoms."""
    return sum((a.amp * t ** a.degree * np.exp(a.root * t) for a in atoms), 0j)


def _input_fn(p, analog: bool):
    inp = p.input
    if isinstance(inp, tuple) and all(hasattr(a, "degree") for a in inp):
        return (lambda t: analog_input(inp, t)) if analog else (lambda k: input_value(inp, k))
    # a closed-form signal; only its pointwise values are used
    if analog:
        if getattr(inp, "impulse_weight", 0) != 0:
            raise ValueError("RK4 oracle cannot integrate a delta input")
        from .signals import evaluate
        return lambda t: evaluate(inp, t)
    from .signals import evaluate_discrete
    return lambda k: evaluate_discrete(inp, k)


# ---------------------------------------------------------------- IVPs


def rk4_ivp(p, t_end: float | None = None, step: float = 1e-3, t_eval=None):
    """Classical RK4 on the companion system of an analog IVP.

    Returns ``(t, y)``; ``t`` is ``t_eval`` when given, otherwise the fixed
    step grid on ``[0, t_end]``. Between consecutive output times the
    interval is split into equal substeps no longer than ``step``.
    """
    if p.kind != "analog":
        raise ValueError("rk4_ivp needs an analog problem")
    a = np.asarray(p.coeffs, dtype=np.complex128)
    u = _input_fn(p, analog=True)
    if t_eval is None:
        if t_end is None:
            raise ValueError("give t_end or t_eval")
        m = max(1, int(math.ceil(t_end / step - 1e-9)))
        t_eval = np.linspace(0.0, t_end, m + 1)
    ts = np.asarray(t_eval, dtype=float)
    if np.any(np.diff(ts) < 0) or (len(ts) and ts[0] < 0):
        raise ValueError("t_eval must be nondecreasing and start at t >= 0")

    def f(t, x):
        dx = np.empty_like(x)
        dx[:-1] = x[1:]
        dx[-1] = u(t) - np.dot(a, x)
        return dx

    x = np.asarray(p.initial, dtype=np.complex128).copy()
    t = 0.0
    out = np.empty(len(ts), dtype=np.complex128)
    for i, target in enumerate(ts):
        span = target - t
        if span > 0:
            m = max(1, int(math.ceil(span / step - 1e-9)))
            h = span / m
            for _ in range(m):
                k1 = f(t, x)
                k2 = f(t + h / 2, x + h / 2 * k1)
                k3 = f(t + h / 2, x + h / 2 * k2)
                k4 = f(t + h, x + h * k3)
                x = x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
                t += h
            t = target
        out[i] = x[0]
    return ts, out


def iterate_recurrence(p, k_max: int) -> np.ndarray:
    """``y(0..k_max)`` by forward iteration of ``y(k+n) = u(k) - sum a_i y(k+i)``."""
    if p.kind != "discrete":
        raise ValueError("iterate_recurrence needs a discrete problem")
    a = [complex(c) for c in p.coeffs]
    n = len(a)
    u = _input_fn(p, analog=False)
    y = [complex(v) for v in p.initial]
    k = 0
    while len(y) < k_max + 1:
        y.append(u(k) - sum(a[i] * y[k + i] for i in range(n)))
        k += 1
    return np.array(y[: k_max + 1], dtype=np.complex128)
