import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expoconv.errors import DegreeTooHigh, InputNotExponential, InsufficientInitialValues
from expoconv.lti import (
    InputAtom,
    IvpProblem,
    homogeneous_solution,
    impulse_response,
    particular_solution,
    reduce_zero_roots,
    solve,
    stirling2,
    verify,
)
from expoconv.oracle import iterate_recurrence, rk4_ivp
from expoconv.signals import AnalogSignal, DiscreteSignal, evaluate, evaluate_discrete
from expoconv.vandermonde import RootMultiset

FIRST = IvpProblem("analog", (2, 3), (-1, 2), (InputAtom(1.0),))


def test_first_example_parts(backend):
    sol = solve(FIRST)
    assert sol.impulse_response.term(-1).coeffs == pytest.approx((1.0,))
    assert sol.impulse_response.term(-2).coeffs == pytest.approx((-1.0,))
    assert sol.homogeneous.term(-1).max_abs() < 1e-15
    assert sol.homogeneous.term(-2).coeffs == pytest.approx((-1.0,))
    assert sol.particular.term(0).coeffs == pytest.approx((0.5,))
    assert sol.total.term(-1).coeffs == pytest.approx((-1.0,))
    assert sol.total.term(-2).coeffs == pytest.approx((-0.5,))
    assert all(d.ok for d in sol.diagnostics)
    assert {d.stage for d in sol.diagnostics} >= {"homogeneous", "particular"}


def test_entry_points_agree_with_solve():
    sol = solve(FIRST)
    assert impulse_response(FIRST) == sol.impulse_response
    assert homogeneous_solution(FIRST) == sol.homogeneous
    assert particular_solution(FIRST) == sol.particular


def test_sine_forcing_homogeneous(backend):
    p = IvpProblem("analog", (24, 20, 7), (0, 1, -3))
    yh = solve(p).homogeneous
    assert yh.term(-3).coeffs[0] == pytest.approx(0.2)
    assert yh.term(-2 + 2j).coeffs[0] == pytest.approx(-0.1 - 0.3j)


@pytest.mark.parametrize("m,j,want", [(0, 0, 1), (3, 1, 1), (3, 2, 3), (4, 2, 7), (5, 3, 25), (2, 3, 0)])
def test_stirling2(m, j, want):
    assert stirling2(m, j) == want


def test_zero_root_reduction():
    p = IvpProblem("discrete", (0, 1, 0), (1, 0, 0))
    m, rm, red = reduce_zero_roots(p)
    assert m == 1
    assert red.coeffs == (1, 0) and red.initial == (0, 0)
    assert rm is None


def test_zero_root_from_override():
    p = IvpProblem("discrete", (0, 1, 0), (1, 0, 0),
                   roots=RootMultiset(((0.0, 1), (1j, 1), (-1j, 1))))
    m, rm, red = reduce_zero_roots(p)
    assert m == 1 and rm.order == 2


def test_all_roots_zero():
    p = IvpProblem("discrete", (0, 0), (3, -1), (InputAtom(1.0, 1.0),))
    sol = solve(p)
    ref = iterate_recurrence(p, 12)
    for k in range(13):
        assert evaluate_discrete(sol.total, k) == pytest.approx(ref[k])
    # y(k+2) = u(k): the impulse response is delta shifted by two
    assert sol.impulse_response == DiscreteSignal.delta(2)


def test_zero_root_impulse_response_is_shifted():
    p = IvpProblem("discrete", (0, -0.25, 0), (0, 0, 0))
    h = impulse_response(p)
    ref = IvpProblem("discrete", (0, -0.25, 0), (0, 0, 1))
    vals = iterate_recurrence(ref, 15)
    # h(k) = y(k-1) for the response started by y(n-1) = 1
    for k in range(1, 15):
        assert evaluate_discrete(h, k) == pytest.approx(vals[k - 1], abs=1e-14)


def test_discrete_impulse_input():
    p = IvpProblem("discrete", (-0.5,), (0,), (InputAtom(1.0, 0.0, 0),))
    sol = solve(p)
    ref = iterate_recurrence(p, 10)
    assert [evaluate_discrete(sol.total, k) for k in range(11)] == pytest.approx(list(ref))


def test_signal_input():
    u = AnalogSignal.exp(-0.5, 2.0, 1)
    p = IvpProblem("analog", (1.0, 0.5), (1.0, 0.0), u)
    rep = verify(p)
    assert rep.passed and rep.equation_residual < 1e-10


def test_discrete_signal_input():
    u = DiscreteSignal.e_atom(0.9) + DiscreteSignal.delta(2, -1.0)
    p = IvpProblem("discrete", (0.1, -0.6), (1.0, 2.0), u)
    rep = verify(p)
    assert rep.passed and rep.max_deviation < 1e-12


@pytest.mark.parametrize("kind", ["analog", "discrete"])
def test_validation(kind):
    with pytest.raises(InsufficientInitialValues):
        IvpProblem(kind, (1, 2), (0,))
    with pytest.raises(InputNotExponential):
        IvpProblem(kind, (1,), (0,), ("sin",))
    with pytest.raises(InputNotExponential):
        InputAtom(1.0, 1.0, -1)
    with pytest.raises(ValueError):
        IvpProblem(kind, (1, 2), (0, 0), roots=RootMultiset(((1.0, 1),)))
    with pytest.raises(ValueError):
        IvpProblem(kind, (), ())


def test_degree_limit():
    p = IvpProblem("analog", (1.0,), (0.0,), (InputAtom(1.0, -1.0, 21),))
    with pytest.raises(DegreeTooHigh):
        solve(p)


def test_verify_flags_wrong_roots():
    bad = IvpProblem("analog", (2, 3), (-1, 2), (InputAtom(1.0),),
                     roots=RootMultiset(((-1.0, 1), (-2.5, 1))))
    rep = verify(bad)
    assert not rep.passed
    assert rep.equation_residual > 1e-3


def test_verify_discrete_report_fields():
    p = IvpProblem("discrete", (-0.125, 0.75, -1.5), (-1, 2, 0.8), (InputAtom(1.0, 1.0),))
    rep = verify(p)
    assert rep.oracle == "recurrence" and rep.points == 41
    assert rep.passed and rep.equation_residual < 1e-12


def _random_problem(rng, kind):
    n = int(rng.integers(1, 5))
    coeffs = tuple(float(x) for x in np.round(rng.uniform(-1, 1, n), 3))
    initial = tuple(float(x) for x in np.round(rng.uniform(-1, 1, n), 3))
    if kind == "analog":
        atoms = (InputAtom(float(rng.uniform(-1, 1)), complex(rng.uniform(-1, 0.2), rng.uniform(-2, 2)),
                           int(rng.integers(0, 3))),)
    else:
        atoms = (InputAtom(float(rng.uniform(-1, 1)), complex(rng.uniform(0.3, 1.0)), int(rng.integers(0, 3))),)
    return IvpProblem(kind, coeffs, initial, atoms)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_discrete_ivp_matches_recurrence(seed):
    p = _random_problem(np.random.default_rng(seed), "discrete")
    sol = solve(p)
    ref = iterate_recurrence(p, 25)
    got = np.array([evaluate_discrete(sol.total, k) for k in range(26)])
    scale = np.maximum(1.0, np.abs(ref))
    assert np.max(np.abs(got - ref) / scale) < 1e-7


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_analog_ivp_matches_rk4(seed):
    p = _random_problem(np.random.default_rng(seed), "analog")
    sol = solve(p)
    ts = np.linspace(0, 2, 9)
    _, ref = rk4_ivp(p, t_eval=ts, step=2e-3)
    got = np.array([evaluate(sol.total, t) for t in ts])
    assert np.max(np.abs(got - ref) / np.maximum(1.0, np.abs(ref))) < 1e-6


def test_resonant_total():
    p = IvpProblem("analog", (4, 0), (-2, 4), (InputAtom(0.5, 2j, 1), InputAtom(0.5, -2j, 1)))
    y = solve(p).total
    for t in (0.5, 1.5, 3.0):
        want = 1.96875 * math.sin(2 * t) - 2 * math.cos(2 * t) + 0.0625 * t * math.cos(2 * t) \
            + 0.125 * t * t * math.sin(2 * t)
        assert evaluate(y, t).real == pytest.approx(want, abs=1e-12)
