"""Closed-form convolution of exponential signals via confluent Vandermonde
systems, and constant-coefficient ODE / difference-equation IVP solving."""
from .conv_analog import conv_atoms, conv_signals, derivative_profile, power_conv
from .conv_discrete import dconv_atoms, dconv_signals, dpower_conv_e, dvalue_profile
from .errors import *  # noqa: F401,F403
from .kernels import BACKEND
from .lti import (
    InputAtom,
    IvpProblem,
    IvpSolution,
    VerifyReport,
    homogeneous_solution,
    impulse_response,
    particular_solution,
    reduce_zero_roots,
    solve,
    verify,
)
from .roots import characteristic_multiset, cluster, find_roots
from .signals import (
    AnalogSignal,
    AnalogTerm,
    DiscreteSignal,
    DiscreteTerm,
    Poly,
    RealForm,
    add,
    advance_discrete,
    differentiate_right,
    evaluate,
    evaluate_discrete,
    power_form,
    realify,
    sample,
    scale,
    shift_discrete,
)
from .vandermonde import (
    RootMultiset,
    VandermondeSystem,
    build_confluent,
    build_simple,
    residual_log,
    solve_system,
    solve_with_rhs,
)
from .vandermonde import solve as solve_vandermonde

__version__ = "0.1.0"
