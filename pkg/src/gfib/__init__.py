"""Exact arithmetic and 2-adic orders for k-order generalized Fibonacci sequences."""

from .closedform import b_closed, b_piecewise, f_closed, s_closed
from .engine import (
    IndexDecomp,
    SequenceSpec,
    SequenceWindow,
    b_via_s,
    basis_spec,
    decompose,
    doubling_term,
    extend_backward,
    generate,
    index_decomp,
    ones_spec,
    recompose,
    t_spec,
    telescoped_term,
    window,
)
from .padic import INFINITE, s2, v2, v2_binomial, v2_factorial, v2_or_infinite
from .valuation import (
    NOT_COVERED,
    Prediction,
    deltas,
    fn1_residual,
    predict_b,
    predict_b_k3,
    predict_b_k4,
    predict_f,
    theorem3_residual,
    verify_range,
)

__version__ = "0.1.0"
