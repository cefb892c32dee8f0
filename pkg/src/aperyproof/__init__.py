"""Exact reconstruction and certified evaluation of the linear forms behind
the irrationality of zeta(3)."""

from .analytic import coincidence_check, eval_form, irrationality_gate, zeta3
from .apery_form import (
    apery_coeffs,
    apery_uv,
    build_R,
    certificate_s,
    fit_certificate,
    recurrence_check,
    verify_apery_telescoping,
)
from .ball_form import (
    ball_bound,
    ball_certificate,
    ball_coeffs,
    ball_uv,
    bound_analysis,
    build_ball_R,
    verify_ball_telescoping,
)
from .exact_core import PartialFraction, Poly, RatFunc, lcm_upto, pf_decompose, rf_arithmetic
from .highprec import HighPrec

__all__ = [
    "HighPrec", "PartialFraction", "Poly", "RatFunc",
    "apery_coeffs", "apery_uv", "ball_bound", "ball_certificate", "ball_coeffs", "ball_uv",
    "bound_analysis", "build_R", "build_ball_R", "certificate_s", "coincidence_check",
    "eval_form", "fit_certificate", "irrationality_gate", "lcm_upto", "pf_decompose",
    "recurrence_check", "rf_arithmetic", "verify_apery_telescoping", "verify_ball_telescoping",
    "zeta3",
]
