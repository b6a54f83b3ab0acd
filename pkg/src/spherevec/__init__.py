"""Exact computations with modules over functions and vector fields on the 2-sphere."""

from .avmod import (
    NonIntegralExponent,
    TMElement,
    TMTensorElement,
    a_mult,
    compatibility_check,
    deg,
    derived_zE,
    dual_pair,
    omega_embed,
    phi,
    project,
    tensor,
    vf_act,
    vf_embed,
    w_generator,
)
from .closure import ClosureReport, Window, close, density_witness, generate, membership, min_degree
from .glmod import GLElement, GLTensorElement, GLWeight, act_E, act_E_tensor, cg_project, phi_multiply
from .ring import LocalizedFun, SphereFun, SpherePoint, degree_z, partial, valuation
from .transition import Chart, check_diagram, rho_apply, transition_matrix
from .vectorfields import D12, D23, D31, VField, bracket, delta

__all__ = [
    "NonIntegralExponent", "TMElement", "TMTensorElement", "a_mult", "compatibility_check", "deg",
    "derived_zE", "dual_pair", "omega_embed", "phi", "project", "tensor", "vf_act", "vf_embed",
    "w_generator", "ClosureReport", "Window", "close", "density_witness", "generate", "membership",
    "min_degree", "GLElement", "GLTensorElement", "GLWeight", "act_E", "act_E_tensor", "cg_project",
    "phi_multiply", "LocalizedFun", "SphereFun", "SpherePoint", "degree_z", "partial", "valuation",
    "Chart", "check_diagram", "rho_apply", "transition_matrix", "D12", "D23", "D31", "VField",
    "bracket", "delta",
]
