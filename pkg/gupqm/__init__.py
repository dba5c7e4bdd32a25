# -*- coding: utf-8 -*-
from gupqm.controller import report
from gupqm.model.algebra.uncertainty import UncertaintyState
from gupqm.model.algebra.uncertainty import uncertainty_bound, minimal_length
from gupqm.model.algebra.uncertainty import bound_curve, momentum_map
from gupqm.model.algebra.uncertainty import commutator_check
from gupqm.model.classical.action import ActionPair, action
from gupqm.model.classical.action import free_action, sho_action
from gupqm.model.classical.trajectory import sho_trajectory_2d, path_eval
from gupqm.model.classical.trajectory import eom_residual
from gupqm.model.green.bessel import bessel_k
from gupqm.model.green.green import GreenQuery, green_free_2d_closed
from gupqm.model.green.green import laplace_numeric
from gupqm.model.kernels.kernel import KernelValue, kernel
from gupqm.model.kernels.kernel import free_kernel, free_kernel_spectral
from gupqm.model.kernels.kernel import sho_kernel, sho_prefactor
from gupqm.model.kernels.propagator import PrefactorSpec
from gupqm.model.moments.gaussian import GaussianWeight, MomentKind
from gupqm.model.moments.gaussian import closed_moment, integrate_poly_gaussian
from gupqm.model.moments.polynomial import MultiPoly
from gupqm.model.moments.quadrature import quadrature_oracle
from gupqm.model.spectrum.energies import plane_wave_energy, sho_energy_2d
from gupqm.model.spectrum.oracle import oscillator_matrix_oracle
from gupqm.model.system.endpoints import Endpoints, TimeArg, displacement
from gupqm.model.system.parameters.ModelParams import ModelParams, default
from gupqm.model.verify.action_shift import delta_S
from gupqm.model.verify.composition import composition_check_analytic
from gupqm.model.verify.composition import composition_check_quadrature
from gupqm.model.verify.delta import TestFunction, delta_limit_check
from gupqm.model.verify.report import CompositionSplit, ResidualReport
from gupqm.model.verify.schrodinger import schrodinger_residual
from gupqm.model.verify.suites import run_suite
from gupqm.view import plot

LOGGER_NAME = 'gupqm-lib'

__all__ = [
    # report serialization
    "report",
    # system description
    "ModelParams", "default", "Endpoints", "TimeArg", "displacement",
    # gaussian moments
    "GaussianWeight", "MomentKind", "MultiPoly", "closed_moment",
    "integrate_poly_gaussian", "quadrature_oracle",
    # modified algebra
    "UncertaintyState", "uncertainty_bound", "minimal_length", "bound_curve",
    "momentum_map", "commutator_check",
    # classical paths & actions
    "ActionPair", "action", "free_action", "sho_action", "sho_trajectory_2d",
    "path_eval", "eom_residual",
    # propagators
    "KernelValue", "PrefactorSpec", "kernel", "free_kernel",
    "free_kernel_spectral", "sho_kernel", "sho_prefactor",
    # spectra
    "plane_wave_energy", "sho_energy_2d", "oscillator_matrix_oracle",
    # green's functions
    "GreenQuery", "bessel_k", "green_free_2d_closed", "laplace_numeric",
    # consistency checks
    "CompositionSplit", "ResidualReport", "TestFunction", "delta_S",
    "composition_check_analytic", "composition_check_quadrature",
    "schrodinger_residual", "delta_limit_check", "run_suite",
    # logging utilities & setups
    "LOGGER_NAME",
    # plotting utils
    "plot"
]
