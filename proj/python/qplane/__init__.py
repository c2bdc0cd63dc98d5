"""Harmonic analysis on the quantum az+b homogeneous space."""

import json as _json

from ._core import (
    AliasingError,
    ConfigError,
    Error,
    FourierData,
    FqEvaluator,
    ModeFunction,
    NoDataError,
    ParseError,
    PoleError,
    QLattice,
    WindowError,
    _run_verify,
    basis,
    build_fourier_data,
    chi,
    conjugate,
    d0,
    d1,
    fourier_adjoint_apply,
    fourier_apply,
    inner_product,
    integrate_mu,
    max_abs_diff,
    mult_z,
    mult_zbar,
    multiply,
    norm,
    parse_mode_csv,
    parse_mode_json,
    plancherel_residual,
    q_diff,
    q_diff_pointwise,
    random_mode_function,
    relation_residual,
    relations,
    shift,
    sigma,
    to_mode_csv,
    to_mode_json,
    unitarity_defect,
)

__version__ = "0.1.0"


def fq(k, theta, q=0.5):
    """F_q at the lattice point q^k e^{i theta}."""
    return FqEvaluator(QLattice(q)).point(k, theta)


def run_verify(q=0.5, kmin=-8, kmax=8, lmax=12, ntheta=256, tol_exact=1e-12, tol_quad=1e-3,
               suites=(), seed=1, random_functions=50, kernel_kmax=None):
    """Runs the verification suites and returns the report as a dict."""
    text = _run_verify(q, kmin, kmax, lmax, ntheta, tol_exact, tol_quad, list(suites), seed,
                       random_functions, kernel_kmax)
    return _json.loads(text)

