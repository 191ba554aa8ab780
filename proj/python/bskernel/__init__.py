"""Bessel-Struve kernel evaluation and univalence certificates."""

from ._core import (
    BracketError,
    DomainError,
    InputError,
    bs_coefficient,
    bs_derivative,
    bs_eval,
    certify,
    coefficients,
    digamma,
    find_nu0,
    gamma,
    ln_gamma,
    margin_scan,
    modified_bessel_i,
    modified_struve_l,
    nu0_objective,
    ode_residual,
    prop1_residual,
    recurrence_residual,
    scan_nu,
)

__all__ = [
    "BracketError",
    "DomainError",
    "InputError",
    "bs_coefficient",
    "bs_derivative",
    "bs_eval",
    "certify",
    "coefficients",
    "digamma",
    "find_nu0",
    "gamma",
    "ln_gamma",
    "margin_scan",
    "modified_bessel_i",
    "modified_struve_l",
    "nu0_objective",
    "ode_residual",
    "prop1_residual",
    "recurrence_residual",
    "scan_nu",
]
