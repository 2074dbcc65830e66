"""Explicit moment and concentration bounds for Markov chains.

Configs are plain dicts with the same layout as the command-line JSON files.
"""

import csv
import io
import json

from . import _core
from ._core import (
    CertificateError,
    CertificationFailure,
    ConfigError,
    InvalidArgument,
    b_coefficient_upper_log,
    exact_sn_moments,
    stationary,
)

__all__ = [
    "CertificateError",
    "CertificationFailure",
    "ConfigError",
    "InvalidArgument",
    "b_coefficient",
    "b_coefficient_upper_log",
    "bound",
    "constants",
    "contraction_rate",
    "exact_sn_moments",
    "gaussian_moment",
    "geometric_rate",
    "simulate",
    "stationary",
    "sweep",
]


def _dump(config):
    return json.dumps(config)


def constants(config):
    return json.loads(_core.constants_json(_dump(config)))


def bound(config):
    return json.loads(_core.bound_json(_dump(config)))


def simulate(config):
    return list(csv.DictReader(io.StringIO(_core.simulate_csv(_dump(config)))))


def sweep(config, workers=0):
    """Returns (rows, violated, errors); rows are dicts keyed by CSV column."""
    text, violated, errors = _core.sweep_csv(_dump(config), workers)
    return list(csv.DictReader(io.StringIO(text))), violated, errors


def geometric_rate(lam, b, d, m, eps, pi_V=None):
    return json.loads(_core.geometric_rate(lam, b, d, m, eps, pi_V))


def contraction_rate(lam, b, d, m, eps, pi_V, kappa_K=1.0):
    return json.loads(_core.contraction_rate(lam, b, d, m, eps, kappa_K, pi_V))


def b_coefficient(gamma, u, q):
    """(exact int or None, log value)."""
    exact, log_value = _core.b_coefficient(gamma, u, q)
    return (int(exact) if exact is not None else None), log_value


def gaussian_moment(q):
    return int(_core.gaussian_moment(q))
