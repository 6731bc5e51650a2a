"""Accumulation-precision selection.

RADJUMP_PRECISION=double|extended picks the dtype used for quadrature
accumulation and for assembling the jump constants.  ``extended`` maps to the
platform long double (80-bit on x86), which matters for the constants: they
are products of many factors spanning ~30 orders of magnitude, and the double
path loses a couple of digits to intermediate rounding.  Constants are
additionally assembled in log space so they never underflow either way.
"""

import os

import numpy as np

__all__ = ["accumulation_dtype", "precision_mode", "quad_sum"]

_VALID = ("double", "extended")


def precision_mode() -> str:
    mode = os.environ.get("RADJUMP_PRECISION", "double").strip().lower()
    if mode not in _VALID:
        from .errors import ConfigError

        raise ConfigError(
            f"RADJUMP_PRECISION must be one of {_VALID}, got {mode!r}"
        )
    return mode


def accumulation_dtype():
    return np.longdouble if precision_mode() == "extended" else np.float64


def quad_sum(values, axis=None):
    """Sum quadrature terms in the configured accumulation dtype."""
    acc = np.sum(np.asarray(values), axis=axis, dtype=accumulation_dtype())
    if np.ndim(acc) == 0:
        return float(acc)
    return np.asarray(acc, dtype=np.float64)
