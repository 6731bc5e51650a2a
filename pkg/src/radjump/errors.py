"""Exception hierarchy.

Everything raised intentionally by this package derives from RadjumpError so
callers can catch one type at the CLI boundary.  Validation failures carry the
offending field / radius / parameter in the message; nothing is ever silently
clipped into validity.
"""

__all__ = [
    "RadjumpError",
    "ConfigError",
    "ZeroMass",
    "NegativeDensity",
    "VanishingDensity",
    "DivergentMoment",
    "QuadratureDivergence",
    "ResolutionFailure",
    "UnboundedScore",
    "QuantileInversionFailure",
    "SamplerFailure",
    "InvalidR0",
    "NumericalError",
]


class RadjumpError(Exception):
    """Base class for all radjump failures."""


class ConfigError(RadjumpError):
    """Malformed profile literal or experiment configuration.

    The message names the offending field path (e.g. ``profiles[2].weights[0]``).
    """


class ZeroMass(RadjumpError):
    """Profile integrates to (numerically) zero mass; cannot normalize."""


class NegativeDensity(RadjumpError):
    """A tabulated profile value is negative."""


class VanishingDensity(RadjumpError):
    """Density fell below the representable floor where a positive value was required."""


class DivergentMoment(RadjumpError):
    """Requested moment does not exist or its tail cannot be controlled."""


class QuadratureDivergence(RadjumpError):
    """Two-resolution error estimate failed to settle below the requested budget."""


class ResolutionFailure(RadjumpError):
    """Refinement did not reduce the error estimate (non-convergent integrand)."""


class UnboundedScore(RadjumpError):
    """Score magnitude exceeded every tested bound; profile not c-regular on the grid."""


class QuantileInversionFailure(RadjumpError):
    """Radial CDF inversion failed to bracket or converge."""


class SamplerFailure(RadjumpError):
    """Inverse-CDF radius sampler could not be constructed for the profile."""


class InvalidR0(RadjumpError):
    """Supplied radial law R0 is not a valid normalized law with E R0^2 = 1."""


class NumericalError(RadjumpError):
    """Catch-all for overflow / NaN contamination detected mid-computation."""
