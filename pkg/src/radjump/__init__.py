"""Certified entropy and Fisher-information jump inequalities for radial
densities on R^d.

The package computes information functionals (entropy, Fisher information,
relative entropy and Fisher information with respect to the standard
Gaussian), exact radial convolutions, the radially reduced Landau production
functional, grid-certified score regularity constants, and the explicit
power-law jump constants, and packages every inequality check as a
:class:`~radjump.certificates.BoundCertificate` with a propagated error
tolerance.
"""

from .bounds import (
    DEFAULT_EPS_GRID,
    LSI_EPS_GRID,
    ProfileStudy,
    c_eps,
    c_tilde_eps,
    certify_d_vs_deficit,
    certify_entropy_jump,
    certify_entropy_jump_noreg,
    certify_fisher_jump,
    certify_improved_lsi,
    certify_improved_stam,
    certify_lsi,
    certify_mixture_example,
    k_eps,
    run_battery,
)
from .certificates import CHECK_NAMES, CSV_COLUMNS, BoundCertificate
from .convolve import (
    CROSS_CHECK_TOL,
    ConvolutionResult,
    entropy_jump,
    fisher_dissipation,
    gaussian_smooth,
    ou_evolve,
    self_convolve_rescaled,
)
from .corpus import CORPUS_DIMS, MIXTURE_SHAPES, corpus
from .errors import (
    ConfigError,
    DivergentMoment,
    InvalidR0,
    NegativeDensity,
    NumericalError,
    QuadratureDivergence,
    QuantileInversionFailure,
    RadjumpError,
    ResolutionFailure,
    SamplerFailure,
    UnboundedScore,
    VanishingDensity,
    ZeroMass,
)
from .functionals import (
    FunctionalReport,
    chi_moment_check,
    entropy,
    entropy_power,
    evaluate_functionals,
    fisher,
    gaussian_entropy,
    lsi_deficit,
    relative_entropy,
    relative_fisher,
    w2_deviation_bound,
    w2_radial_to_chi,
)
from .landau import (
    LandauEstimate,
    check_dv_lemma,
    landau_production,
    landau_production_mc,
)
from .precision import precision_mode, quad_sum
from .radial_core import (
    DEFAULT_SCHEME,
    GaussianMixtureSpec,
    QuadratureScheme,
    RadialProfile,
    chi_quantile,
    gaussian_profile,
    mixture_profile,
    normalize,
    profile_from_literal,
    sphere_area,
    tabulated_profile,
)
from .regularity import (
    R0Law,
    RegularityEstimate,
    construct_approx_r,
    estimate_c,
    verify_mollification,
    verify_ou_regularity,
)
from .report import render_csv, render_json, write_reports

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # profiles and quadrature
    "RadialProfile",
    "GaussianMixtureSpec",
    "QuadratureScheme",
    "DEFAULT_SCHEME",
    "gaussian_profile",
    "mixture_profile",
    "tabulated_profile",
    "profile_from_literal",
    "normalize",
    "sphere_area",
    "chi_quantile",
    "precision_mode",
    "quad_sum",
    # functionals
    "entropy",
    "fisher",
    "relative_entropy",
    "relative_fisher",
    "entropy_power",
    "lsi_deficit",
    "gaussian_entropy",
    "w2_radial_to_chi",
    "w2_deviation_bound",
    "chi_moment_check",
    "FunctionalReport",
    "evaluate_functionals",
    # convolution semigroups
    "ConvolutionResult",
    "self_convolve_rescaled",
    "ou_evolve",
    "gaussian_smooth",
    "entropy_jump",
    "fisher_dissipation",
    "CROSS_CHECK_TOL",
    # Landau production
    "LandauEstimate",
    "landau_production",
    "landau_production_mc",
    "check_dv_lemma",
    # regularity
    "RegularityEstimate",
    "estimate_c",
    "verify_mollification",
    "verify_ou_regularity",
    "construct_approx_r",
    "R0Law",
    # jump constants and certificates
    "DEFAULT_EPS_GRID",
    "LSI_EPS_GRID",
    "ProfileStudy",
    "k_eps",
    "c_eps",
    "c_tilde_eps",
    "certify_fisher_jump",
    "certify_entropy_jump",
    "certify_entropy_jump_noreg",
    "certify_lsi",
    "certify_improved_stam",
    "certify_improved_lsi",
    "certify_mixture_example",
    "certify_d_vs_deficit",
    "run_battery",
    "BoundCertificate",
    "CHECK_NAMES",
    "CSV_COLUMNS",
    # corpus and reporting
    "corpus",
    "MIXTURE_SHAPES",
    "CORPUS_DIMS",
    "render_csv",
    "render_json",
    "write_reports",
    # errors
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
