"""Information functionals of radial densities.

All functionals reduce to one-dimensional radial quadrature:

    h(X)  = - S_{d-1} int r^{d-1} phi log phi dr          (differential entropy)
    J(X)  =   S_{d-1} int r^{d-1} phi psi^2 dr            (Fisher information)

with psi = (log phi)'.  The matched Gaussian G^X has per-coordinate variance
lambda = E|X|^2/d; non-Gaussianness and relative Fisher information are taken
against it:

    D(X) = h(G^X) - h(X) >= 0,      I(X) = J(X) - J(G^X) = J(X) - d/lambda >= 0,

and the entropy power is N(X) = exp(2 h(X)/d) / (2 pi e).  The log-Sobolev
deficit in this normalization is delta(X) = I(X)/2 - D(X) >= 0.

Every evaluation returns (value, error estimate); estimates combine the
two-resolution quadrature difference with closed-form truncation-tail bounds
for analytic profiles (tabulated profiles have no tail by definition).
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc, gammaincc, gammaincinv, gammaln, roots_legendre

from .certificates import TOL_FLOOR, BoundCertificate
from .errors import DivergentMoment, UnboundedScore
from .precision import quad_sum
from .radial_core import (
    DEFAULT_SCHEME,
    DENSITY_FLOOR,
    QuadratureScheme,
    RadialProfile,
    chi_quantile,
    moment_norm_with_err,
    sphere_area,
)

__all__ = [
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
]


def gaussian_entropy(d: int, variance: float) -> float:
    """h of N(0, variance * I_d)."""
    return 0.5 * d * np.log(2.0 * np.pi * np.e * variance)


def _radial_integral(profile, integrand, factor):
    nodes, weights = profile.scheme.radial_rule(profile.r_max, factor)
    vals = integrand(nodes)
    return sphere_area(profile.dim) * quad_sum(weights * nodes ** (profile.dim - 1) * vals)


def _two_resolution(profile, integrand):
    coarse = _radial_integral(profile, integrand, 1.0)
    fine = _radial_integral(profile, integrand, profile.scheme.refine_factor)
    return fine, abs(fine - coarse)


def _mixture_tail_second(profile, k2: int):
    """E[|X|^{2 k2} 1etc{|X| > r_max}] in closed form for mixtures (k2 in {0,1,2})."""
    w = np.asarray(profile.mixture.weights)
    v = np.asarray(profile.mixture.variances)
    d, R = profile.dim, profile.r_max
    a = 0.5 * d + k2
    # E (sigma chi)^{2k} 1_{> R} = sigma^{2k} 2^k Gamma(d/2+k)/Gamma(d/2) Q(d/2+k, R^2/(2 sigma^2))
    log_c = k2 * np.log(2.0) + gammaln(a) - gammaln(0.5 * d)
    return float(np.sum(w * np.exp(log_c + k2 * np.log(v)) * gammaincc(a, R * R / (2.0 * v))))


def entropy(profile: RadialProfile, scheme: QuadratureScheme = None):
    """Differential entropy h(X). Returns (value, error estimate)."""
    prof = profile if scheme is None else _with_scheme(profile, scheme)
    prof = _normalized(prof)

    def integrand(r):
        lp = prof.log_phi(r)
        p = np.exp(lp)
        out = np.where(p >= DENSITY_FLOOR, p * np.where(np.isfinite(lp), lp, 0.0), 0.0)
        return out

    val, err = _two_resolution(prof, integrand)
    h = -val
    if prof.is_analytic:
        # |log phi| <= r^2/(2 sigma_min^2) + C in the tail
        v = np.asarray(prof.mixture.variances)
        C = float(np.max(np.abs(np.log(np.asarray(prof.mixture.weights)) - 0.5 * prof.dim * np.log(2 * np.pi * v))))
        err += _mixture_tail_second(prof, 1) / (2.0 * v.min()) + C * _mixture_tail_second(prof, 0)
    return float(h), float(err)


def fisher(profile: RadialProfile, scheme: QuadratureScheme = None):
    """Fisher information J(X) = E psi(|X|)^2. Returns (value, error estimate)."""
    prof = profile if scheme is None else _with_scheme(profile, scheme)
    prof = _normalized(prof)
    excluded = {"mass": 0.0}

    def integrand(r):
        p = prof.phi(r)
        psi = prof.score(r)
        bad = ~np.isfinite(psi)
        if np.any(bad):
            excluded["mass"] += float(np.sum(p[bad]))
            psi = np.where(bad, 0.0, psi)
        return p * psi * psi

    val, err = _two_resolution(prof, integrand)
    if prof.is_analytic:
        v = np.asarray(prof.mixture.variances)
        err += _mixture_tail_second(prof, 2) / float(v.min()) ** 2
    if excluded["mass"] > 0.0:
        err += excluded["mass"] * max(val, 1.0)
    return float(val), float(err)


def relative_entropy(profile: RadialProfile, scheme: QuadratureScheme = None):
    """Non-Gaussianness D(X) = h(G^X) - h(X) >= 0 against the matched Gaussian."""
    prof = _normalized(profile if scheme is None else _with_scheme(profile, scheme))
    h, h_err = entropy(prof)
    lam, lam_err = prof.moment_with_err(2.0)
    lam, lam_err = lam / prof.dim, lam_err / prof.dim
    d_val = gaussian_entropy(prof.dim, lam) - h
    err = h_err + 0.5 * prof.dim * lam_err / lam
    return float(d_val), float(err)


def relative_fisher(profile: RadialProfile, scheme: QuadratureScheme = None):
    """Relative Fisher information I(X) = J(X) - J(G^X) = J(X) - d/lambda >= 0."""
    prof = _normalized(profile if scheme is None else _with_scheme(profile, scheme))
    J, J_err = fisher(prof)
    lam, lam_err = prof.moment_with_err(2.0)
    lam, lam_err = lam / prof.dim, lam_err / prof.dim
    val = J - prof.dim / lam
    err = J_err + prof.dim * lam_err / lam**2
    return float(val), float(err)


def entropy_power(profile: RadialProfile, scheme: QuadratureScheme = None):
    """Entropy power N(X) = exp(2 h / d) / (2 pi e)."""
    prof = _normalized(profile if scheme is None else _with_scheme(profile, scheme))
    h, h_err = entropy(prof)
    d = prof.dim
    val = np.exp(2.0 * h / d) / (2.0 * np.pi * np.e)
    return float(val), float(val * 2.0 * h_err / d)


def lsi_deficit(profile: RadialProfile, scheme: QuadratureScheme = None):
    """Log-Sobolev deficit delta(X) = I(X)/2 - D(X) >= 0."""
    prof = _normalized(profile if scheme is None else _with_scheme(profile, scheme))
    D, D_err = relative_entropy(prof)
    I, I_err = relative_fisher(prof)
    return float(0.5 * I - D), float(0.5 * I_err + D_err)


def _normalized(profile):
    from .radial_core import normalize

    return normalize(profile)


def _with_scheme(profile, scheme):
    if profile.scheme == scheme:
        return profile
    if profile.is_analytic:
        return RadialProfile(profile.dim, mixture=profile.mixture, scheme=scheme)
    return RadialProfile(
        profile.dim,
        grid_r=profile.grid_r,
        grid_phi=profile.grid_phi,
        interp_order=profile.interp_order,
        scheme=scheme,
    )


# -- Wasserstein distance to the chi law --------------------------------------


def _w2_sq(profile, n_nodes):
    d = profile.dim
    x, w = roots_legendre(n_nodes)
    q = 0.5 * (x + 1.0)
    wq = 0.5 * w
    qr = profile.quantile(q) / np.sqrt(d)
    qchi = chi_quantile(d, q) / np.sqrt(d)
    return float(quad_sum(wq * (qr - qchi) ** 2))


def w2_radial_to_chi(profile: RadialProfile, scheme: QuadratureScheme = None):
    """W_2(law of |X|/sqrt(d), law of |G|/sqrt(d)) by quantile coupling.

    Gauss-Legendre nodes in probability space (quantile functions are smooth
    away from the endpoints and the GL rule never touches q = 0, 1); the error
    estimate is the difference against a doubled rule.
    """
    prof = _normalized(profile if scheme is None else _with_scheme(profile, scheme))
    n = prof.scheme.w2_nodes
    base = _w2_sq(prof, n)
    fine = _w2_sq(prof, 2 * n)
    w2 = float(np.sqrt(max(fine, 0.0)))
    err_sq = abs(fine - base) + 1e-16
    err = err_sq / (2.0 * w2) if w2 > 1e-12 else float(np.sqrt(err_sq))
    return w2, float(err)


def w2_deviation_bound(profile: RadialProfile, scheme: QuadratureScheme = None):
    """Both sides of |W_2(R, chi/sqrt d) - ||R-1||_2| <= ||chi/sqrt d - 1||_2.

    Returns (lhs, rhs, w2): the triangle-type deviation bound that pins W_2 to
    the L2 radial deviation up to the Gaussian radial spread.
    """
    prof = _normalized(profile if scheme is None else _with_scheme(profile, scheme))
    d = prof.dim
    w2, _ = w2_radial_to_chi(prof)
    er = prof.moment(1.0) / np.sqrt(d)
    er2 = prof.moment(2.0) / d
    dev_r = float(np.sqrt(max(er2 - 2.0 * er + 1.0, 0.0)))
    kappa = np.exp(0.5 * np.log(2.0 / d) + gammaln(0.5 * (d + 1)) - gammaln(0.5 * d))
    dev_chi = float(np.sqrt(max(2.0 - 2.0 * kappa, 0.0)))
    return abs(w2 - dev_r), dev_chi, w2


# -- chi-moment growth along the Ornstein-Uhlenbeck flow ----------------------


def chi_moment_check(
    profile: RadialProfile,
    p: float = 3.0,
    t_grid=(0.1, 0.5, 1.0),
    scheme: QuadratureScheme = None,
) -> BoundCertificate:
    """Certify || |X_t|^2 ||_p <= 2 (1 + p/d) || |X|^2 ||_p along the OU flow.

    The input is rescaled to E|X|^2 = d first (the bound lives in that
    normalization).  One certificate is emitted; the margin is the minimum
    over the t grid and metadata records the per-t values.
    """
    from .convolve import ou_evolve

    if not (p >= 0.5 and np.isfinite(p)):
        raise DivergentMoment(f"chi_moment_check requires p >= 1/2, got {p}")
    prof = _normalized(profile if scheme is None else _with_scheme(profile, scheme))
    d = prof.dim
    a = float(np.sqrt(d / prof.moment(2.0)))
    if abs(a - 1.0) > 1e-13:
        prof = prof.scale(a)
    base, base_err = moment_norm_with_err(prof, p)
    rhs = 2.0 * (1.0 + p / d) * base
    rhs_err = 2.0 * (1.0 + p / d) * base_err
    per_t = {}
    worst_t, worst, worst_err = None, -np.inf, 0.0
    for t in t_grid:
        evolved = ou_evolve(prof, float(t)).best_profile()
        m_t, m_t_err = moment_norm_with_err(evolved, p)
        per_t[repr(float(t))] = m_t
        if m_t > worst:
            worst_t, worst, worst_err = float(t), m_t, m_t_err
    tol = rhs_err + worst_err
    return BoundCertificate.build(
        "ChiMoment",
        prof,
        lhs=worst,
        rhs=rhs,
        tolerance=tol,
        direction="upper",
        constant=2.0 * (1.0 + p / d),
        metadata={"p": p, "worst_t": worst_t, "moment_by_t": per_t, "input_norm": base},
        error_budget={"input_moment": base_err, "evolute_moment": worst_err},
    )


# -- consolidated report -------------------------------------------------------


@dataclass(frozen=True)
class FunctionalReport:
    """One profile's information functionals with error estimates.

    Serializes with the fixed field names h, J, D, I, N, second_moment,
    lambda (matched per-coordinate variance) and their *_err companions.
    """

    profile_id: str
    d: int
    h: float
    h_err: float
    J: float
    J_err: float
    D: float
    D_err: float
    I: float
    I_err: float
    N: float
    N_err: float
    second_moment: float
    second_moment_err: float
    lam: float
    lam_err: float

    FIELDS = ("h", "J", "D", "I", "N", "second_moment", "lambda")

    def to_json_dict(self) -> dict:
        out = {"profile_id": self.profile_id, "d": self.d}
        for name in self.FIELDS:
            attr = "lam" if name == "lambda" else name
            out[name] = getattr(self, attr)
            out[name + "_err"] = getattr(self, attr + "_err")
        return out

    @classmethod
    def csv_header(cls) -> list:
        cols = ["profile_id", "d"]
        for name in cls.FIELDS:
            cols += [name, name + "_err"]
        return cols

    def to_csv_row(self) -> list:
        row = [self.profile_id, str(self.d)]
        for name in self.FIELDS:
            attr = "lam" if name == "lambda" else name
            row += [repr(float(getattr(self, attr))), repr(float(getattr(self, attr + "_err")))]
        return row


def evaluate_functionals(profile: RadialProfile, scheme: QuadratureScheme = None) -> FunctionalReport:
    prof = _normalized(profile if scheme is None else _with_scheme(profile, scheme))
    h, h_err = entropy(prof)
    J, J_err = fisher(prof)
    D, D_err = relative_entropy(prof)
    I, I_err = relative_fisher(prof)
    N, N_err = entropy_power(prof)
    m2, m2_err = prof.moment_with_err(2.0)
    return FunctionalReport(
        profile_id=prof.profile_id,
        d=prof.dim,
        h=h,
        h_err=h_err,
        J=J,
        J_err=J_err,
        D=D,
        D_err=D_err,
        I=I,
        I_err=I_err,
        N=N,
        N_err=N_err,
        second_moment=m2,
        second_moment_err=m2_err,
        lam=m2 / prof.dim,
        lam_err=m2_err / prof.dim,
    )
