"""c-regularity estimation and the mollification / OU / shell-construction bounds.

A density f on R^d is c-regular when |grad log f(x)| <= c (|x| + E|X|) for all
x; for radial profiles the left side is |psi(|x|)|, so the constant is the sup
of ratio(r) = |psi(r)| / (r + E|X|).  The sup is estimated on a log-spaced
radius grid — a lower bound on the true sup, reported as "grid-certified" —
and, for Gaussian mixtures, combined with the exact r -> infinity limit of the
ratio (the widest component dominates the tail, so the limit is 1 over the
largest variance; the estimate is exact for a single Gaussian).

Three constructions are certified against their claimed constants:

* mollification: Y = X + N(0, sigma2 I) is (4/sigma2)-regular;
* OU evolution: if X is c-regular, X_t is (5 c e^{2t})- and (5c+4)-regular,
  and the mollification bound applies to the OU decomposition as
  4/(1 - e^{-2t}) on the E|X|^2 = d normalization;
* the shell construction X = sqrt(1-eps) sqrt(d) R0 U + sqrt(eps) G, which is
  (4/eps)-regular and whose radial CDF F_R is sandwiched by shifted/dilated
  copies of F_{R0} up to an additive e^{-d t^2 / 8}.

F_R for the constructed profile is computed by radial integration of the
density (the tabulated profile's own CDF) and cross-checked against the exact
noncentral-chi-square mixture CDF; the cross-check feeds the certificate's
tolerance, never replaces the integration route.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.stats import ncx2

from .certificates import BoundCertificate
from .convolve import gaussian_smooth, ou_evolve
from .errors import ConfigError, InvalidR0
from .radial_core import (
    DEFAULT_SCHEME,
    QuadratureScheme,
    RadialProfile,
    chi_quantile,
    normalize,
    tabulated_profile,
)

__all__ = [
    "RegularityEstimate",
    "estimate_c",
    "verify_mollification",
    "verify_ou_regularity",
    "construct_approx_r",
    "R0Law",
]


@dataclass(frozen=True)
class RegularityEstimate:
    """Grid-certified regularity constant sup |psi(r)|/(r + E|X|).

    ``c_hat`` is a lower bound on the true sup (certified at the grid radii
    and, when present, at the analytic tail limit).
    """

    c_hat: float
    attained_at: float
    tail_limit: Optional[float]
    n_grid: int
    r_lo: float
    r_hi: float
    profile_id: str
    excluded: int = 0
    note: str = "grid-certified: sup evaluated on a log-spaced grid (lower bound)"


def estimate_c(profile: RadialProfile, n_grid: int = 512) -> RegularityEstimate:
    """Estimate the c-regularity constant of a radial profile."""
    if n_grid < 8:
        raise ConfigError(f"n_grid must be >= 8, got {n_grid}")
    mean_abs = profile.moment(1.0)
    r_hi = profile.r_max
    r_lo = max(r_hi * 1e-5, 1e-12)
    if not profile.is_analytic:
        r_lo = max(r_lo, float(profile.grid_r[1]) * 0.5)
    radii = np.exp(np.linspace(math.log(r_lo), math.log(r_hi), n_grid))
    psi = profile.score(radii)
    ok = np.isfinite(psi)
    excluded = int(np.sum(~ok))
    ratio = np.where(ok, np.abs(psi) / (radii + mean_abs), 0.0)
    k = int(np.argmax(ratio))
    c_hat, attained = float(ratio[k]), float(radii[k])
    tail = None
    if profile.is_analytic:
        tail = 1.0 / max(profile.mixture.variances)
        if tail >= c_hat:
            c_hat, attained = tail, math.inf
    return RegularityEstimate(
        c_hat=c_hat,
        attained_at=attained,
        tail_limit=tail,
        n_grid=n_grid,
        r_lo=float(r_lo),
        r_hi=float(r_hi),
        profile_id=profile.profile_id,
        excluded=excluded,
    )


# grid-sup slack allowed on top of the analytic constants
_C_TOL = 1e-6


def verify_mollification(
    base: RadialProfile, sigma2: float, scheme: QuadratureScheme = None
) -> BoundCertificate:
    """Certify that base + N(0, sigma2 I) is (4/sigma2)-regular."""
    conv = gaussian_smooth(base, sigma2, scheme)
    est = estimate_c(conv.best_profile())
    bound = 4.0 / sigma2
    return BoundCertificate.build(
        "Mollification",
        conv.best_profile(),
        lhs=est.c_hat,
        rhs=bound,
        tolerance=_C_TOL * bound,
        direction="upper",
        error_budget={"conv_sup_error": conv.sup_error},
        metadata={
            "sigma2": sigma2,
            "attained_at": est.attained_at,
            "tail_limit": est.tail_limit,
            "base_id": base.profile_id,
        },
    )


def verify_ou_regularity(
    profile: RadialProfile,
    c: float,
    t_grid: Tuple[float, ...] = (0.1, 0.5, 1.0),
    scheme: QuadratureScheme = None,
) -> BoundCertificate:
    """Certify the OU regularity bounds for a c-regular input at each t.

    All three claimed constants must hold: 5c e^{2t}, 5c + 4, and the
    mollification route 4/(1 - e^{-2t}) (the last on E|X|^2 = d scaling).
    """
    if c <= 0:
        raise ConfigError(f"regularity constant must be > 0, got {c}")
    prof = normalize(profile)
    d = prof.dim
    a = math.sqrt(d / prof.moment(2.0))
    if abs(a - 1.0) > 1e-13:
        prof = prof.scale(a)
        c = c / (a * a)
    rows = []
    worst = None
    for t in t_grid:
        if not t > 0:
            raise ConfigError(f"OU times must be > 0, got {t}")
        evolved = ou_evolve(prof, float(t), scheme)
        est = estimate_c(evolved.best_profile())
        bounds = {
            "5c_exp2t": 5.0 * c * math.exp(2.0 * t),
            "5c_plus_4": 5.0 * c + 4.0,
            "mollification": 4.0 / (1.0 - math.exp(-2.0 * t)),
        }
        for form, bd in bounds.items():
            margin = bd - est.c_hat
            if worst is None or margin < worst[0]:
                worst = (margin, est.c_hat, bd, float(t), form)
        rows.append({"t": float(t), "c_hat": est.c_hat, **bounds})
    _, lhs, rhs, t_w, form_w = worst
    return BoundCertificate.build(
        "OuRegularity",
        prof,
        lhs=lhs,
        rhs=rhs,
        tolerance=_C_TOL * rhs,
        direction="upper",
        metadata={"c_input": c, "worst_t": t_w, "worst_form": form_w, "per_t": rows},
    )


# -- shell construction --------------------------------------------------------


class R0Law:
    """A radius law R0 with E R0^2 = 1, ingested as atoms or a piecewise CDF.

    Accepted literals:
      {"type": "discrete", "atoms": [...], "weights": [...]}
      {"type": "piecewise_cdf", "r": [...], "F": [...]}

    A piecewise-linear CDF is atomized per segment with a Gauss-Legendre rule
    (the law restricted to a segment is uniform), which is what the shell
    construction consumes; the CDF itself stays exact for sandwich evaluation.
    """

    _GL_PER_SEGMENT = 8

    def __init__(self, literal: dict, tol: float = 1e-3):
        if not isinstance(literal, dict) or "type" not in literal:
            raise InvalidR0("R0 literal must be a dict with a 'type' field")
        kind = literal["type"]
        if kind == "discrete":
            atoms = np.asarray(literal.get("atoms", ()), dtype=float)
            weights = np.asarray(literal.get("weights", ()), dtype=float)
            if atoms.size == 0 or atoms.shape != weights.shape:
                raise InvalidR0("discrete R0 needs matching nonempty atoms/weights")
            if np.any(atoms < 0) or np.any(weights <= 0):
                raise InvalidR0("atoms must be >= 0 and weights > 0")
            weights = weights / weights.sum()
            order = np.argsort(atoms)
            self._atoms, self._weights = atoms[order], weights[order]
            self._cdf_r, self._cdf_f = None, None
        elif kind == "piecewise_cdf":
            r = np.asarray(literal.get("r", ()), dtype=float)
            F = np.asarray(literal.get("F", ()), dtype=float)
            if r.size < 2 or r.shape != F.shape:
                raise InvalidR0("piecewise_cdf R0 needs matching r/F arrays, >= 2 points")
            if np.any(np.diff(r) <= 0) or np.any(np.diff(F) < 0):
                raise InvalidR0("piecewise_cdf needs strictly increasing r, nondecreasing F")
            if r[0] < 0 or F[0] < -1e-12 or abs(F[-1] - 1.0) > 1e-9:
                raise InvalidR0("piecewise_cdf must start at r >= 0, F in [0, 1], F[-1] = 1")
            self._cdf_r, self._cdf_f = r, np.clip(F, 0.0, 1.0)
            atoms, weights = [], []
            if F[0] > 0:
                atoms.append(r[0]), weights.append(F[0])
            from scipy.special import roots_legendre

            x, w = roots_legendre(self._GL_PER_SEGMENT)
            for k in range(len(r) - 1):
                dF = F[k + 1] - F[k]
                if dF <= 0:
                    continue
                mid, half = 0.5 * (r[k] + r[k + 1]), 0.5 * (r[k + 1] - r[k])
                atoms.extend(mid + half * x)
                weights.extend(dF * 0.5 * w)
            self._atoms = np.asarray(atoms)
            self._weights = np.asarray(weights)
        else:
            raise InvalidR0(f"unknown R0 type {kind!r}")
        self.er2 = float(np.sum(self._weights * self._atoms**2))
        if abs(self.er2 - 1.0) > tol:
            raise InvalidR0(f"E R0^2 = {self.er2:.6f}, must be 1 within {tol}")

    @property
    def atoms(self):
        return self._atoms

    @property
    def weights(self):
        return self._weights

    def cdf(self, r):
        r = np.asarray(r, dtype=float)
        if self._cdf_r is not None:
            return np.interp(r, self._cdf_r, self._cdf_f, left=0.0, right=1.0)
        cum = np.cumsum(np.concatenate([[0.0], self._weights]))
        return cum[np.searchsorted(self._atoms, r, side="right")]


def construct_approx_r(
    r0,
    d: int,
    eps: float,
    t: float,
    scheme: QuadratureScheme = None,
    n_check: int = 200,
):
    """Build X = sqrt(1-eps) sqrt(d) R0 U + sqrt(eps) G and certify it.

    Returns the tabulated radial profile of X and a certificate that (i) the
    CDF of R = |X|/sqrt(d) lies in the F_{R0} sandwich on an evaluation grid
    and (ii) the profile is (4/eps)-regular up to grid tolerance.
    """
    if not (0.0 < eps < 1.0):
        raise ConfigError(f"eps must lie in (0, 1), got {eps}")
    if not t > 0.0:
        raise ConfigError(f"t must be > 0, got {t}")
    law = r0 if isinstance(r0, R0Law) else R0Law(r0)
    sch = scheme or DEFAULT_SCHEME
    shells = math.sqrt(d * (1.0 - eps)) * law.atoms
    # density of (shell at s) + N(0, eps I) via the Bessel angular closed form
    from .convolve import _angular_bessel
    from .radial_core import angular_weight_total

    s_max = float(shells.max())
    r_out = s_max + math.sqrt(eps) * chi_quantile(d, 1.0 - 1e-13)
    grid = sch.output_grid(r_out)
    log_norm = -0.5 * d * math.log(2.0 * math.pi * eps)
    vals = np.zeros_like(grid)
    m0 = angular_weight_total(d)
    for s, w in zip(shells, law.weights):
        kap = grid * s / eps
        gap = (grid - s) ** 2 / (2.0 * eps)
        vals += w * math.exp(log_norm) * _angular_bessel(d, kap, gap) / m0
    prof = normalize(tabulated_profile(d, grid, vals, scheme=sch))

    # sandwich on R = |X|/sqrt d; profile CDF is the integration route,
    # the noncentral chi-square mixture the exact cross-check
    shift = math.sqrt((t + 1.0) * eps)
    slack = math.exp(-d * t * t / 8.0)
    r_hi = s_max / math.sqrt(d) + shift + math.sqrt(eps) * (1.0 + chi_quantile(d, 0.999999) / math.sqrt(d))
    r_eval = np.linspace(0.0, r_hi, n_check)
    f_r = prof.cdf(np.sqrt(d) * r_eval)
    f_exact = np.zeros_like(r_eval)
    for s, w in zip(shells, law.weights):
        f_exact += w * ncx2.cdf(d * r_eval**2 / eps, d, s * s / eps)
    cdf_err = float(np.max(np.abs(f_r - f_exact)))
    lower = law.cdf((r_eval - shift) / math.sqrt(1.0 - eps)) - slack
    upper = law.cdf((r_eval + shift) / math.sqrt(1.0 - eps)) + slack
    sandwich_margin = float(min(np.min(f_r - lower), np.min(upper - f_r)))

    est = estimate_c(prof)
    c_bound = 4.0 / eps
    c_margin_rel = (c_bound - est.c_hat) / c_bound
    cert = BoundCertificate.build(
        "ApproxR",
        prof,
        lhs=float(min(sandwich_margin, c_margin_rel)),
        rhs=0.0,
        tolerance=cdf_err + _C_TOL,
        direction="lower",
        error_budget={"cdf_cross_check": cdf_err},
        metadata={
            "eps": eps,
            "t": t,
            "d": d,
            "sandwich_margin": sandwich_margin,
            "c_hat": est.c_hat,
            "c_bound": c_bound,
            "er2_r0": law.er2,
            "second_moment": prof.moment(2.0),
            "n_atoms": int(len(law.atoms)),
            "slack": slack,
        },
    )
    return prof, cert
