"""Explicit constants and certified inequalities for entropy/Fisher jumps.

Every certificate follows the same recipe: rescale the input to E|X|^2 = d
(all the inequalities are scale-invariant, and the regularity constant
rescales as c -> c E|X|^2 / d), evaluate both sides with the quadrature
machinery, propagate the ingredient error estimates into a tolerance, and
record pass = margin >= -tolerance.

The constants:

    K_eps = (eps/8)^eps / (8(1+eps))^{1+eps}
            * ||X|^2||_1^{1+eps} / (c^{2 eps} ||X|^2||_{2+1/eps}^{1+2 eps})

    C_eps = (d eps / (1+(d+2) eps))^{1+2 eps}
            * 2^4 (d/100)^eps / (2^8 (1+eps)(1+2 eps))^{1+eps}
            * ||X|^2||_1 / (c^{2 eps} ||X|^2||_{2+1/eps}^{1+2 eps})

    Ctilde_eps = (d eps / (1+(d+2) eps))^{2+4 eps}
            * 2^12 (d/100)^eps / (2^17 (1+eps)(1+2 eps))^{1+eps}
            * ||X|^2||_1 / ||X|^2||_{2+1/eps}^{1+2 eps}

assembled in log space with extended-precision accumulation (the small
factors cancel badly in double for large eps), so identities like
K_eps(tX, c/t^2) = t^{2 eps} K_eps(X, c) hold to full relative accuracy.

Certified inequalities, with the lhs always the measured quantity:

    fisher_dissipation >= K_eps I^{1+eps}                     (FisherJump)
    entropy_jump       >= C_eps D^{1+eps}                     (EntropyJump)
    entropy_jump       >= Ctilde_eps D^{1+3 eps} / I^{2 eps}  (EntropyJumpNoReg)
    delta_LSI >= max over eps grid of the NoReg rhs           (LsiNoReg)
    delta_LSI >= (1/4) K_eps I^{1+eps}                        (LsiReg)
    (1/d) N J >= exp((2/d) entropy_jump)                      (ImprovedStam)
    delta_LSI >= entropy_jump                                 (ImprovedLsi)
    D <= 10^8 max{delta, sqrt(delta) sqrt(E|X_1|^8 / d)}      (D_vs_deficit)

plus the centered-Gaussian-mixture example's pre-asymptotic display
(MixtureExample) and the Landau/chi-moment checks re-exported from their
modules into the battery.

When relative Fisher information is zero to within its own error estimate
(the Gaussian case), the power-law right-hand sides are the trivial 0 and
the certificate records that; nothing is clamped away from what was measured.
"""

import math
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .certificates import CHECK_NAMES, TOL_FLOOR, BoundCertificate
from .convolve import entropy_jump, fisher_dissipation, self_convolve_rescaled
from .errors import ConfigError
from .functionals import (
    chi_moment_check,
    entropy_power,
    evaluate_functionals,
    w2_radial_to_chi,
)
from .landau import check_dv_lemma, landau_production_mc
from .precision import accumulation_dtype
from .radial_core import (
    GaussianMixtureSpec,
    QuadratureScheme,
    RadialProfile,
    moment_norm_with_err,
    normalize,
)
from .regularity import estimate_c

__all__ = [
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
]

DEFAULT_EPS_GRID = (0.5, 1.0, 2.0)
LSI_EPS_GRID = (0.25, 0.5, 1.0, 2.0, 4.0)
_LOG2 = math.log(2.0)
# below this, relative Fisher information is numerically zero and the
# power-law right-hand sides degenerate to the trivial bound 0
_TRIVIAL = 1e-9


def _exp_sum(terms: Iterable[float]) -> float:
    acc = accumulation_dtype()(0.0)
    for t in terms:
        acc += accumulation_dtype()(t)
    return float(np.exp(acc))


def _first_factor_log(d: int, eps: float) -> float:
    return math.log(d * eps) - math.log1p((d + 2) * eps)


def _moments(profile: RadialProfile, eps: float):
    m1, m1e = moment_norm_with_err(profile, 1.0)
    mq, mqe = moment_norm_with_err(profile, 2.0 + 1.0 / eps)
    return m1, m1e, mq, mqe


def k_eps(profile: RadialProfile, c: float, eps: float) -> float:
    """K_eps(X) with regularity constant c.  Scales as t^{2 eps} under
    X -> tX, c -> c/t^2."""
    val, _ = _k_eps_err(profile, c, eps)
    return val


def _k_eps_err(profile, c, eps):
    if not eps > 0:
        raise ConfigError(f"eps must be > 0, got {eps}")
    if not c > 0:
        raise ConfigError(f"regularity constant must be > 0, got {c}")
    m1, m1e, mq, mqe = _moments(profile, eps)
    val = _exp_sum(
        [
            eps * (math.log(eps) - 3.0 * _LOG2),
            -(1.0 + eps) * (3.0 * _LOG2 + math.log1p(eps)),
            (1.0 + eps) * math.log(m1),
            -2.0 * eps * math.log(c),
            -(1.0 + 2.0 * eps) * math.log(mq),
        ]
    )
    rel = (1.0 + eps) * m1e / m1 + (1.0 + 2.0 * eps) * mqe / mq
    return val, val * rel


def c_eps(profile: RadialProfile, c: float, eps: float) -> float:
    """The entropy-jump constant C_eps(X, c) for a c-regular input."""
    val, _ = _c_eps_err(profile, c, eps)
    return val


def _c_eps_err(profile, c, eps):
    if not eps > 0:
        raise ConfigError(f"eps must be > 0, got {eps}")
    if not c > 0:
        raise ConfigError(f"regularity constant must be > 0, got {c}")
    d = profile.dim
    m1, m1e, mq, mqe = _moments(profile, eps)
    val = _exp_sum(
        [
            (1.0 + 2.0 * eps) * _first_factor_log(d, eps),
            4.0 * _LOG2,
            eps * (math.log(d) - math.log(100.0)),
            -(1.0 + eps) * (8.0 * _LOG2 + math.log1p(eps) + math.log1p(2.0 * eps)),
            math.log(m1),
            -2.0 * eps * math.log(c),
            -(1.0 + 2.0 * eps) * math.log(mq),
        ]
    )
    rel = m1e / m1 + (1.0 + 2.0 * eps) * mqe / mq
    return val, val * rel


def c_tilde_eps(profile: RadialProfile, eps: float) -> float:
    """The regularity-free entropy-jump constant (no c dependence)."""
    val, _ = _c_tilde_eps_err(profile, eps)
    return val


def _c_tilde_eps_err(profile, eps):
    if not eps > 0:
        raise ConfigError(f"eps must be > 0, got {eps}")
    d = profile.dim
    m1, m1e, mq, mqe = _moments(profile, eps)
    val = _exp_sum(
        [
            (2.0 + 4.0 * eps) * _first_factor_log(d, eps),
            12.0 * _LOG2,
            eps * (math.log(d) - math.log(100.0)),
            -(1.0 + eps) * (17.0 * _LOG2 + math.log1p(eps) + math.log1p(2.0 * eps)),
            math.log(m1),
            -(1.0 + 2.0 * eps) * math.log(mq),
        ]
    )
    rel = m1e / m1 + (1.0 + 2.0 * eps) * mqe / mq
    return val, val * rel


# -- shared per-profile ingredients ---------------------------------------------


class ProfileStudy:
    """Caches the expensive ingredients shared by a battery of certificates.

    Everything is computed on the E|X|^2 = d normalization; ``c_scale`` is
    the factor E|X|^2/d that converts a regularity constant quoted for the
    original profile.
    """

    def __init__(self, profile: RadialProfile, scheme: QuadratureScheme = None):
        base = normalize(profile)
        if scheme is not None and scheme != base.scheme:
            from .functionals import _with_scheme

            base = _with_scheme(base, scheme)
        d = base.dim
        m2 = base.moment(2.0)
        self.c_scale = m2 / d
        a = math.sqrt(d / m2)
        self.profile = base.scale(a) if abs(a - 1.0) > 1e-13 else base
        self.d = d
        self._cache = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def functionals(self):
        return self._get("functionals", lambda: evaluate_functionals(self.profile))

    @property
    def conv(self):
        return self._get("conv", lambda: self_convolve_rescaled(self.profile))

    @property
    def jump(self) -> Tuple[float, float]:
        return self._get("jump", lambda: entropy_jump(self.profile, conv=self.conv))

    @property
    def dissipation(self) -> Tuple[float, float]:
        return self._get(
            "dissipation", lambda: fisher_dissipation(self.profile, conv=self.conv)
        )

    @property
    def c_hat(self) -> float:
        return self._get("c_hat", lambda: estimate_c(self.profile).c_hat)

    @property
    def w2(self) -> Tuple[float, float]:
        return self._get("w2", lambda: w2_radial_to_chi(self.profile))

    @property
    def deficit(self) -> Tuple[float, float]:
        rep = self.functionals
        return 0.5 * rep.I - rep.D, 0.5 * rep.I_err + rep.D_err

    def resolve_c(self, c: Optional[float]) -> float:
        """Regularity constant on the normalized profile."""
        if c is None:
            return self.c_hat
        if not c > 0:
            raise ConfigError(f"regularity constant must be > 0, got {c}")
        return c * self.c_scale


def _study(profile, scheme, study):
    if study is not None:
        return study
    return ProfileStudy(profile, scheme)


# -- certificates ----------------------------------------------------------------


def certify_fisher_jump(
    profile: RadialProfile,
    c: Optional[float] = None,
    eps: float = 1.0,
    scheme: QuadratureScheme = None,
    study: ProfileStudy = None,
) -> BoundCertificate:
    """fisher_dissipation >= K_eps I^{1+eps}."""
    st = _study(profile, scheme, study)
    c_used = st.resolve_c(c)
    lhs, lhs_err = st.dissipation
    rep = st.functionals
    K, K_err = _k_eps_err(st.profile, c_used, eps)
    trivial = rep.I <= max(rep.I_err, _TRIVIAL)
    if trivial:
        rhs, rhs_err = 0.0, 0.0
    else:
        rhs = K * rep.I ** (1.0 + eps)
        rhs_err = rhs * (K_err / K + (1.0 + eps) * rep.I_err / rep.I)
    return BoundCertificate.build(
        "FisherJump",
        st.profile,
        lhs=lhs,
        rhs=rhs,
        tolerance=lhs_err + rhs_err,
        direction="lower",
        epsilon=eps,
        constant=K,
        c_used=c_used,
        error_budget={"lhs": lhs_err, "rhs": rhs_err},
        metadata={"I": rep.I, "trivial": trivial},
    )


def certify_entropy_jump(
    profile: RadialProfile,
    c: Optional[float] = None,
    eps: float = 1.0,
    scheme: QuadratureScheme = None,
    study: ProfileStudy = None,
) -> BoundCertificate:
    """entropy_jump >= C_eps D^{1+eps}."""
    st = _study(profile, scheme, study)
    c_used = st.resolve_c(c)
    lhs, lhs_err = st.jump
    rep = st.functionals
    C, C_err = _c_eps_err(st.profile, c_used, eps)
    trivial = rep.D <= max(rep.D_err, _TRIVIAL)
    if trivial:
        rhs, rhs_err = 0.0, 0.0
    else:
        rhs = C * rep.D ** (1.0 + eps)
        rhs_err = rhs * (C_err / C + (1.0 + eps) * rep.D_err / rep.D)
    return BoundCertificate.build(
        "EntropyJump",
        st.profile,
        lhs=lhs,
        rhs=rhs,
        tolerance=lhs_err + rhs_err,
        direction="lower",
        epsilon=eps,
        constant=C,
        c_used=c_used,
        error_budget={"lhs": lhs_err, "rhs": rhs_err},
        metadata={"D": rep.D, "trivial": trivial},
    )


def _noreg_rhs(st: ProfileStudy, eps: float):
    rep = st.functionals
    Ct, Ct_err = _c_tilde_eps_err(st.profile, eps)
    if rep.I <= max(rep.I_err, _TRIVIAL) or rep.D <= max(rep.D_err, 0.0):
        return Ct, 0.0, 0.0, True
    rhs = Ct * rep.D ** (1.0 + 3.0 * eps) / rep.I ** (2.0 * eps)
    rel = Ct_err / Ct + (1.0 + 3.0 * eps) * rep.D_err / rep.D + 2.0 * eps * rep.I_err / rep.I
    return Ct, rhs, rhs * rel, False


def certify_entropy_jump_noreg(
    profile: RadialProfile,
    eps: float = 1.0,
    scheme: QuadratureScheme = None,
    study: ProfileStudy = None,
) -> BoundCertificate:
    """entropy_jump >= Ctilde_eps D^{1+3 eps} / I^{2 eps} (no regularity input)."""
    st = _study(profile, scheme, study)
    lhs, lhs_err = st.jump
    rep = st.functionals
    Ct, rhs, rhs_err, trivial = _noreg_rhs(st, eps)
    return BoundCertificate.build(
        "EntropyJumpNoReg",
        st.profile,
        lhs=lhs,
        rhs=rhs,
        tolerance=lhs_err + rhs_err,
        direction="lower",
        epsilon=eps,
        constant=Ct,
        error_budget={"lhs": lhs_err, "rhs": rhs_err},
        metadata={"D": rep.D, "I": rep.I, "trivial": trivial},
    )


def certify_lsi(
    profile: RadialProfile,
    eps: Optional[float] = None,
    mode: str = "noreg",
    c: Optional[float] = None,
    eps_grid: Sequence[float] = LSI_EPS_GRID,
    scheme: QuadratureScheme = None,
    study: ProfileStudy = None,
) -> BoundCertificate:
    """LSI deficit lower bounds.

    mode="noreg": delta_LSI >= max over the eps grid of the regularity-free
    right-hand side C~_eps D^{1+2 eps} (a sup over eps evaluated on a grid;
    the maximizing eps is reported).  mode="reg": delta_LSI >= (1/4) K_eps
    I^{1+eps} at the given eps, with regularity constant c.
    """
    st = _study(profile, scheme, study)
    rep = st.functionals
    lhs, lhs_err = st.deficit
    if mode == "noreg":
        best = (0.0, 0.0, None, None)  # rhs, rhs_err, eps, constant
        for e in eps_grid:
            Ct, rhs, rhs_err, trivial = _noreg_rhs(st, float(e))
            if rhs > best[0]:
                best = (rhs, rhs_err, float(e), Ct)
        rhs, rhs_err, eps_star, const = best
        return BoundCertificate.build(
            "LsiNoReg",
            st.profile,
            lhs=lhs,
            rhs=rhs,
            tolerance=lhs_err + rhs_err,
            direction="lower",
            epsilon=eps_star,
            constant=const,
            error_budget={"lhs": lhs_err, "rhs": rhs_err},
            metadata={"eps_grid": list(map(float, eps_grid)), "D": rep.D, "I": rep.I},
        )
    if mode != "reg":
        raise ConfigError(f"mode must be 'noreg' or 'reg', got {mode!r}")
    if eps is None:
        raise ConfigError("mode='reg' requires an explicit eps")
    c_used = st.resolve_c(c)
    K, K_err = _k_eps_err(st.profile, c_used, eps)
    trivial = rep.I <= max(rep.I_err, _TRIVIAL)
    if trivial:
        rhs, rhs_err = 0.0, 0.0
    else:
        rhs = 0.25 * K * rep.I ** (1.0 + eps)
        rhs_err = rhs * (K_err / K + (1.0 + eps) * rep.I_err / rep.I)
    return BoundCertificate.build(
        "LsiReg",
        st.profile,
        lhs=lhs,
        rhs=rhs,
        tolerance=lhs_err + rhs_err,
        direction="lower",
        epsilon=eps,
        constant=K,
        c_used=c_used,
        error_budget={"lhs": lhs_err, "rhs": rhs_err},
        metadata={"I": rep.I, "trivial": trivial},
    )


def certify_improved_stam(
    profile: RadialProfile,
    scheme: QuadratureScheme = None,
    study: ProfileStudy = None,
) -> BoundCertificate:
    """(1/d) N(X) J(X) >= exp((2/d)(h(W) - h(X)))."""
    st = _study(profile, scheme, study)
    rep = st.functionals
    d = st.d
    jump, jump_err = st.jump
    lhs = rep.N * rep.J / d
    lhs_err = (rep.N_err * rep.J + rep.N * rep.J_err) / d
    rhs = math.exp(2.0 * jump / d)
    rhs_err = rhs * 2.0 * jump_err / d
    return BoundCertificate.build(
        "ImprovedStam",
        st.profile,
        lhs=lhs,
        rhs=rhs,
        tolerance=lhs_err + rhs_err,
        direction="lower",
        error_budget={"lhs": lhs_err, "rhs": rhs_err},
        metadata={"N": rep.N, "J": rep.J, "jump": jump},
    )


def certify_improved_lsi(
    profile: RadialProfile,
    scheme: QuadratureScheme = None,
    study: ProfileStudy = None,
) -> BoundCertificate:
    """delta_LSI >= h(W) - h(X)."""
    st = _study(profile, scheme, study)
    lhs, lhs_err = st.deficit
    rhs, rhs_err = st.jump
    return BoundCertificate.build(
        "ImprovedLsi",
        st.profile,
        lhs=lhs,
        rhs=rhs,
        tolerance=lhs_err + rhs_err,
        direction="lower",
        error_budget={"lhs": lhs_err, "rhs": rhs_err},
    )


def certify_d_vs_deficit(
    profile: RadialProfile,
    scheme: QuadratureScheme = None,
    study: ProfileStudy = None,
) -> BoundCertificate:
    """D <= 10^8 max{delta_LSI, sqrt(delta_LSI) sqrt(E|X_1|^8 / d)}.

    The marginal eighth moment comes from the radial law through the
    uniform-direction coordinate moment E u_1^8 = 105/(d(d+2)(d+4)(d+6)).
    The bound is evaluated at the lower edge of delta's error interval
    (the sqrt has unbounded slope at 0, so linear propagation would be
    meaningless near the Gaussian case).
    """
    st = _study(profile, scheme, study)
    rep = st.functionals
    d = st.d
    delta, delta_err = st.deficit
    m8 = st.profile.moment(8.0)
    e1_8 = m8 * 105.0 / (d * (d + 2.0) * (d + 4.0) * (d + 6.0))
    delta_lo = max(delta - delta_err, 0.0)
    rhs = 1e8 * max(delta_lo, math.sqrt(delta_lo) * math.sqrt(e1_8 / d))
    nominal = 1e8 * max(max(delta, 0.0), math.sqrt(max(delta, 0.0)) * math.sqrt(e1_8 / d))
    return BoundCertificate.build(
        "D_vs_deficit",
        st.profile,
        lhs=rep.D,
        rhs=rhs,
        tolerance=rep.D_err,
        direction="upper",
        error_budget={"lhs": rep.D_err, "delta": delta_err},
        metadata={
            "delta": delta,
            "delta_lo": delta_lo,
            "marginal_eighth_moment": e1_8,
            "rhs_nominal": nominal,
        },
    )


def certify_mixture_example(
    spec,
    d: Optional[int] = None,
    eps: float = 1.0,
    scheme: QuadratureScheme = None,
    study: ProfileStudy = None,
) -> BoundCertificate:
    """The centered-Gaussian-mixture example's pre-asymptotic display:

        entropy_jump >= (d eps/(1+(d+2) eps))^{2(1+2 eps)}
                        * 2^4 (1/200)^eps / (2^8 (1+eps)(1+2 eps))^{1+eps}
                        * W_2^{2 eps}(|X|/sqrt d, |G|/sqrt d)
                          / (sigma_1^2 (sum_i p_i (sigma_i^2/sigma_1^2)^{2+1/eps})^eps)
                        * D(X)

    with sigma_1^2 the smallest component variance and sum p_i sigma_i^2 = 1
    (enforced by the normalization pre-step).  The d -> infinity form with
    the 2^{-15} constant and the LLN limit of W_2^2 are reported in the
    metadata, not asserted.
    """
    if isinstance(spec, RadialProfile):
        if not spec.is_analytic:
            raise ConfigError("the mixture example needs an analytic mixture profile")
        prof_in = spec
    else:
        if d is None:
            raise ConfigError("certify_mixture_example(spec, d) needs the dimension")
        prof_in = RadialProfile(d, mixture=spec)
    st = study if study is not None else ProfileStudy(prof_in, scheme)
    if st.profile.mixture is None:
        raise ConfigError("the mixture example needs an analytic mixture profile")
    rep = st.functionals
    mix = st.profile.mixture
    p = np.asarray(mix.weights)
    v = np.asarray(mix.variances)
    s1_sq = float(v.min())
    q = 2.0 + 1.0 / eps
    ratio_sum = float(np.sum(p * (v / s1_sq) ** q))
    const = _exp_sum(
        [
            2.0 * (1.0 + 2.0 * eps) * _first_factor_log(st.d, eps),
            4.0 * _LOG2,
            -eps * math.log(200.0),
            -(1.0 + eps) * (8.0 * _LOG2 + math.log1p(eps) + math.log1p(2.0 * eps)),
        ]
    )
    lhs, lhs_err = st.jump
    w2, w2_err = st.w2
    lln_limit = float(np.sum(p * (np.sqrt(v) - 1.0) ** 2))
    trivial = rep.D <= max(rep.D_err, 0.0) or w2 <= w2_err
    if trivial:
        rhs, rhs_err = 0.0, 0.0
    else:
        rhs = const * w2 ** (2.0 * eps) * rep.D / (s1_sq * ratio_sum**eps)
        rhs_err = rhs * (2.0 * eps * w2_err / w2 + rep.D_err / max(rep.D, 1e-300))
    asymptotic = 2.0**-15 * lln_limit / (s1_sq * float(np.sum(p * (v / s1_sq) ** 3))) * rep.D
    return BoundCertificate.build(
        "MixtureExample",
        st.profile,
        lhs=lhs,
        rhs=rhs,
        tolerance=lhs_err + rhs_err,
        direction="lower",
        epsilon=eps,
        constant=const,
        error_budget={"lhs": lhs_err, "rhs": rhs_err},
        metadata={
            "w2_sq": w2 * w2,
            "lln_limit": lln_limit,
            "w2_sq_over_limit": (w2 * w2 / lln_limit) if lln_limit > 0 else None,
            "sigma1_sq": s1_sq,
            "asymptotic_rhs_2pow15": asymptotic,
            "trivial": trivial,
        },
    )


# -- battery ---------------------------------------------------------------------

_PER_EPS = ("FisherJump", "EntropyJump", "EntropyJumpNoReg", "LsiReg")
_SINGLE = (
    "LsiNoReg",
    "ImprovedStam",
    "ImprovedLsi",
    "MixtureExample",
    "DvLemma",
    "ChiMoment",
    "D_vs_deficit",
)


def run_battery(
    profile: RadialProfile,
    checks: Sequence[str] = ("all",),
    eps_grid: Sequence[float] = DEFAULT_EPS_GRID,
    lsi_eps_grid: Sequence[float] = LSI_EPS_GRID,
    t_grid: Sequence[float] = (0.1, 0.5, 1.0),
    c: Optional[float] = None,
    scheme: QuadratureScheme = None,
    mc_samples: int = 0,
    mc_seed: int = 0,
):
    """Run the requested certificate battery on one profile.

    ``checks`` is a list of check names or ("all",); MixtureExample is
    skipped for non-analytic profiles when requested via "all".  Returns the
    certificates in canonical (check, eps) order.
    """
    want_all = "all" in checks
    known = set(_PER_EPS) | set(_SINGLE)
    explicit = set(checks) - {"all"}
    unknown = explicit - known
    if unknown:
        raise ConfigError(f"unknown checks: {sorted(unknown)}")
    want = known if want_all else explicit
    st = ProfileStudy(profile, scheme)
    out = []
    for e in eps_grid:
        if "FisherJump" in want:
            out.append(certify_fisher_jump(profile, c=c, eps=float(e), study=st))
        if "EntropyJump" in want:
            out.append(certify_entropy_jump(profile, c=c, eps=float(e), study=st))
        if "EntropyJumpNoReg" in want:
            out.append(certify_entropy_jump_noreg(profile, eps=float(e), study=st))
        if "LsiReg" in want:
            out.append(certify_lsi(profile, eps=float(e), mode="reg", c=c, study=st))
    if "LsiNoReg" in want:
        out.append(certify_lsi(profile, mode="noreg", eps_grid=lsi_eps_grid, study=st))
    if "ImprovedStam" in want:
        out.append(certify_improved_stam(profile, study=st))
    if "ImprovedLsi" in want:
        out.append(certify_improved_lsi(profile, study=st))
    if "MixtureExample" in want:
        if st.profile.is_analytic:
            out.append(certify_mixture_example(st.profile, eps=1.0, study=st))
        elif not want_all:
            raise ConfigError("MixtureExample requires an analytic mixture profile")
    if "DvLemma" in want:
        mc = (
            landau_production_mc(st.profile, n_samples=mc_samples, seed=mc_seed)
            if mc_samples > 0
            else None
        )
        out.append(check_dv_lemma(st.profile, mc=mc))
    if "ChiMoment" in want:
        out.append(chi_moment_check(st.profile, t_grid=tuple(t_grid)))
    if "D_vs_deficit" in want:
        out.append(certify_d_vs_deficit(profile, study=st))
    order = {n: i for i, n in enumerate(CHECK_NAMES)}
    out.sort(key=lambda cert: (order[cert.name], cert.epsilon if cert.epsilon is not None else -1.0))
    return out
