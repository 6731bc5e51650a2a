"""Radially symmetric densities on R^d and the quadrature rules that reduce them.

Conventions used throughout the package:

* A density f on R^d (d >= 2) is *radial* if f(x) = phi(|x|); ``phi`` is the
  radial profile.  Every d-dimensional integral of a radial integrand reduces
  to one dimension through

      int_{R^d} g(|x|) dx  =  S_{d-1} int_0^inf r^{d-1} g(r) dr,

  with S_{d-1} = 2 pi^{d/2} / Gamma(d/2) the surface area of the unit sphere.

* The score of a radial density is rho(x) = grad log f(x) = psi(|x|) x/|x|
  with psi = phi'/phi, defined wherever phi > 0.

* Angular integrals over the sphere reduce to the cosine u of the polar angle
  with weight (1-u^2)^{(d-3)/2} on [-1,1]; Gauss-Jacobi rules with
  alpha = beta = (d-3)/2 integrate that weight exactly.

Profiles come in two kinds: analytic centered Gaussian mixtures (closed-form
moments, scores, CDFs) and tabulated profiles (values on a radial grid,
interpolated as a cubic in log phi and treated as identically zero beyond the
last grid point).  Both expose the same evaluation surface so the functional
and convolution layers never branch on kind for their quadrature.
"""

import hashlib
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.typing import NDArray
from scipy.interpolate import CubicSpline, PchipInterpolator
from scipy.special import (
    gammainc,
    gammaincc,
    gammainccinv,
    gammaincinv,
    gammaln,
    logsumexp,
    roots_jacobi,
    roots_legendre,
)

from .errors import (
    ConfigError,
    DivergentMoment,
    NegativeDensity,
    QuantileInversionFailure,
    VanishingDensity,
    ZeroMass,
)
from .precision import quad_sum

__all__ = [
    "TAIL_TOL",
    "NORM_TOL",
    "DENSITY_FLOOR",
    "sphere_area",
    "angular_weight_total",
    "QuadratureScheme",
    "DEFAULT_SCHEME",
    "GaussianMixtureSpec",
    "RadialProfile",
    "gaussian_profile",
    "mixture_profile",
    "tabulated_profile",
    "profile_from_literal",
    "normalize",
    "moment_norm",
    "score_radial",
    "chi_quantile",
    "gaussian_rmax",
]

# Truncation / normalization budgets.  tail_tol bounds the mass discarded when
# an analytic profile is truncated to [0, r_max]; norm_tol is the acceptable
# residual after normalize().
TAIL_TOL = 1e-12
NORM_TOL = 1e-8
DENSITY_FLOOR = 1e-300

_PANEL_RATIO = 0.8  # geometric panel refinement toward r = 0


def sphere_area(d: int) -> float:
    """Surface area of the unit sphere S^{d-1} in R^d."""
    return float(np.exp(np.log(2.0) + 0.5 * d * np.log(np.pi) - gammaln(0.5 * d)))


def angular_weight_total(d: int) -> float:
    """int_{-1}^{1} (1-u^2)^{(d-3)/2} du = S_{d-1} / S_{d-2}."""
    return float(np.exp(0.5 * np.log(np.pi) + gammaln(0.5 * (d - 1)) - gammaln(0.5 * d)))


def chi_quantile(d: int, q) -> float:
    """Quantile of |G| for a standard Gaussian G in R^d."""
    return np.sqrt(2.0 * gammaincinv(0.5 * d, q))


def gaussian_rmax(d: int, variance: float, tail: float = TAIL_TOL) -> float:
    """Radius beyond which a centered Gaussian of given variance has < tail mass."""
    return float(np.sqrt(variance * 2.0 * gammainccinv(0.5 * d, tail)))


@lru_cache(maxsize=128)
def _legendre(order: int):
    x, w = roots_legendre(order)
    return np.asarray(x), np.asarray(w)


@lru_cache(maxsize=128)
def _jacobi(order: int, d: int):
    a = 0.5 * (d - 3)
    x, w = roots_jacobi(order, a, a)
    return np.asarray(x), np.asarray(w)


@dataclass(frozen=True)
class QuadratureScheme:
    """Resolution knobs for every quadrature in the package.

    Radial integrals use composite Gauss-Legendre panels on [0, r_max] with
    panel widths shrinking geometrically toward 0; angular integrals use
    Gauss-Jacobi nodes for the (1-u^2)^{(d-3)/2} weight.  Error estimates are
    two-resolution: recompute with ``refined()`` and report the difference.
    """

    radial_panels: int = 24
    radial_order: int = 20
    angular_order: int = 48
    w2_nodes: int = 4096
    refine_factor: float = 1.5

    def radial_rule(self, r_max: float, factor: float = 1.0):
        """Composite Gauss-Legendre nodes/weights on [0, r_max]."""
        if not (r_max > 0.0 and np.isfinite(r_max)):
            raise ConfigError(f"radial rule needs finite r_max > 0, got {r_max}")
        n_panels = max(4, int(round(self.radial_panels * factor)))
        order = max(6, int(round(self.radial_order * factor)))
        edges = np.empty(n_panels + 1)
        edges[0] = 0.0
        edges[1:] = r_max * _PANEL_RATIO ** np.arange(n_panels - 1, -1, -1)
        x, w = _legendre(order)
        lo = edges[:-1][:, None]
        half = 0.5 * (edges[1:] - edges[:-1])[:, None]
        nodes = (lo + half * (x[None, :] + 1.0)).ravel()
        weights = (half * w[None, :]).ravel()
        return nodes, weights

    def angular_rule(self, d: int, factor: float = 1.0):
        order = max(4, int(round(self.angular_order * factor)))
        return _jacobi(order, d)

    def refined(self) -> "QuadratureScheme":
        f = self.refine_factor
        return QuadratureScheme(
            radial_panels=int(round(self.radial_panels * f)),
            radial_order=int(round(self.radial_order * f)),
            angular_order=int(round(self.angular_order * f)),
            w2_nodes=2 * self.w2_nodes,
            refine_factor=f,
        )

    def output_grid(self, r_max: float) -> NDArray[np.float64]:
        """Monotone grid following the panel structure, for tabulating results."""
        n_panels = max(4, int(self.radial_panels))
        per_panel = max(8, int(self.radial_order))
        edges = np.empty(n_panels + 1)
        edges[0] = 0.0
        edges[1:] = r_max * _PANEL_RATIO ** np.arange(n_panels - 1, -1, -1)
        pieces = [np.linspace(edges[i], edges[i + 1], per_panel, endpoint=False) for i in range(n_panels)]
        grid = np.concatenate(pieces + [np.array([r_max])])
        return np.unique(grid)


DEFAULT_SCHEME = QuadratureScheme()


@dataclass(frozen=True)
class GaussianMixtureSpec:
    """Centered Gaussian mixture Sum_i p_i N(0, sigma_i^2 I_d).

    Weights are renormalized to sum exactly to 1 on construction and the
    components are sorted by ascending variance, so equal mixtures have equal
    specs regardless of input order.
    """

    weights: tuple
    variances: tuple

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        v = np.asarray(self.variances, dtype=float)
        if w.ndim != 1 or v.ndim != 1 or w.size != v.size or w.size == 0:
            raise ConfigError("mixture weights/variances must be equal-length nonempty vectors")
        if np.any(~np.isfinite(w)) or np.any(~np.isfinite(v)):
            raise ConfigError("mixture weights/variances must be finite")
        if np.any(w <= 0.0):
            raise ConfigError(f"mixture weights must be positive, got {self.weights}")
        if np.any(v <= 0.0):
            raise ConfigError(f"mixture variances must be positive, got {self.variances}")
        order = np.argsort(v, kind="stable")
        w = w[order]
        v = v[order]
        w = w / quad_sum(w)
        object.__setattr__(self, "weights", tuple(float(x) for x in w))
        object.__setattr__(self, "variances", tuple(float(x) for x in v))

    @property
    def n_components(self) -> int:
        return len(self.weights)


class RadialProfile:
    """A radial density profile phi(|x|) on R^d.

    Exactly one of ``mixture`` (analytic Gaussian mixture) or a tabulated grid
    is set.  Tabulated profiles interpolate log phi with a cubic (or linear,
    ``interp_order=1``) interpolant on [0, r_max] and are identically zero
    beyond r_max; analytic profiles are truncated to a closed-form r_max whose
    discarded tail mass is below ``TAIL_TOL``.

    Moments are reported for the *law* phi/mass, so they are well defined for
    unnormalized tables; :func:`normalize` rescales to unit mass.
    """

    def __init__(
        self,
        dim: int,
        *,
        mixture: Optional[GaussianMixtureSpec] = None,
        grid_r: Optional[NDArray] = None,
        grid_phi: Optional[NDArray] = None,
        interp_order: int = 3,
        scheme: QuadratureScheme = DEFAULT_SCHEME,
    ):
        if not isinstance(dim, (int, np.integer)) or dim < 2 or dim > 64:
            raise ConfigError(f"dimension must be an integer in [2, 64], got {dim!r}")
        self.dim = int(dim)
        self.scheme = scheme
        self.mixture = mixture
        self.interp_order = int(interp_order)
        if (mixture is None) == (grid_r is None):
            raise ConfigError("profile needs exactly one of a mixture spec or a table")

        if mixture is not None:
            self.grid_r = None
            self.grid_phi = None
            self._init_mixture()
        else:
            self._init_table(np.asarray(grid_r, dtype=float), np.asarray(grid_phi, dtype=float))

        self._moment_cache = {}

    # -- construction ------------------------------------------------------

    def _init_mixture(self):
        mix = self.mixture
        d = self.dim
        w = np.asarray(mix.weights)
        v = np.asarray(mix.variances)
        # truncation radius: total closed-form tail mass below TAIL_TOL
        hi = float(np.max(np.sqrt(v * 2.0 * gammainccinv(0.5 * d, TAIL_TOL / mix.n_components))))

        def tail(R):
            return float(np.dot(w, gammaincc(0.5 * d, R * R / (2.0 * v))))

        lo = float(np.sqrt(np.max(v) * d))
        R = hi
        if tail(lo) > TAIL_TOL:
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                if tail(mid) > TAIL_TOL:
                    lo = mid
                else:
                    hi = mid
            R = hi
        self.r_max = R
        self.mass = 1.0
        self.mass_err = 0.0
        self._log_w = np.log(w) - 0.5 * d * np.log(2.0 * np.pi * v)

    def _init_table(self, r, phi):
        if r.ndim != 1 or phi.ndim != 1 or r.size != phi.size or r.size < 8:
            raise ConfigError("tabulated profile needs matching r/phi vectors with >= 8 points")
        if np.any(~np.isfinite(r)) or np.any(~np.isfinite(phi)):
            raise ConfigError("tabulated profile values must be finite")
        if np.any(np.diff(r) <= 0.0):
            raise ConfigError("tabulated radii must be strictly increasing")
        if abs(r[0]) > 1e-12 * r[-1]:
            raise ConfigError(f"tabulated grid must start at r=0, got r[0]={r[0]}")
        if np.any(phi < 0.0):
            i = int(np.argmin(phi))
            raise NegativeDensity(f"phi[{i}] = {phi[i]} < 0 at r = {r[i]}")
        # trailing zeros define the support edge; interior zeros are not interpolable
        nz = np.nonzero(phi > 0.0)[0]
        if nz.size < 8:
            raise ZeroMass("tabulated profile has fewer than 8 positive values")
        last = nz[-1]
        r, phi = r[: last + 1], phi[: last + 1]
        if np.any(phi <= 0.0):
            j = int(np.nonzero(phi <= 0.0)[0][0])
            raise VanishingDensity(f"interior zero density at r = {r[j]}")
        r = r.copy()
        r[0] = 0.0
        if self.interp_order not in (1, 3):
            raise ConfigError(f"interp_order must be 1 or 3, got {self.interp_order}")
        self.grid_r = r
        self.grid_phi = phi
        self.r_max = float(r[-1])
        log_phi = np.log(phi)
        if self.interp_order == 3:
            self._log_interp = CubicSpline(r, log_phi, bc_type="not-a-knot")
            self._log_interp_d1 = self._log_interp.derivative()
        else:
            self._log_interp = None
            self._slopes = np.diff(log_phi) / np.diff(r)
        nodes, weights = self.scheme.radial_rule(self.r_max)
        nodes_f, weights_f = self.scheme.refined().radial_rule(self.r_max)
        sd = sphere_area(self.dim)
        m = sd * quad_sum(weights * nodes ** (self.dim - 1) * self.phi(nodes))
        m_f = sd * quad_sum(weights_f * nodes_f ** (self.dim - 1) * self.phi(nodes_f))
        if not (m_f > 0.0) or not np.isfinite(m_f):
            raise ZeroMass(f"tabulated profile mass = {m_f}")
        self.mass = float(m_f)
        self.mass_err = abs(m_f - m)

    # -- evaluation --------------------------------------------------------

    def phi(self, r):
        """Profile value phi(r); zero beyond r_max. Vectorized."""
        r = np.asarray(r, dtype=float)
        if self.mixture is not None:
            v = np.asarray(self.mixture.variances)
            z = self._log_w[:, None] - (r.ravel()[None, :] ** 2) / (2.0 * v[:, None])
            out = np.exp(logsumexp(z, axis=0)).reshape(r.shape)
            return out if out.ndim else float(out)
        out = np.zeros_like(r, dtype=float)
        inside = (r >= 0.0) & (r <= self.r_max)
        if np.any(inside):
            ri = np.clip(r[inside], 0.0, self.r_max)
            out[inside] = np.exp(self._log_eval(ri))
        return out if out.ndim else float(out)

    def log_phi(self, r):
        """log phi(r); -inf beyond r_max."""
        r = np.asarray(r, dtype=float)
        if self.mixture is not None:
            v = np.asarray(self.mixture.variances)
            z = self._log_w[:, None] - (r.ravel()[None, :] ** 2) / (2.0 * v[:, None])
            out = logsumexp(z, axis=0).reshape(r.shape)
            return out if out.ndim else float(out)
        out = np.full(r.shape, -np.inf)
        inside = (r >= 0.0) & (r <= self.r_max)
        if np.any(inside):
            out[inside] = self._log_eval(np.clip(r[inside], 0.0, self.r_max))
        return out if out.ndim else float(out)

    def _log_eval(self, r):
        if self.interp_order == 3:
            return self._log_interp(r)
        idx = np.clip(np.searchsorted(self.grid_r, r, side="right") - 1, 0, len(self._slopes) - 1)
        return np.log(self.grid_phi[idx]) + self._slopes[idx] * (r - self.grid_r[idx])

    def score(self, r):
        """psi(r) = d/dr log phi(r); NaN where the density is below floor or outside support."""
        r = np.asarray(r, dtype=float)
        if self.mixture is not None:
            v = np.asarray(self.mixture.variances)
            z = self._log_w[:, None] - (r.ravel()[None, :] ** 2) / (2.0 * v[:, None])
            z -= logsumexp(z, axis=0, keepdims=True)
            comp = np.exp(z) * (-1.0 / v[:, None])
            out = (r.ravel() * comp.sum(axis=0)).reshape(r.shape)
            return out if out.ndim else float(out)
        out = np.full(r.shape, np.nan)
        inside = (r >= 0.0) & (r <= self.r_max)
        if np.any(inside):
            ri = np.clip(r[inside], 0.0, self.r_max)
            ok = self.phi(ri) >= DENSITY_FLOOR
            vals = np.full(ri.shape, np.nan)
            if self.interp_order == 3:
                vals[ok] = self._log_interp_d1(ri[ok])
            else:
                idx = np.clip(np.searchsorted(self.grid_r, ri[ok], side="right") - 1, 0, len(self._slopes) - 1)
                vals[ok] = self._slopes[idx]
            out[inside] = vals
        return out if out.ndim else float(out)

    # -- moments -----------------------------------------------------------

    def moment_with_err(self, k: float):
        """(E|X|^k, error estimate) for the law phi/mass."""
        key = float(k)
        if key in self._moment_cache:
            return self._moment_cache[key]
        d = self.dim
        if k <= -d:
            raise DivergentMoment(f"E|X|^k diverges at the origin for k = {k} <= -d")
        if self.mixture is not None:
            w = np.asarray(self.mixture.weights)
            v = np.asarray(self.mixture.variances)
            # E (sigma * chi_d)^k = sigma^k 2^{k/2} Gamma((d+k)/2) / Gamma(d/2)
            log_chi = 0.5 * k * np.log(2.0) + gammaln(0.5 * (d + k)) - gammaln(0.5 * d)
            val = float(quad_sum(w * np.exp(log_chi + 0.5 * k * np.log(v))))
            res = (val, 4.0 * np.finfo(float).eps * abs(val))
        else:
            sd = sphere_area(d)
            nodes, weights = self.scheme.radial_rule(self.r_max)
            nodes_f, weights_f = self.scheme.refined().radial_rule(self.r_max)
            raw = sd * quad_sum(weights * nodes ** (d - 1 + k) * self.phi(nodes))
            raw_f = sd * quad_sum(weights_f * nodes_f ** (d - 1 + k) * self.phi(nodes_f))
            val = raw_f / self.mass
            res = (float(val), abs(raw_f - raw) / self.mass + 1e-16 * abs(val))
        self._moment_cache[key] = res
        return res

    def moment(self, k: float) -> float:
        return self.moment_with_err(k)[0]

    @property
    def second_moment(self) -> float:
        return self.moment(2.0)

    @property
    def mean_radius(self) -> float:
        return self.moment(1.0)

    @property
    def matched_variance(self) -> float:
        """Per-coordinate variance E|X|^2 / d of the matched Gaussian."""
        return self.second_moment / self.dim

    def tail_mass(self, s: float) -> float:
        """Mass of the law beyond radius s (closed form for mixtures, 0 at r_max for tables)."""
        if self.mixture is not None:
            w = np.asarray(self.mixture.weights)
            v = np.asarray(self.mixture.variances)
            return float(np.dot(w, gammaincc(0.5 * self.dim, s * s / (2.0 * v))))
        if s >= self.r_max:
            return 0.0
        return 1.0 - self.cdf(s)

    # -- radial CDF / quantiles ---------------------------------------------

    def cdf(self, s):
        """P(|X| <= s) for the law phi/mass. Vectorized."""
        s = np.asarray(s, dtype=float)
        if self.mixture is not None:
            w = np.asarray(self.mixture.weights)
            v = np.asarray(self.mixture.variances)
            z = (s.ravel()[None, :] ** 2) / (2.0 * v[:, None])
            out = (w[:, None] * gammainc(0.5 * self.dim, z)).sum(axis=0).reshape(s.shape)
            return out if out.ndim else float(out)
        table_r, table_F = self._cdf_table()
        out = np.interp(s, table_r, table_F, left=0.0, right=1.0)
        return out if out.ndim else float(out)

    def _cdf_table(self):
        if getattr(self, "_cdf_cache", None) is None:
            d = self.dim
            sd = sphere_area(d)
            sch = self.scheme.refined()
            n_panels = max(4, int(round(sch.radial_panels)))
            edges = np.empty(n_panels + 1)
            edges[0] = 0.0
            edges[1:] = self.r_max * _PANEL_RATIO ** np.arange(n_panels - 1, -1, -1)
            # split every panel, integrate each piece with its own GL rule:
            # cumulative mass is then quadrature-exact at every fine edge
            sub = np.linspace(0.0, 1.0, 9)[None, :]
            fine_edges = np.unique((edges[:-1, None] + np.diff(edges)[:, None] * sub).ravel())
            x, w = _legendre(12)
            lo = fine_edges[:-1][:, None]
            half = 0.5 * np.diff(fine_edges)[:, None]
            nodes = lo + half * (x[None, :] + 1.0)
            dens = sd * nodes ** (d - 1) * self.phi(nodes) / self.mass
            seg = quad_sum(half * w[None, :] * dens, axis=1)
            csum = np.concatenate([[0.0], np.cumsum(seg)])
            F = np.maximum.accumulate(np.minimum(csum, 1.0))
            interp = PchipInterpolator(fine_edges, F)
            r_tab = np.linspace(0.0, self.r_max, 4097)
            F_tab = np.maximum.accumulate(np.clip(interp(r_tab), 0.0, 1.0))
            F_tab[-1] = max(F_tab[-1], 1.0 - 1e-15)
            self._cdf_cache = (r_tab, F_tab)
        return self._cdf_cache

    def quantile(self, q):
        """Inverse radial CDF. Vectorized, bisection to float precision."""
        q = np.asarray(q, dtype=float)
        if np.any((q <= 0.0) | (q >= 1.0)):
            raise QuantileInversionFailure("quantile arguments must lie strictly in (0,1)")
        if self.mixture is not None:
            v = np.asarray(self.mixture.variances)
            lo = np.zeros(q.shape)
            hi = np.full(q.shape, float(np.sqrt(2.0 * np.max(v) * gammainccinv(0.5 * self.dim, 1e-17))))
            for _ in range(110):
                mid = 0.5 * (lo + hi)
                high = self.cdf(mid) >= q
                hi = np.where(high, mid, hi)
                lo = np.where(high, lo, mid)
            out = 0.5 * (lo + hi)
            return out if out.ndim else float(out)
        table_r, table_F = self._cdf_table()
        keep = np.concatenate([[True], np.diff(table_F) > 0.0])
        rr, FF = table_r[keep], table_F[keep]
        out = np.interp(q, FF, rr)
        return out if out.ndim else float(out)

    # -- transforms ----------------------------------------------------------

    def scale(self, t: float) -> "RadialProfile":
        """Profile of tX (exact: pushforward of the law under x -> t x)."""
        if not (t > 0.0 and np.isfinite(t)):
            raise ConfigError(f"scale factor must be positive and finite, got {t}")
        if self.mixture is not None:
            mix = GaussianMixtureSpec(
                weights=self.mixture.weights,
                variances=tuple(t * t * s for s in self.mixture.variances),
            )
            return RadialProfile(self.dim, mixture=mix, scheme=self.scheme)
        return RadialProfile(
            self.dim,
            grid_r=self.grid_r * t,
            grid_phi=self.grid_phi / t ** self.dim,
            interp_order=self.interp_order,
            scheme=self.scheme,
        )

    # -- serialization -------------------------------------------------------

    def to_literal(self) -> dict:
        if self.mixture is not None:
            return {
                "type": "gaussian_mixture",
                "d": self.dim,
                "weights": list(self.mixture.weights),
                "variances": list(self.mixture.variances),
            }
        return {
            "type": "tabulated",
            "d": self.dim,
            "r": [float(x) for x in self.grid_r],
            "phi": [float(x) for x in self.grid_phi],
            "interp_order": self.interp_order,
        }

    @property
    def profile_id(self) -> str:
        blob = json.dumps(self.to_literal(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:12]

    @property
    def is_analytic(self) -> bool:
        return self.mixture is not None

    def __repr__(self):
        kind = "mixture" if self.is_analytic else f"tabulated[{len(self.grid_r)}]"
        return f"RadialProfile(d={self.dim}, {kind}, r_max={self.r_max:.3g})"


# -- constructors ------------------------------------------------------------


def gaussian_profile(d: int, variance: float = 1.0, scheme: QuadratureScheme = DEFAULT_SCHEME) -> RadialProfile:
    return RadialProfile(d, mixture=GaussianMixtureSpec((1.0,), (float(variance),)), scheme=scheme)


def mixture_profile(
    d: int,
    weights: Sequence[float],
    variances: Sequence[float],
    scheme: QuadratureScheme = DEFAULT_SCHEME,
) -> RadialProfile:
    return RadialProfile(d, mixture=GaussianMixtureSpec(tuple(weights), tuple(variances)), scheme=scheme)


def tabulated_profile(
    d: int,
    r: Sequence[float],
    phi: Sequence[float],
    interp_order: int = 3,
    scheme: QuadratureScheme = DEFAULT_SCHEME,
) -> RadialProfile:
    return RadialProfile(
        d,
        grid_r=np.asarray(r, dtype=float),
        grid_phi=np.asarray(phi, dtype=float),
        interp_order=interp_order,
        scheme=scheme,
    )


def profile_from_literal(literal: dict, scheme: QuadratureScheme = DEFAULT_SCHEME, where: str = "profile") -> RadialProfile:
    """Parse the JSON profile literal format.

    ``{"type": "gaussian_mixture", "d": 2, "weights": [...], "variances": [...]}``
    or ``{"type": "tabulated", "d": 3, "r": [...], "phi": [...]}`` (optional
    ``interp_order``, default 3).
    """
    if not isinstance(literal, dict):
        raise ConfigError(f"{where}: expected an object, got {type(literal).__name__}")
    kind = literal.get("type")
    if kind not in ("gaussian_mixture", "tabulated"):
        raise ConfigError(f"{where}.type: expected 'gaussian_mixture' or 'tabulated', got {kind!r}")
    d = literal.get("d")
    if not isinstance(d, int) or isinstance(d, bool):
        raise ConfigError(f"{where}.d: expected an integer dimension, got {d!r}")

    def _vector(name):
        vec = literal.get(name)
        if not isinstance(vec, (list, tuple)) or not vec:
            raise ConfigError(f"{where}.{name}: expected a nonempty array")
        for i, x in enumerate(vec):
            if not isinstance(x, (int, float)) or isinstance(x, bool) or not math.isfinite(x):
                raise ConfigError(f"{where}.{name}[{i}]: expected a finite number, got {x!r}")
        return [float(x) for x in vec]

    try:
        if kind == "gaussian_mixture":
            w = _vector("weights")
            v = _vector("variances")
            if len(w) != len(v):
                raise ConfigError(f"{where}: weights and variances must have equal length")
            for i, x in enumerate(w):
                if x <= 0:
                    raise ConfigError(f"{where}.weights[{i}]: must be positive, got {x}")
            for i, x in enumerate(v):
                if x <= 0:
                    raise ConfigError(f"{where}.variances[{i}]: must be positive, got {x}")
            return mixture_profile(d, w, v, scheme=scheme)
        r = _vector("r")
        phi = _vector("phi")
        order = literal.get("interp_order", 3)
        if order not in (1, 3):
            raise ConfigError(f"{where}.interp_order: must be 1 or 3, got {order!r}")
        return tabulated_profile(d, r, phi, interp_order=order, scheme=scheme)
    except (NegativeDensity, VanishingDensity, ZeroMass) as exc:
        raise ConfigError(f"{where}: {exc}") from exc


# -- module-level ops ---------------------------------------------------------


def normalize(profile: RadialProfile) -> RadialProfile:
    """Rescale a profile to unit mass.  Identity (same object) for analytic kinds."""
    if profile.is_analytic:
        return profile
    if abs(profile.mass - 1.0) <= 1e-14:
        return profile
    out = RadialProfile(
        profile.dim,
        grid_r=profile.grid_r,
        grid_phi=profile.grid_phi / profile.mass,
        interp_order=profile.interp_order,
        scheme=profile.scheme,
    )
    if abs(out.mass - 1.0) > NORM_TOL:
        raise ZeroMass(f"normalization residual {out.mass - 1.0:.3e} exceeds {NORM_TOL}")
    return out


def moment_norm(profile: RadialProfile, p: float) -> float:
    """|| |X|^2 ||_p = (E |X|^{2p})^{1/p} for p >= 1/2."""
    if not (p >= 0.5 and np.isfinite(p)):
        raise DivergentMoment(f"moment_norm requires p >= 1/2, got {p}")
    m, _ = profile.moment_with_err(2.0 * p)
    return float(m ** (1.0 / p))


def moment_norm_with_err(profile: RadialProfile, p: float):
    if not (p >= 0.5 and np.isfinite(p)):
        raise DivergentMoment(f"moment_norm requires p >= 1/2, got {p}")
    m, err = profile.moment_with_err(2.0 * p)
    val = m ** (1.0 / p)
    return float(val), float(val * err / (p * m)) if m > 0 else 0.0


def score_radial(profile: RadialProfile) -> Callable:
    """Return psi(r) = (log phi)'(r) as a vectorized callable.

    Radii where the density is below the representable floor (or outside the
    tabulated support) yield NaN; quadrature consumers mask those and charge
    the excluded mass to their error budget.
    """
    return profile.score
