import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import gammaln

from radjump import (
    ConfigError,
    GaussianMixtureSpec,
    RadialProfile,
    gaussian_profile,
    mixture_profile,
    normalize,
    profile_from_literal,
    tabulated_profile,
)
from radjump.radial_core import moment_norm

from conftest import gaussian_table


def chi_moment(d: int, k: float) -> float:
    # E |G|^k for a standard Gaussian in R^d
    return math.exp(0.5 * k * math.log(2.0) + gammaln(0.5 * (d + k)) - gammaln(0.5 * d))


class TestMoments:
    def test_mixture_second_moment_exact(self, workhorse):
        assert workhorse.moment(2.0) == pytest.approx(2.0, abs=1e-12)
        assert workhorse.matched_variance == pytest.approx(1.0, abs=1e-12)

    def test_mixture_moments_closed_form(self, workhorse):
        w = np.array([0.5, 0.5])
        v = np.array([0.5, 1.5])
        for k in (1.0, 3.0, 8.0):
            want = float(np.sum(w * v ** (0.5 * k))) * chi_moment(2, k)
            assert workhorse.moment(k) == pytest.approx(want, rel=1e-11)

    def test_frozen_first_and_eighth(self, workhorse):
        assert workhorse.moment(1.0) == pytest.approx(1.2106084936862453, rel=1e-11)
        assert workhorse.moment(8.0) == pytest.approx(984.0, rel=1e-11)

    @pytest.mark.parametrize("d,var", [(2, 1.0), (3, 0.5), (8, 2.0)])
    def test_gaussian_moments(self, d, var):
        prof = gaussian_profile(d, var)
        for k in (1.0, 2.0, 4.0):
            assert prof.moment(k) == pytest.approx(var ** (0.5 * k) * chi_moment(d, k), rel=1e-11)

    def test_moment_error_estimate_bounds_truth(self, workhorse):
        val, err = workhorse.moment_with_err(2.0)
        assert abs(val - 2.0) <= max(err, 1e-12)

    def test_tabulated_moments_match_analytic(self, gaussian_tab2):
        for k in (1.0, 2.0, 4.0):
            want = chi_moment(2, k)
            assert gaussian_tab2.moment(k) == pytest.approx(want, rel=1e-7)


class TestScore:
    @pytest.mark.parametrize("d,var", [(2, 1.0), (5, 0.5)])
    def test_gaussian_score_closed_form(self, d, var):
        prof = gaussian_profile(d, var)
        r = np.linspace(0.1, 4.0, 40)
        assert np.max(np.abs(prof.score(r) + r / var)) < 1e-11

    def test_mixture_score_is_logphi_derivative(self, workhorse):
        r = np.linspace(0.2, 4.0, 30)
        eps = 1e-6
        fd = (workhorse.log_phi(r + eps) - workhorse.log_phi(r - eps)) / (2 * eps)
        assert np.max(np.abs(workhorse.score(r) - fd)) < 1e-7

    def test_tabulated_score_matches_analytic(self, gaussian_tab2):
        r = np.linspace(0.3, 5.0, 25)
        assert np.max(np.abs(gaussian_tab2.score(r) + r)) < 1e-4


class TestNormalize:
    def test_analytic_is_identity(self, workhorse):
        assert normalize(workhorse) is workhorse

    def test_tabulated_rescales_mass(self):
        r = np.linspace(0.0, 8.0, 801)
        phi = 3.7 * np.exp(-r * r / 2.0)  # unnormalized
        prof = tabulated_profile(2, r, phi)
        out = normalize(prof)
        assert abs(out.mass - 1.0) < 1e-10
        assert normalize(out) is out  # idempotent
        # moments are law-level, so they agree before/after normalization
        assert prof.moment(2.0) == pytest.approx(out.moment(2.0), rel=1e-12)


class TestScale:
    def test_second_moment_scales_quadratically(self, workhorse):
        scaled = workhorse.scale(3.0)
        assert scaled.moment(2.0) == pytest.approx(9.0 * workhorse.moment(2.0), rel=1e-11)

    def test_scale_composes(self, workhorse):
        a = workhorse.scale(2.0).scale(0.5)
        assert a.moment(2.0) == pytest.approx(workhorse.moment(2.0), rel=1e-12)

    def test_tabulated_scale(self, gaussian_tab2):
        scaled = gaussian_tab2.scale(2.0)
        assert scaled.moment(2.0) == pytest.approx(4.0 * gaussian_tab2.moment(2.0), rel=1e-9)


class TestCdfQuantile:
    def test_mixture_roundtrip(self, workhorse):
        q = np.linspace(0.01, 0.99, 49)
        r = workhorse.quantile(q)
        assert np.all(np.diff(r) > 0)
        assert np.max(np.abs(workhorse.cdf(r) - q)) < 1e-9

    def test_mixture_cdf_closed_form_d2(self, workhorse):
        r = np.linspace(0.1, 5.0, 30)
        want = 1.0 - 0.5 * np.exp(-r * r / 1.0) - 0.5 * np.exp(-r * r / 3.0)
        assert np.max(np.abs(workhorse.cdf(r) - want)) < 1e-12

    def test_tabulated_roundtrip(self, gaussian_tab2):
        q = np.linspace(0.01, 0.99, 49)
        r = gaussian_tab2.quantile(q)
        assert np.all(np.diff(r) > 0)
        assert np.max(np.abs(gaussian_tab2.cdf(r) - q)) < 2e-4

    def test_tabulated_cdf_matches_analytic(self, gaussian_tab2):
        # regression for the cumulative table: compare against 1 - exp(-r^2/2)
        r = np.linspace(0.05, 6.0, 200)
        want = -np.expm1(-r * r / 2.0)
        assert np.max(np.abs(gaussian_tab2.cdf(r) - want)) < 5e-5


class TestLiterals:
    def test_roundtrip_mixture(self, workhorse):
        again = profile_from_literal(workhorse.to_literal())
        assert again.profile_id == workhorse.profile_id

    def test_roundtrip_tabulated(self, gaussian_tab2):
        again = profile_from_literal(gaussian_tab2.to_literal())
        assert again.profile_id == gaussian_tab2.profile_id

    def test_component_order_is_canonical(self):
        a = mixture_profile(3, (0.3, 0.7), (1.5, 0.5))
        b = mixture_profile(3, (0.7, 0.3), (0.5, 1.5))
        assert a.profile_id == b.profile_id

    @pytest.mark.parametrize(
        "literal,needle",
        [
            ({"type": "lognormal", "d": 2}, "profile.type"),
            ({"type": "gaussian_mixture", "d": 2.5, "weights": [1.0], "variances": [1.0]}, "profile.d"),
            ({"type": "gaussian_mixture", "d": 2, "weights": [-0.5, 1.5], "variances": [1.0, 2.0]}, "weights[0]"),
            ({"type": "gaussian_mixture", "d": 2, "weights": [0.5, 0.5], "variances": [1.0, 0.0]}, "variances[1]"),
            ({"type": "gaussian_mixture", "d": 2, "weights": [1.0], "variances": [1.0, 2.0]}, "equal length"),
            ({"type": "tabulated", "d": 2, "r": [], "phi": []}, "profile.r"),
            ({"type": "tabulated", "d": 2, "r": [0.0, 1.0], "phi": [1.0, float("nan")]}, "phi[1]"),
            ({"type": "tabulated", "d": 2, "r": [0.0, 1.0], "phi": [1.0, 0.5], "interp_order": 2}, "interp_order"),
        ],
    )
    def test_field_path_diagnostics(self, literal, needle):
        with pytest.raises(ConfigError, match=None) as exc_info:
            profile_from_literal(literal)
        assert needle in str(exc_info.value)

    def test_profile_id_shape(self, workhorse):
        pid = workhorse.profile_id
        assert len(pid) == 12
        int(pid, 16)


class TestValidation:
    def test_negative_density_rejected(self):
        r = np.linspace(0.0, 3.0, 31)
        phi = np.ones_like(r)
        phi[10] = -0.1
        with pytest.raises(Exception):
            tabulated_profile(2, r, phi)

    def test_nonmonotone_grid_rejected(self):
        with pytest.raises(Exception):
            tabulated_profile(2, [0.0, 2.0, 1.0], [1.0, 0.5, 0.2])

    def test_mixture_spec_rejects_bad_inputs(self):
        with pytest.raises(ConfigError):
            GaussianMixtureSpec((), ())
        with pytest.raises(ConfigError):
            GaussianMixtureSpec((1.0, -1.0), (1.0, 2.0))
        with pytest.raises(ConfigError):
            GaussianMixtureSpec((1.0,), (float("inf"),))


@st.composite
def small_mixtures(draw):
    n = draw(st.integers(min_value=1, max_value=3))
    weights = [draw(st.floats(0.05, 1.0)) for _ in range(n)]
    variances = [draw(st.floats(0.2, 3.0)) for _ in range(n)]
    d = draw(st.sampled_from([2, 3, 5, 8]))
    return d, tuple(weights), tuple(variances)


class TestProperties:
    @given(small_mixtures())
    @settings(max_examples=25, deadline=None)
    def test_moment_norms_are_monotone_in_p(self, spec):
        d, w, v = spec
        prof = mixture_profile(d, w, v)
        # power-mean inequality: p -> (E |X|^p)^{1/p} is nondecreasing
        norms = [moment_norm(prof, p) for p in (1.0, 2.0, 3.0, 4.0)]
        for lo, hi in zip(norms, norms[1:]):
            assert lo <= hi * (1 + 1e-10)

    @given(small_mixtures(), st.floats(0.25, 4.0))
    @settings(max_examples=25, deadline=None)
    def test_scaling_covariance(self, spec, t):
        d, w, v = spec
        prof = mixture_profile(d, w, v)
        assert prof.scale(t).moment(2.0) == pytest.approx(t * t * prof.moment(2.0), rel=1e-9)

    @given(small_mixtures())
    @settings(max_examples=25, deadline=None)
    def test_mass_is_unit(self, spec):
        d, w, v = spec
        prof = mixture_profile(d, w, v)
        assert prof.mass == pytest.approx(1.0, abs=1e-10)
