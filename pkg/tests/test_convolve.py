"""Convolution maps are checked against closed-form mixture algebra and
against independently integrated reference values (adaptive Gauss-Kronrod on
the closed-form densities; no shared code with the package quadrature)."""

import numpy as np
import pytest

from radjump import (
    ConfigError,
    entropy,
    entropy_jump,
    fisher,
    fisher_dissipation,
    gaussian_profile,
    gaussian_smooth,
    mixture_profile,
    ou_evolve,
    relative_fisher,
    self_convolve_rescaled,
    tabulated_profile,
)

# d=2, weights (1/2, 1/2), variances (1/2, 3/2); see test_functionals for how
# the reference numbers were derived
ORACLE = {
    "entropy_jump": 0.017544270876228563,
    "fisher_dissipation": 0.13667168700031196,
    "h_conv": 2.831339406115078,
    "h_t025": 2.8343083199581285,
    "J_t025": 2.027115999795292,
}


class TestCrossCheck:
    @pytest.mark.parametrize(
        "d,w,v",
        [
            (2, (0.5, 0.5), (0.5, 1.5)),
            (3, (0.3, 0.7), (0.4, 1.2571428571428571)),
            (8, (0.25, 0.5, 0.25), (0.5, 1.0, 1.5)),
        ],
    )
    def test_self_convolution_matches_mixture_algebra(self, d, w, v):
        res = self_convolve_rescaled(mixture_profile(d, w, v))
        assert res.exact is not None
        assert res.sup_error <= 1e-7
        assert res.mass_error < 1e-8
        assert res.second_moment_error < 1e-9

    def test_pair_component_algebra(self, workhorse):
        res = self_convolve_rescaled(workhorse)
        mix = res.exact.mixture
        assert mix.weights == pytest.approx((0.25, 0.5, 0.25), abs=1e-15)
        assert mix.variances == pytest.approx((0.5, 1.0, 1.5), abs=1e-15)

    def test_gauss_jacobi_route_matches_exact(self, workhorse):
        # same density through the interpolated path exercises the angular rule
        r = np.linspace(0.0, workhorse.r_max, 2501)
        tab = tabulated_profile(2, r, workhorse.phi(r))
        res = self_convolve_rescaled(tab)
        assert res.method["route"] == "gauss_jacobi"
        exact = self_convolve_rescaled(workhorse).exact
        grid = res.output.grid_r
        assert np.max(np.abs(res.output.phi(grid) - exact.phi(grid))) < 1e-9

    def test_gaussian_is_fixed_point(self):
        res = self_convolve_rescaled(gaussian_profile(3, 1.0))
        assert res.exact.mixture.variances == pytest.approx((1.0,), abs=1e-15)
        h_in, _ = entropy(gaussian_profile(3, 1.0))
        h_out, _ = entropy(res.best_profile())
        assert abs(h_out - h_in) < 1e-9


class TestJumpFunctionals:
    def test_entropy_jump_oracle(self, workhorse):
        conv = self_convolve_rescaled(workhorse)
        jump, err = entropy_jump(workhorse, conv=conv)
        assert abs(jump - ORACLE["entropy_jump"]) <= max(err, 1e-9)
        h_w, _ = entropy(conv.best_profile())
        assert abs(h_w - ORACLE["h_conv"]) < 1e-8

    def test_fisher_dissipation_oracle(self, workhorse):
        diss, err = fisher_dissipation(workhorse)
        assert abs(diss - ORACLE["fisher_dissipation"]) <= max(err, 1e-9)
        assert abs(diss - ORACLE["fisher_dissipation"]) < 1e-9

    def test_jump_through_interpolated_path(self, workhorse):
        r = np.linspace(0.0, workhorse.r_max, 2501)
        tab = tabulated_profile(2, r, workhorse.phi(r))
        jump, err = entropy_jump(tab)
        assert abs(jump - ORACLE["entropy_jump"]) <= max(3 * err, 1e-9)

    def test_jump_nonnegative_for_gaussian(self):
        jump, err = entropy_jump(gaussian_profile(2, 1.0))
        assert abs(jump) < 1e-6
        diss, _ = fisher_dissipation(gaussian_profile(2, 1.0))
        assert abs(diss) < 1e-6


class TestOuFlow:
    def test_frozen_evolute_values(self, workhorse):
        ev = ou_evolve(workhorse, 0.25)
        assert ev.sup_error <= 1e-7
        h, _ = entropy(ev.best_profile())
        J, _ = fisher(ev.best_profile())
        assert abs(h - ORACLE["h_t025"]) < 1e-9
        assert abs(J - ORACLE["J_t025"]) < 1e-9

    def test_second_moment_preserved(self, workhorse):
        for t in (0.1, 0.7):
            ev = ou_evolve(workhorse, t, cross_check=False)
            assert ev.best_profile().moment(2.0) == pytest.approx(
                workhorse.moment(2.0), rel=1e-12
            )

    def test_t_zero_is_identity(self, workhorse):
        ev = ou_evolve(workhorse, 0.0)
        assert ev.method["route"] == "identity"
        assert ev.best_profile() is workhorse

    def test_semigroup_composition(self, workhorse):
        once = ou_evolve(workhorse, 0.2, cross_check=False).best_profile()
        twice = ou_evolve(once, 0.3, cross_check=False).best_profile()
        direct = ou_evolve(workhorse, 0.5, cross_check=False).best_profile()
        assert twice.mixture.variances == pytest.approx(direct.mixture.variances, rel=1e-13)
        assert twice.mixture.weights == pytest.approx(direct.mixture.weights, rel=1e-13)

    def test_gaussian_is_stationary(self):
        ev = ou_evolve(gaussian_profile(3, 2.0), 0.4, cross_check=False)
        assert ev.best_profile().mixture.variances == pytest.approx((2.0,), rel=1e-13)

    def test_de_bruijn_identity(self, workhorse):
        # d/dt D(X_t | G) = -I(X_t | G) along the matched OU flow
        from radjump import relative_entropy

        t, dt = 0.1, 1e-3
        D_plus, _ = relative_entropy(ou_evolve(workhorse, t + dt, cross_check=False).best_profile())
        D_minus, _ = relative_entropy(ou_evolve(workhorse, t - dt, cross_check=False).best_profile())
        I_t, _ = relative_fisher(ou_evolve(workhorse, t, cross_check=False).best_profile())
        deriv = (D_plus - D_minus) / (2.0 * dt)
        assert abs(deriv + I_t) / I_t < 1e-3

    @pytest.mark.parametrize("t", [0.0, 0.25])
    @pytest.mark.parametrize("s", [0.1, 0.5])
    def test_exponential_fisher_decay(self, workhorse, t, s):
        start = workhorse if t == 0.0 else ou_evolve(workhorse, t, cross_check=False).best_profile()
        I_t, _ = relative_fisher(start)
        I_ts, _ = relative_fisher(ou_evolve(workhorse, t + s, cross_check=False).best_profile())
        assert I_ts <= np.exp(-2.0 * s) * I_t + 1e-8

    def test_rejects_negative_time(self, workhorse):
        with pytest.raises(ConfigError):
            ou_evolve(workhorse, -0.1)


class TestMollification:
    def test_exact_variance_shift(self, workhorse):
        res = gaussian_smooth(workhorse, 0.5)
        assert res.exact.mixture.variances == pytest.approx((1.0, 2.0), rel=1e-13)
        assert res.sup_error <= 1e-7

    def test_second_moment_additive(self, workhorse):
        res = gaussian_smooth(workhorse, 0.5, cross_check=False)
        want = workhorse.moment(2.0) + 2 * 0.5
        assert res.best_profile().moment(2.0) == pytest.approx(want, rel=1e-12)

    def test_rejects_bad_variance(self, workhorse):
        with pytest.raises(ConfigError):
            gaussian_smooth(workhorse, 0.0)
        with pytest.raises(ConfigError):
            gaussian_smooth(workhorse, float("nan"))
