import numpy as np
import pytest

from radjump import (
    CHECK_NAMES,
    ConfigError,
    GaussianMixtureSpec,
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
    fisher_dissipation,
    gaussian_profile,
    k_eps,
    mixture_profile,
    relative_fisher,
    run_battery,
)


class TestConstants:
    def test_standard_gaussian_value(self):
        # eps = 1, c = 1, d = 2: (1/8) / (8 * 2)^2 * m1^2 / m3^3 collapses to
        # the rational number 4/98304 for the standard Gaussian in the plane
        got = k_eps(gaussian_profile(2, 1.0), c=1.0, eps=1.0)
        assert got == pytest.approx(4.0 / 98304.0, rel=1e-12)

    @pytest.mark.parametrize("eps", [0.5, 1.0, 2.0])
    def test_k_eps_scaling_law(self, workhorse3, eps):
        # K_eps(tX, c/t^2) = t^{2 eps} K_eps(X, c)
        t, c = 3.0, 1.7
        base = k_eps(workhorse3, c=c, eps=eps)
        scaled = k_eps(workhorse3.scale(t), c=c / t**2, eps=eps)
        assert scaled == pytest.approx(t ** (2 * eps) * base, rel=1e-10)

    @pytest.mark.parametrize("eps", [0.5, 1.0, 2.0])
    def test_c_tilde_scale_invariance(self, workhorse3, eps):
        # t^{4 eps} C~_eps(tX) = C~_eps(X)
        t = 3.0
        base = c_tilde_eps(workhorse3, eps=eps)
        scaled = c_tilde_eps(workhorse3.scale(t), eps=eps)
        assert t ** (4 * eps) * scaled == pytest.approx(base, rel=1e-10)

    def test_positive_and_finite_on_corpus(self, corpus_mixtures):
        for name, prof in corpus_mixtures[:4]:
            for eps in (0.5, 1.0, 2.0):
                for fn in (lambda p: k_eps(p, 1.0, eps), lambda p: c_eps(p, 1.0, eps), lambda p: c_tilde_eps(p, eps)):
                    val = fn(prof)
                    assert np.isfinite(val) and val > 0, name

    def test_domain_errors(self, workhorse):
        with pytest.raises(ConfigError):
            k_eps(workhorse, c=1.0, eps=0.0)
        with pytest.raises(ConfigError):
            k_eps(workhorse, c=-1.0, eps=1.0)
        with pytest.raises(ConfigError):
            c_tilde_eps(workhorse, eps=-0.5)


class TestCertificateScaling:
    def test_both_sides_scale_inverse_quadratically(self, workhorse):
        # under X -> tX with c -> c/t^2, both sides of the Fisher-jump
        # display carry the factor t^{-2}
        t, c, eps = 3.0, 2.0, 1.0
        scaled = workhorse.scale(t)
        lhs_base, _ = fisher_dissipation(workhorse)
        lhs_scaled, _ = fisher_dissipation(scaled)
        assert lhs_scaled == pytest.approx(lhs_base / t**2, rel=1e-6)
        I_base, _ = relative_fisher(workhorse)
        I_scaled, _ = relative_fisher(scaled)
        rhs_base = k_eps(workhorse, c=c, eps=eps) * I_base ** (1 + eps)
        rhs_scaled = k_eps(scaled, c=c / t**2, eps=eps) * I_scaled ** (1 + eps)
        assert rhs_scaled == pytest.approx(rhs_base / t**2, rel=1e-6)


class TestFisherJump:
    def test_workhorse_passes(self, workhorse):
        cert = certify_fisher_jump(workhorse, eps=1.0)
        assert cert.name == "FisherJump"
        assert cert.passed
        assert cert.epsilon == 1.0
        assert cert.lhs > cert.rhs > 0

    def test_explicit_c_is_used(self, workhorse):
        cert = certify_fisher_jump(workhorse, c=2.0, eps=1.0)
        assert cert.c_used == pytest.approx(2.0)

    def test_gaussian_trivial_path(self):
        cert = certify_fisher_jump(gaussian_profile(3, 1.0), eps=1.0)
        assert cert.passed
        assert cert.rhs == 0.0


class TestEntropyJump:
    def test_workhorse_passes(self, workhorse):
        for cert in (
            certify_entropy_jump(workhorse, eps=1.0),
            certify_entropy_jump_noreg(workhorse, eps=1.0),
        ):
            assert cert.passed
            assert cert.lhs == pytest.approx(0.017544270876228563, abs=1e-8)

    def test_noreg_needs_no_c(self, workhorse):
        cert = certify_entropy_jump_noreg(workhorse, eps=0.5)
        assert cert.c_used is None


class TestLsi:
    def test_noreg_picks_best_eps(self, workhorse):
        cert = certify_lsi(workhorse, mode="noreg")
        assert cert.name == "LsiNoReg"
        assert cert.passed
        assert cert.epsilon in (0.25, 0.5, 1.0, 2.0, 4.0)

    def test_reg_mode(self, workhorse):
        cert = certify_lsi(workhorse, eps=1.0, mode="reg")
        assert cert.name == "LsiReg"
        assert cert.passed

    def test_reg_mode_requires_eps(self, workhorse):
        with pytest.raises(ConfigError):
            certify_lsi(workhorse, mode="reg")

    def test_unknown_mode(self, workhorse):
        with pytest.raises(ConfigError):
            certify_lsi(workhorse, mode="strong")


class TestImproved:
    def test_stam_strict_on_mixture(self, workhorse):
        cert = certify_improved_stam(workhorse)
        assert cert.passed
        assert cert.lhs > 1.0  # N J / d > 1 strictly off the Gaussian
        assert cert.rhs >= 1.0

    def test_stam_tight_on_gaussian(self):
        cert = certify_improved_stam(gaussian_profile(2, 1.0))
        assert cert.passed
        assert cert.lhs == pytest.approx(1.0, abs=1e-6)
        assert cert.rhs == pytest.approx(1.0, abs=1e-6)

    def test_improved_lsi(self, workhorse):
        cert = certify_improved_lsi(workhorse)
        assert cert.passed
        assert cert.lhs > 0


class TestDvsDeficit:
    def test_workhorse(self, workhorse):
        cert = certify_d_vs_deficit(workhorse)
        assert cert.passed
        assert cert.metadata["rhs_nominal"] >= cert.lhs

    def test_gaussian_degenerate(self):
        cert = certify_d_vs_deficit(gaussian_profile(2, 1.0))
        assert cert.passed


class TestMixtureExample:
    def test_spec_entry_point(self):
        spec = GaussianMixtureSpec((0.5, 0.5), (0.5, 1.5))
        cert = certify_mixture_example(spec, d=2, eps=1.0)
        assert cert.name == "MixtureExample"
        assert cert.passed
        assert cert.metadata["sigma1_sq"] == pytest.approx(0.5)
        assert cert.metadata["lln_limit"] == pytest.approx(
            0.5 * (np.sqrt(0.5) - 1) ** 2 + 0.5 * (np.sqrt(1.5) - 1) ** 2, rel=1e-12
        )
        assert cert.metadata["asymptotic_rhs_2pow15"] > 0

    def test_profile_entry_point(self, workhorse):
        cert = certify_mixture_example(workhorse)
        assert cert.passed

    def test_rejects_tabulated(self, gaussian_tab2):
        with pytest.raises(ConfigError):
            certify_mixture_example(gaussian_tab2)

    def test_requires_dimension_for_spec(self):
        with pytest.raises(ConfigError):
            certify_mixture_example(GaussianMixtureSpec((1.0,), (1.0,)))


class TestBattery:
    def test_all_checks_on_workhorse(self, workhorse):
        certs = run_battery(workhorse, checks=("all",), mc_samples=50_000, mc_seed=3)
        assert all(c.passed for c in certs)
        names = {c.name for c in certs}
        assert names == set(CHECK_NAMES)
        # canonical order: grouped by check, ascending eps within a check
        keys = [(c.name, c.epsilon) for c in certs]
        assert keys == sorted(keys, key=lambda k: (CHECK_NAMES.index(k[0]), k[1] if k[1] is not None else -1))

    def test_normalization_invariance(self, workhorse):
        base = run_battery(workhorse, checks=("FisherJump", "ImprovedStam"))
        scaled = run_battery(workhorse.scale(2.0), checks=("FisherJump", "ImprovedStam"))
        for a, b in zip(base, scaled):
            assert a.name == b.name
            assert b.lhs == pytest.approx(a.lhs, rel=1e-12, abs=1e-15)
            assert b.rhs == pytest.approx(a.rhs, rel=1e-12, abs=1e-15)

    def test_unknown_check_rejected(self, workhorse):
        with pytest.raises(ConfigError):
            run_battery(workhorse, checks=("FisherJump", "Bogus"))

    def test_mixture_example_skipped_for_tables_under_all(self, gaussian_tab2):
        certs = run_battery(gaussian_tab2, checks=("all",))
        assert "MixtureExample" not in {c.name for c in certs}

    def test_mixture_example_explicit_raises_for_tables(self, gaussian_tab2):
        with pytest.raises(ConfigError):
            run_battery(gaussian_tab2, checks=("MixtureExample",))

    def test_gaussian_battery_trivial_paths(self):
        certs = run_battery(gaussian_profile(2, 1.0), checks=("all",))
        assert all(c.passed for c in certs)


class TestStudyCaching:
    def test_shared_study_reuses_ingredients(self, workhorse):
        st = ProfileStudy(workhorse)
        a = certify_fisher_jump(workhorse, eps=1.0, study=st)
        b = certify_fisher_jump(workhorse, eps=2.0, study=st)
        assert a.passed and b.passed
        assert a.lhs == b.lhs  # same cached dissipation
