import numpy as np
import pytest

import carmahf as chf
from carmahf import CarmaModel, FactorizationError
from carmahf.factorization import innovations_check, reconstruct_acvf

from conftest import corpus, random_stable_model


class TestSpectralFactorize:
    def test_ma1_known(self):
        # gamma of MA(1) with theta = 0.5, tau2 = 2: (2.5, 1.0)
        theta, tau2 = chf.spectral_factorize([2.5, 1.0])
        assert theta == pytest.approx([0.5], rel=1e-10)
        assert tau2 == pytest.approx(2.0, rel=1e-10)

    def test_white_noise(self):
        theta, tau2 = chf.spectral_factorize([3.0])
        assert len(theta) == 0
        assert tau2 == 3.0

    def test_trailing_zero_reduces_order(self):
        theta, tau2 = chf.spectral_factorize([2.5, 1.0, 0.0])
        assert theta == pytest.approx([0.5], rel=1e-10)

    def test_roundtrip_random_invertible(self):
        rng = np.random.default_rng(41)
        for _ in range(10):
            m = int(rng.integers(1, 5))
            # invertible theta built from roots outside the unit disk
            roots = []
            while len(roots) < m:
                if m - len(roots) >= 2 and rng.random() < 0.5:
                    r = rng.uniform(1.2, 3.0)
                    ang = rng.uniform(0.2, np.pi - 0.2)
                    roots += [r * np.exp(1j * ang), r * np.exp(-1j * ang)]
                else:
                    roots.append(rng.uniform(1.2, 3.0) * rng.choice([-1.0, 1.0]))
            theta_true = np.real(np.poly(1.0 / np.array(roots, dtype=complex)))[1:]
            tau2_true = float(rng.uniform(0.5, 2.0))
            gamma = reconstruct_acvf(theta_true, tau2_true)
            theta, tau2 = chf.spectral_factorize(gamma)
            assert np.allclose(theta, theta_true, atol=1e-8)
            assert tau2 == pytest.approx(tau2_true, rel=1e-8)

    def test_invertibility_invariant(self):
        rng = np.random.default_rng(43)
        for _ in range(10):
            m = random_stable_model(rng)
            d = rng.uniform(0.02, 0.4)
            arma = chf.sampled_arma(m, d)
            if arma.theta:
                z = np.roots([1.0] + list(arma.theta))
                assert np.max(np.abs(z)) <= 1.0 + 1e-7

    def test_not_psd(self):
        with pytest.raises(FactorizationError) as exc:
            chf.spectral_factorize([1.0, 1.1])
        assert exc.value.reason == "not_psd"

    def test_nonpositive_gamma0(self):
        with pytest.raises(FactorizationError):
            chf.spectral_factorize([-1.0, 0.1])

    def test_boundary_root_warns(self):
        # gamma of (1 - B) white noise: unit-circle spectral root
        with pytest.warns(UserWarning, match="boundary"):
            theta, tau2 = chf.spectral_factorize([2.0, -1.0])
        assert theta == pytest.approx([-1.0], abs=1e-6)
        assert tau2 == pytest.approx(1.0, rel=1e-6)


class TestInnovationsOracle:
    def test_agreement_on_corpus(self):
        for m in corpus():
            for d in (0.05, 0.2):
                arma = chf.sampled_arma(m, d)
                cov = chf.acvf_filtered_sequence(m, d)
                assert innovations_check(cov, arma.theta, arma.tau2) < 1e-8

    def test_detects_wrong_factorization(self):
        cov = [2.5, 1.0]
        assert innovations_check(cov, [0.9], 2.5 / 1.81) > 1e-2


class TestSampledArma:
    def test_car1(self, ou):
        d = 0.1
        arma = chf.sampled_arma(ou, d)
        assert arma.phi == pytest.approx([1.0, -np.exp(-d)], rel=1e-12)
        assert arma.theta == ()
        assert arma.tau2 == pytest.approx(0.5 * (1 - np.exp(-2 * d)), rel=1e-10)

    def test_carma21_small_delta_limits(self, carma21):
        # d = p - q = 1: theta(B) -> (1 - B)^q, tau2 ~ sigma2 * delta
        arma = chf.sampled_arma(carma21, 0.001)
        assert arma.theta[0] == pytest.approx(-1.0, abs=0.01)
        assert arma.tau2 / (carma21.sigma2 * 0.001) == pytest.approx(1.0, abs=0.01)

    def test_carma20_small_delta_limits(self, carma20):
        # d = 2: theta -> 2 - sqrt(3), tau2 -> (2 + sqrt(3))/6 sigma2 delta^3
        lim = chf.limit_ma_model(2)
        arma = chf.sampled_arma(carma20, 0.001)
        assert arma.theta[0] == pytest.approx(lim.theta[0], abs=0.01)
        assert arma.tau2 / (carma20.sigma2 * 0.001**3) == pytest.approx(
            lim.tau2_scale, rel=0.01
        )

    def test_reconstruction_residual(self):
        for m in corpus():
            d = 0.1
            arma = chf.sampled_arma(m, d)
            cov = chf.acvf_filtered_sequence(m, d)
            assert chf.reconstruction_residual(arma, cov) < 1e-10

    def test_repeated_ar_roots_supported(self):
        m = CarmaModel([2.0, 1.0], [1.0])
        arma = chf.sampled_arma(m, 0.05)
        cov = chf.acvf_filtered_sequence(m, 0.05)
        assert chf.reconstruction_residual(arma, cov) < 1e-9
