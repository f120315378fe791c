import numpy as np
import pytest

from fdmimo.channel import (
    CONVENTION_LITERAL,
    SCHEME_MRT,
    SCHEME_ZF,
    SystemParams,
    sample_downlink_si_channel,
    sample_realization,
    sample_si_channel,
    sample_symbols,
    sample_user_channel,
)
from fdmimo.errors import ParameterError, ShapeError
from fdmimo.numerics import RngStream, frobenius_norm


def make_params(**overrides):
    defaults = dict(
        M=64,
        K=4,
        p_u=10.0,
        p_d=10.0**1.3,
        beta_k=(0.1, 0.1, 0.1, 0.1),
        beta_si=0.8,
        c_direct=0.5,
        c_prime=0.6,
        beta_prime=0.7,
        scheme=SCHEME_ZF,
    )
    defaults.update(overrides)
    return SystemParams(**defaults)


class TestSystemParams:
    def test_m_must_exceed_k(self):
        with pytest.raises(ParameterError):
            make_params(M=4, K=4)

    def test_beta_k_length(self):
        with pytest.raises(ParameterError):
            make_params(beta_k=(0.1, 0.1))

    def test_beta_k_positive(self):
        with pytest.raises(ParameterError):
            make_params(beta_k=(0.1, 0.1, 0.0, 0.1))

    def test_negative_power_rejected(self):
        with pytest.raises(ParameterError):
            make_params(p_u=-1.0)

    def test_zero_power_allowed(self):
        assert make_params(p_d=0.0).p_d == 0.0

    def test_unknown_scheme(self):
        with pytest.raises(ParameterError):
            make_params(scheme="dirty")

    def test_reflected_amplitude_conventions(self):
        sqrt_conv = make_params(beta_prime=0.49)
        assert sqrt_conv.ue_reflected_amplitude == pytest.approx(0.7)
        literal = make_params(
            beta_prime=0.49, ue_reflected_amplitude_convention=CONVENTION_LITERAL
        )
        assert literal.ue_reflected_amplitude == pytest.approx(0.49)


class TestUserChannel:
    def test_unit_beta_matches_small_scale_variance(self):
        # 1e4 entries per column across draws: column variance within 3%
        params = make_params(M=100, K=4, beta_k=(1.0,) * 4)
        acc = [
            np.mean(np.abs(sample_user_channel(params, RngStream(3, (s,)))) ** 2, axis=0)
            for s in range(100)
        ]
        assert np.allclose(np.mean(acc, axis=0), 1.0, atol=0.03)

    def test_entry_variance_at_default_fading(self):
        # beta_k = 0.1 -> E|g|^2 in [0.097, 0.103] over 1e5 entries
        params = make_params(M=2500, K=10, beta_k=(0.1,) * 10)
        g = sample_user_channel(params, RngStream(4))
        assert g.size == 25_000
        acc = [np.mean(np.abs(g) ** 2)]
        for s in range(1, 4):
            g = sample_user_channel(params, RngStream(4, (s,)))
            acc.append(np.mean(np.abs(g) ** 2))
        assert 0.097 <= np.mean(acc) <= 0.103

    def test_reproducible(self):
        params = make_params()
        a = sample_user_channel(params, RngStream(11))
        b = sample_user_channel(params, RngStream(11))
        assert np.array_equal(a, b)


class TestBsSiChannel:
    def test_zero_coupling_gives_zero_direct(self):
        params = make_params(c_direct=0.0)
        gs_bar, _ = sample_si_channel(params, RngStream(1))
        assert np.all(gs_bar == 0)

    def test_direct_is_all_equal_and_deterministic(self):
        params = make_params(c_direct=0.5 + 0.25j)
        bar1, _ = sample_si_channel(params, RngStream(1))
        bar2, _ = sample_si_channel(params, RngStream(99))
        assert np.all(bar1 == 0.5 + 0.25j)
        assert np.array_equal(bar1, bar2)

    def test_direct_trace_scaling(self):
        # all-equal matrix: tr(B B^H) = M^2 |c|^2 exactly
        params = make_params(M=37, c_direct=0.5)
        gs_bar, _ = sample_si_channel(params, RngStream(1))
        tr = np.trace(gs_bar @ gs_bar.conj().T)
        assert tr.real == pytest.approx(37**2 * 0.25, rel=1e-12)
        assert tr.imag == pytest.approx(0.0, abs=1e-12)

    def test_reflected_entry_variance(self):
        # beta_si = 0.8 -> E|entry|^2 in [0.776, 0.824] over ~1e5 entries
        params = make_params(M=320, K=4)
        _, gs_tilde = sample_si_channel(params, RngStream(2))
        assert gs_tilde.size >= 100_000
        assert 0.776 <= np.mean(np.abs(gs_tilde) ** 2) <= 0.824


class TestUserSiChannel:
    def test_deterministic_when_no_reflection(self):
        params = make_params(beta_prime=0.0, c_prime=0.6)
        gp = sample_downlink_si_channel(params, RngStream(5))
        assert np.all(gp == 0.6)

    def test_default_convention_variance(self):
        # variance beta_prime = 0.7 under the sqrt convention
        params = make_params(K=100, M=101, beta_k=(0.1,) * 100, c_prime=0.0)
        draws = [
            sample_downlink_si_channel(params, RngStream(6, (s,))) for s in range(10)
        ]
        var = np.mean([np.mean(np.abs(d) ** 2) for d in draws])
        assert 0.679 <= var <= 0.721

    def test_literal_convention_variance(self):
        # amplitude beta_prime -> variance beta_prime^2 = 0.49
        params = make_params(
            K=100,
            M=101,
            beta_k=(0.1,) * 100,
            c_prime=0.0,
            ue_reflected_amplitude_convention=CONVENTION_LITERAL,
        )
        draws = [
            sample_downlink_si_channel(params, RngStream(6, (s,))) for s in range(10)
        ]
        var = np.mean([np.mean(np.abs(d) ** 2) for d in draws])
        assert var == pytest.approx(0.49, rel=0.05)


class TestSymbols:
    def test_uplink_symbol_covariance(self):
        params = make_params()
        outer = np.zeros((4, 4), dtype=complex)
        n_draws = 10_000
        rng = RngStream(7)
        for t in range(n_draws):
            x_u, _, _, _ = sample_symbols(params, rng.derive(t))
            outer += np.outer(x_u, x_u.conj())
        outer /= n_draws
        assert np.max(np.abs(outer - np.eye(4))) < 0.03

    def test_noise_unit_variance(self):
        params = make_params(M=512)
        _, _, n, n_d = sample_symbols(params, RngStream(8))
        draws = [n]
        for s in range(1, 40):
            draws.append(sample_symbols(params, RngStream(8, (s,)))[2])
        level = np.mean([np.mean(np.abs(d) ** 2) for d in draws])
        assert 0.97 <= level <= 1.03
        assert n_d.shape == (4,)

    def test_determinism(self):
        params = make_params()
        a = sample_symbols(params, RngStream(9))
        b = sample_symbols(params, RngStream(9))
        for x, y in zip(a, b):
            assert np.array_equal(x, y)


class TestRealization:
    def test_shapes(self):
        params = make_params(M=16, K=3, beta_k=(0.1, 0.2, 0.3))
        real = sample_realization(params, RngStream(10))
        assert real.G.shape == (16, 3)
        assert real.Gs_bar.shape == (16, 16)
        assert real.Gs_tilde.shape == (16, 16)
        assert real.Gs_prime.shape == (3, 3)
        assert real.x_u.shape == (3,)
        assert real.x_d.shape == (3,)
        assert real.n.shape == (16,)
        assert real.n_d.shape == (3,)

    def test_skipping_bs_si_keeps_other_components(self):
        params = make_params()
        full = sample_realization(params, RngStream(12))
        slim = sample_realization(params, RngStream(12), with_bs_si=False)
        assert slim.Gs_bar is None and slim.Gs_tilde is None
        assert np.array_equal(full.G, slim.G)
        assert np.array_equal(full.Gs_prime, slim.Gs_prime)
        assert np.array_equal(full.x_u, slim.x_u)
        assert np.array_equal(full.n_d, slim.n_d)

    def test_orthogonality_improves_with_m(self):
        # ||G^H G / M - D|| shrinks like 1/sqrt(M); 4x in M halves the median
        params_small = make_params(M=256)
        params_big = make_params(M=1024)
        devs = {256: [], 1024: []}
        for s in range(100):
            for m, params in ((256, params_small), (1024, params_big)):
                g = sample_user_channel(params, RngStream(13, (m, s)))
                d = np.diag(params.beta_vector)
                devs[m].append(frobenius_norm(g.conj().T @ g / m - d))
        ratio = np.median(devs[256]) / np.median(devs[1024])
        assert 1.6 <= ratio <= 2.6
