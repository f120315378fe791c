import numpy as np
import pytest

from fdmimo.asymptotics import (
    B_ALLEQUAL,
    B_IDENTITY,
    B_RANDOM_IID,
    LINK_DOWNLINK,
    LINK_UPLINK,
    PAIR_XBX,
    PAIR_XBY,
    DecaySeries,
    decoding_error_sweep,
    orthogonality_deviation,
    quadratic_form_decay_sweep,
    scaled_quadratic_form,
    si_projection_decay_sweep,
    si_projection_statistic,
)
from fdmimo.channel import (
    SCHEME_MRT,
    SCHEME_ZF,
    ChannelRealization,
    sample_realization,
    sample_si_channel,
    sample_user_channel,
)
from fdmimo.errors import ParameterError, ShapeError
from fdmimo.numerics import RngStream, cscg_sample
from fdmimo.processing import uplink_terms

from test_channel import make_params


class TestScaledQuadraticForm:
    def test_all_ones_identity(self):
        x = np.ones(100, dtype=complex)
        stat = scaled_quadratic_form(x, np.eye(100, dtype=complex))
        assert stat == pytest.approx(0.1, rel=1e-12)

    def test_all_ones_all_equal(self):
        x = np.ones(100, dtype=complex)
        stat = scaled_quadratic_form(x, np.ones((100, 100), dtype=complex))
        assert stat == pytest.approx(10.0, rel=1e-12)

    def test_zero_b(self):
        rng = RngStream(0)
        x = cscg_sample(rng, 50, 1)[:, 0]
        y = cscg_sample(rng, 50, 1)[:, 0]
        b = np.zeros((50, 50), dtype=complex)
        assert scaled_quadratic_form(x, b) == 0
        assert scaled_quadratic_form(x, b, y) == 0

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            scaled_quadratic_form(np.ones(4), np.eye(5))
        with pytest.raises(ShapeError):
            scaled_quadratic_form(np.ones(4), np.eye(4), np.ones(5))


class TestQuadraticFormDecay:
    def test_identity_rate(self):
        # conjugate pairing with B = I concentrates like 1/M: ratio of
        # medians across a 4x step in M should be about 4
        series = quadratic_form_decay_sweep(
            B_IDENTITY, PAIR_XBX, (256, 1024), 400, RngStream(101)
        )
        med = series.medians
        assert 2.5 <= med[0] / med[1] <= 6.5

    def test_all_equal_rate(self):
        # all-equal B decays like 1/sqrt(M): ratio about 2
        series = quadratic_form_decay_sweep(
            B_ALLEQUAL, PAIR_XBX, (256, 1024), 400, RngStream(102)
        )
        med = series.medians
        assert 1.5 <= med[0] / med[1] <= 2.7

    @pytest.mark.parametrize("kind", [B_IDENTITY, B_ALLEQUAL, B_RANDOM_IID])
    @pytest.mark.parametrize("pair", [PAIR_XBX, PAIR_XBY])
    def test_medians_strictly_decrease(self, kind, pair):
        series = quadratic_form_decay_sweep(
            kind, pair, (64, 256, 1024), 120, RngStream(103)
        )
        med = series.medians
        assert med[0] > med[1] > med[2]

    def test_unknown_pair(self):
        with pytest.raises(ParameterError):
            quadratic_form_decay_sweep(B_IDENTITY, "yBx", (16,), 5, RngStream(0))

    def test_unknown_kind(self):
        with pytest.raises(ParameterError):
            quadratic_form_decay_sweep("toeplitz", PAIR_XBX, (16,), 5, RngStream(0))


class TestSiProjection:
    def test_zero_component(self):
        params = make_params(M=16)
        g = sample_user_channel(params, RngStream(1))
        assert si_projection_statistic(g, np.zeros((16, 16), dtype=complex)) == 0.0

    def test_matches_explicit_double_sum(self):
        # brute-force oracle: g^H B g* summed entry by entry, K = 1
        params = make_params(M=24, K=1, beta_k=(0.1,))
        g = sample_user_channel(params, RngStream(2))[:, 0]
        gs_bar, _ = sample_si_channel(params, RngStream(3))
        total = 0.0 + 0.0j
        for i in range(24):
            for j in range(24):
                total += np.conj(g[i]) * gs_bar[i, j] * np.conj(g[j])
        expected = abs(total) / 24**1.5
        got = si_projection_statistic(g.reshape(-1, 1), gs_bar)
        assert got == pytest.approx(expected, rel=1e-10)

    def test_matches_triple_loop_multiuser(self):
        params = make_params(M=12, K=3, beta_k=(0.1, 0.2, 0.3))
        g = sample_user_channel(params, RngStream(4))
        _, gs_tilde = sample_si_channel(params, RngStream(5))
        proj = np.zeros((3, 3), dtype=complex)
        for a in range(3):
            for b in range(3):
                for i in range(12):
                    for j in range(12):
                        proj[a, b] += (
                            np.conj(g[i, a]) * gs_tilde[i, j] * np.conj(g[j, b])
                        )
        expected = np.sqrt(np.sum(np.abs(proj) ** 2)) / 12**1.5
        assert si_projection_statistic(g, gs_tilde) == pytest.approx(
            expected, rel=1e-10
        )

    def test_decay_under_strong_coupling(self):
        # c = 0.9, beta_si = 0.8: both components' medians shrink with M
        params = make_params(c_direct=0.9)
        direct, reflected = si_projection_decay_sweep(
            params, (256, 1024), 200, RngStream(6)
        )
        assert direct.medians[1] < direct.medians[0]
        assert reflected.medians[1] < reflected.medians[0]

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            si_projection_statistic(np.ones((8, 2)), np.eye(9))


class TestOrthogonalityDeviation:
    def test_exactly_orthogonal_columns(self):
        m, betas = 12, (0.1, 0.5, 1.0)
        params = make_params(M=m, K=3, beta_k=betas)
        g = np.zeros((m, 3), dtype=complex)
        for k in range(3):
            g[k::3, k] = np.sqrt(m * betas[k] / 4)  # 4 nonzero rows per column
        gram = g.T @ np.conj(g)
        assert np.allclose(gram, np.diag(np.array(betas) * m))
        assert orthogonality_deviation(g, params) < 1e-10

    def test_single_user_reduces_to_scalar(self):
        params = make_params(M=32, K=1, beta_k=(1.0,))
        g = sample_user_channel(params, RngStream(7))
        scalar = abs(np.sum(g[:, 0] * np.conj(g[:, 0])) / 32 - 1.0)
        assert orthogonality_deviation(g, params) == pytest.approx(scalar, rel=1e-12)

    def test_inverse_sqrt_m_rate(self):
        medians = {}
        for m in (256, 1024):
            params = make_params(M=m)
            devs = [
                orthogonality_deviation(
                    sample_user_channel(params, RngStream(8, (m, t))), params
                )
                for t in range(100)
            ]
            medians[m] = np.median(devs)
        assert 1.6 <= medians[256] / medians[1024] <= 2.6


class TestDecodingErrorSweep:
    def test_downlink_error_decreases(self):
        params = make_params()
        series = decoding_error_sweep(
            LINK_DOWNLINK, params, (64, 256, 1024), 60, RngStream(9)
        )
        med = series.medians
        assert med[0] > med[1] > med[2]

    @pytest.mark.parametrize("scheme", [SCHEME_ZF, SCHEME_MRT])
    def test_uplink_error_decreases(self, scheme):
        params = make_params(scheme=scheme)
        series = decoding_error_sweep(
            LINK_UPLINK, params, (64, 256), 40, RngStream(10)
        )
        med = series.medians
        assert med[0] > med[1]

    def test_zf_noise_only_error_matches_wishart_level(self):
        # with p_d = 0 the ZF uplink error is |w_k^T n|, whose mean square
        # is [(G^H G)^{-1}]_{kk} with expectation 1/((M－K) beta_k)
        m = 64
        params = make_params(M=m, p_d=0.0)
        series = decoding_error_sweep(LINK_UPLINK, params, (m,), 400, RngStream(11))
        observed_ms = float(np.mean(series.samples[0] ** 2))
        # mean over k of |..| then squared biases slightly low vs the per-user
        # mean square; compare against the raw level with a loose window
        level = 1.0 / ((m - 4) * 0.1)
        assert 0.4 * level < observed_ms < 1.2 * level

    def test_silent_system_decodes_exactly(self):
        # x_u = 0, p_d = 0, n = 0: the decoded uplink vector is exactly 0
        params = make_params(M=16, p_d=0.0)
        base = sample_realization(params, RngStream(12))
        real = ChannelRealization(
            G=base.G,
            Gs_bar=base.Gs_bar,
            Gs_tilde=base.Gs_tilde,
            Gs_prime=base.Gs_prime,
            x_u=np.zeros(4, dtype=complex),
            x_d=base.x_d,
            n=np.zeros(16, dtype=complex),
            n_d=base.n_d,
        )
        r = uplink_terms(real, params).total
        assert np.all(np.abs(r) == 0)

    def test_unknown_link(self):
        with pytest.raises(ParameterError):
            decoding_error_sweep("sidelink", make_params(), (16,), 5, RngStream(0))


class TestDecaySeries:
    def test_requires_ascending_m(self):
        with pytest.raises(ParameterError):
            DecaySeries("s", (64, 32), (np.ones(3), np.ones(3)))

    def test_requires_nonempty_rows(self):
        with pytest.raises(ParameterError):
            DecaySeries("s", (32, 64), (np.ones(3), np.array([])))

    def test_summary_quantiles(self):
        series = DecaySeries(
            "s", (8, 16), (np.array([1.0, 2.0, 3.0, 4.0]), np.array([0.5, 0.5]))
        )
        assert series.medians[0] == pytest.approx(2.5)
        assert series.upper_quartiles[0] == pytest.approx(3.25)
        assert series.medians[1] == pytest.approx(0.5)
