"""Scenario parameters and channel/symbol sampling for the full-duplex link.

The base station has ``M`` antennas shared between transmit and receive
(circulator interfacing) and serves ``K`` single-antenna full-duplex users.
One :class:`ChannelRealization` bundles everything a single Monte Carlo
trial needs:

* ``G``        - M x K user channel, Rayleigh small-scale times sqrt of the
                 per-user large-scale gains ``beta_k``.
* ``Gs_bar``   - M x M deterministic direct-path self-interference coupling
                 at the BS; every entry equals ``c_direct`` (worst case of a
                 uniform coupling bound).
* ``Gs_tilde`` - M x M random reflected-path SI at the BS, entry variance
                 ``beta_si``.
* ``Gs_prime`` - K x K user-side SI matrix, entries
                 ``c_prime + a * h`` with ``h ~ CN(0,1)``.
* ``x_u, x_d`` - unit-variance uplink/downlink symbol vectors.
* ``n, n_d``   - unit-variance receiver noise at the BS / at the users.

Sampling of one realization splits the cell's random stream into one
substream per component group, so e.g. a downlink-only study may skip the
(expensive, M x M) BS SI draws without disturbing any other component's
values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ParameterError
from .numerics import RngStream, cscg_sample

__all__ = [
    "SCHEME_ZF",
    "SCHEME_MRT",
    "SCHEMES",
    "SystemParams",
    "ChannelRealization",
    "sample_user_channel",
    "sample_si_channel",
    "sample_downlink_si_channel",
    "sample_symbols",
    "sample_realization",
]

SCHEME_ZF = "zf"
SCHEME_MRT = "mrt"  # MRT precoding downlink paired with MRC decoding uplink
SCHEMES = (SCHEME_ZF, SCHEME_MRT)

CONVENTION_SQRT = "sqrt_beta_prime"
CONVENTION_LITERAL = "beta_prime"

# Substream indices used by sample_realization (fixed; part of the
# reproducibility contract).
_SUB_USER = 0
_SUB_BS_SI = 1
_SUB_UE_SI = 2
_SUB_SYMBOLS = 3


@dataclass(frozen=True)
class SystemParams:
    """All scenario constants for one simulated configuration.

    Powers and fading coefficients are linear (convert dB once, at the
    edge).  ``beta_k`` holds the per-user large-scale gains; ``beta_si``
    and ``beta_prime`` are the reflected-path SI gains at the BS and the
    user side.  ``c_direct`` / ``c_prime`` are the direct-path coupling
    amplitudes (a single scalar applied uniformly, lacking per-pair data).

    Model-convention switches:

    * ``downlink_si_uses_uplink_power`` - scale the user-side SI term by
      sqrt(p_u) (off by default: the default convention treats the SI
      amplitude as already absorbed into the coupling coefficients, which
      is the reading that matches the reference crossing points).
    * ``ue_reflected_amplitude_convention`` - the random part of a
      user-side SI entry is ``a * h`` with ``a = sqrt(beta_prime)``
      (default, entry variance beta_prime, consistent with the uplink
      D^{1/2} convention) or ``a = beta_prime`` (literal amplitude).
    """

    M: int
    K: int
    p_u: float
    p_d: float
    beta_k: tuple[float, ...]
    beta_si: float
    c_direct: complex
    c_prime: complex
    beta_prime: float
    scheme: str = SCHEME_ZF
    downlink_si_uses_uplink_power: bool = False
    ue_reflected_amplitude_convention: str = CONVENTION_SQRT

    def __post_init__(self):
        object.__setattr__(self, "beta_k", tuple(float(b) for b in self.beta_k))
        object.__setattr__(self, "c_direct", complex(self.c_direct))
        object.__setattr__(self, "c_prime", complex(self.c_prime))
        if self.K < 1:
            raise ParameterError(f"K must be >= 1, got {self.K}")
        if self.M < 1:
            raise ParameterError(f"M must be >= 1, got {self.M}")
        # ZF inverts a K x K Gram matrix of an M x K channel and its power
        # normalization vanishes at M = K, so it needs strictly more
        # antennas than users; matched filtering (MRT/MRC) does not.
        if self.scheme == SCHEME_ZF and self.M <= self.K:
            raise ParameterError(
                f"ZF requires M > K, got M={self.M}, K={self.K}"
            )
        if len(self.beta_k) != self.K:
            raise ParameterError(
                f"beta_k must have K={self.K} entries, got {len(self.beta_k)}"
            )
        if any(b <= 0 for b in self.beta_k):
            raise ParameterError("all beta_k entries must be > 0")
        # p_u/p_d and the SI gains may be zero to switch a path off entirely.
        if self.p_u < 0 or self.p_d < 0:
            raise ParameterError("p_u and p_d must be >= 0")
        if self.beta_si < 0 or self.beta_prime < 0:
            raise ParameterError("beta_si and beta_prime must be >= 0")
        if self.scheme not in SCHEMES:
            raise ParameterError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.ue_reflected_amplitude_convention not in (
            CONVENTION_SQRT,
            CONVENTION_LITERAL,
        ):
            raise ParameterError(
                "ue_reflected_amplitude_convention must be "
                f"{CONVENTION_SQRT!r} or {CONVENTION_LITERAL!r}"
            )

    @property
    def beta_vector(self) -> np.ndarray:
        """Large-scale gains as a length-K array."""
        return np.asarray(self.beta_k, dtype=np.float64)

    @property
    def ue_reflected_amplitude(self) -> float:
        """Amplitude multiplying the random part of a user-side SI entry."""
        if self.ue_reflected_amplitude_convention == CONVENTION_SQRT:
            return float(np.sqrt(self.beta_prime))
        return float(self.beta_prime)


@dataclass(frozen=True)
class ChannelRealization:
    """One joint draw of all channels, symbols, and noise for a trial.

    ``Gs_bar``/``Gs_tilde`` are ``None`` only when the draw explicitly
    skipped the BS SI components (downlink-only studies); uplink processing
    rejects such realizations.
    """

    G: np.ndarray
    Gs_bar: Optional[np.ndarray]
    Gs_tilde: Optional[np.ndarray]
    Gs_prime: np.ndarray
    x_u: np.ndarray
    x_d: np.ndarray
    n: np.ndarray
    n_d: np.ndarray


def sample_user_channel(params: SystemParams, rng: RngStream) -> np.ndarray:
    """Draw the M x K user channel: CN(0,1) small-scale fading scaled by
    sqrt(beta_k) per column."""
    h = cscg_sample(rng, params.M, params.K)
    return h * np.sqrt(params.beta_vector)[None, :]


def sample_si_channel(
    params: SystemParams, rng: RngStream
) -> tuple[np.ndarray, np.ndarray]:
    """Draw the BS self-interference pair (direct, reflected).

    The direct path is deterministic: an all-equal M x M matrix of value
    ``c_direct`` (uniform worst-case coupling).  The reflected path has
    i.i.d. CN(0, beta_si) entries.
    """
    m = params.M
    gs_bar = np.full((m, m), params.c_direct, dtype=np.complex128)
    gs_tilde = cscg_sample(rng, m, m) * np.sqrt(params.beta_si)
    return gs_bar, gs_tilde


def sample_downlink_si_channel(params: SystemParams, rng: RngStream) -> np.ndarray:
    """Draw the K x K user-side SI matrix: ``c_prime + a * CN(0,1)`` with
    ``a`` set by the amplitude convention flag."""
    k = params.K
    h = cscg_sample(rng, k, k)
    return params.c_prime + params.ue_reflected_amplitude * h


def sample_symbols(
    params: SystemParams, rng: RngStream
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Draw unit-variance symbol and noise vectors (x_u, x_d, n, n_d).

    All entries are i.i.d. CN(0,1); drawn in that fixed order.  Symbols use
    a Gaussian codebook, which realizes the declared identity covariance.
    """
    x_u = cscg_sample(rng, params.K, 1)[:, 0]
    x_d = cscg_sample(rng, params.K, 1)[:, 0]
    n = cscg_sample(rng, params.M, 1)[:, 0]
    n_d = cscg_sample(rng, params.K, 1)[:, 0]
    return x_u, x_d, n, n_d


def sample_realization(
    params: SystemParams, stream: RngStream, with_bs_si: bool = True
) -> ChannelRealization:
    """Draw one full :class:`ChannelRealization` from a cell stream.

    Each component group consumes its own derived substream, so skipping
    the BS SI draws (``with_bs_si=False``, useful for downlink-only sweeps
    where the M x M matrices are never read) leaves every other component
    bit-identical.
    """
    g = sample_user_channel(params, stream.derive(_SUB_USER))
    if with_bs_si:
        gs_bar, gs_tilde = sample_si_channel(params, stream.derive(_SUB_BS_SI))
    else:
        gs_bar, gs_tilde = None, None
    gs_prime = sample_downlink_si_channel(params, stream.derive(_SUB_UE_SI))
    x_u, x_d, n, n_d = sample_symbols(params, stream.derive(_SUB_SYMBOLS))
    return ChannelRealization(
        G=g,
        Gs_bar=gs_bar,
        Gs_tilde=gs_tilde,
        Gs_prime=gs_prime,
        x_u=x_u,
        x_d=x_d,
        n=n,
        n_d=n_d,
    )
