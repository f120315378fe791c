"""Linear precoding/decoding and exact per-user term decompositions.

Uplink receive chain (BS side)::

    y_BS = sqrt(p_u) G x_u + sqrt(p_d) (Gs_bar + Gs_tilde) A x_d + n
    r    = W^T y_BS

with precoder ``A`` and receiver ``W^T``:

    ZF :  A = a_zf  G* (G^T G*)^{-1}        W^T = (G^H G)^{-1} G^H
    MRT:  A = a_mrt G*                      W^T = G^H            (MRC)

The normalization factors make the precoded vector ``s = A x_d`` satisfy
E{s^H s} = 1:

    a_zf  = sqrt((M - K) / sum_k 1/beta_k)
    a_mrt = sqrt(1 / (M * sum_k beta_k))

Downlink receive (user side)::

    y_UE = sqrt(p_d) G^T A x_d + gamma * Gs_prime x_u + n_d

where ``gamma`` is sqrt(p_u) or 1 by the ``downlink_si_uses_uplink_power``
convention flag (default 1).

Both links are decomposed per user into desired / inter-user / direct-SI /
reflected-SI / noise contributions whose complex sum reconstructs the
decoded sample exactly; the monolithic compositions ``uplink_decode`` and
``downlink_receive`` are kept as independent cross-checks.  The
decomposition is evaluated at finite M (no asymptotic shortcuts) so that
power sweeps measure the actual quantities, with the large-M normalized
views (divide MRC uplink terms by M*beta_k, downlink terms by the
processing gain rho_k) available on top.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import SCHEME_MRT, SCHEME_ZF, ChannelRealization, SystemParams
from .errors import ParameterError, ShapeError
from .numerics import invert_small

__all__ = [
    "TermBreakdown",
    "normalization_factor",
    "build_precoder",
    "build_receiver",
    "uplink_terms",
    "downlink_terms",
    "uplink_decode",
    "downlink_receive",
    "processing_gain",
    "uplink_normalization",
    "downlink_si_scale",
]


@dataclass(frozen=True)
class TermBreakdown:
    """Per-user complex contributions of one decoded vector.

    Each field is a length-K array; ``total`` is their exact complex sum
    and reconstructs the decoded sample for each user.
    """

    desired: np.ndarray
    inter_user: np.ndarray
    si_direct: np.ndarray
    si_reflected: np.ndarray
    noise: np.ndarray

    @property
    def total(self) -> np.ndarray:
        return (
            self.desired
            + self.inter_user
            + self.si_direct
            + self.si_reflected
            + self.noise
        )

    def scaled(self, per_user_divisor: np.ndarray) -> "TermBreakdown":
        """Divide every term of every user by ``per_user_divisor`` (length K)."""
        d = np.asarray(per_user_divisor)
        return TermBreakdown(
            desired=self.desired / d,
            inter_user=self.inter_user / d,
            si_direct=self.si_direct / d,
            si_reflected=self.si_reflected / d,
            noise=self.noise / d,
        )


def normalization_factor(params: SystemParams) -> float:
    """Precoder power normalization (a_zf or a_mrt) for ``params.scheme``."""
    beta = params.beta_vector
    if params.scheme == SCHEME_ZF:
        if params.M <= params.K:
            raise ParameterError("ZF normalization requires M > K")
        return float(np.sqrt((params.M - params.K) / np.sum(1.0 / beta)))
    return float(np.sqrt(1.0 / (params.M * np.sum(beta))))


def build_precoder(g: np.ndarray, params: SystemParams) -> np.ndarray:
    """Build the M x K downlink precoder A for the configured scheme."""
    _check_channel_shape(g, params)
    alpha = normalization_factor(params)
    gc = np.conj(g)
    if params.scheme == SCHEME_ZF:
        return alpha * (gc @ invert_small(g.T @ gc))
    return alpha * gc


def build_receiver(g: np.ndarray, scheme: str) -> np.ndarray:
    """Build the K x M uplink receiver W^T (ZF or MRC)."""
    gh = g.conj().T
    if scheme == SCHEME_ZF:
        return invert_small(gh @ g) @ gh
    if scheme == SCHEME_MRT:
        return gh
    raise ParameterError(f"unknown scheme {scheme!r}")


def processing_gain(params: SystemParams) -> np.ndarray:
    """Effective desired-signal amplitude rho_k after linear processing.

    Length-K array: a_zf for every user under ZF, a_mrt * M * beta_k under
    MRT/MRC.  Grows as sqrt(M) in both cases.
    """
    alpha = normalization_factor(params)
    if params.scheme == SCHEME_ZF:
        return np.full(params.K, alpha)
    return alpha * params.M * params.beta_vector


def uplink_normalization(params: SystemParams) -> np.ndarray:
    """Per-user divisors for the normalized uplink view.

    ZF decodes at unit gain already (W^T G = I), so its view is the raw
    one; MRC terms are divided by M * beta_k, the scale at which the
    decoded sample converges to sqrt(p_u) x_u[k].
    """
    if params.scheme == SCHEME_ZF:
        return np.ones(params.K)
    return params.M * params.beta_vector


def downlink_si_scale(params: SystemParams) -> float:
    """Amplitude gamma applied to the user-side SI term of the downlink."""
    return float(np.sqrt(params.p_u)) if params.downlink_si_uses_uplink_power else 1.0


def uplink_terms(real: ChannelRealization, params: SystemParams) -> TermBreakdown:
    """Decompose the decoded uplink vector r = W^T y_BS per user.

    desired[k]      = sqrt(p_u) w_k^T g_k x_u[k]
    inter_user[k]   = sqrt(p_u) sum_{i != k} w_k^T g_i x_u[i]
    si_direct[k]    = sqrt(p_d) w_k^T Gs_bar  A x_d
    si_reflected[k] = sqrt(p_d) w_k^T Gs_tilde A x_d
    noise[k]        = w_k^T n

    ``w_k^T`` is row k of the receiver.  Raises :class:`ShapeError` if the
    realization was drawn without its BS SI components.
    """
    if real.Gs_bar is None or real.Gs_tilde is None:
        raise ShapeError("realization has no BS SI components (drawn downlink-only)")
    a = build_precoder(real.G, params)
    wt = build_receiver(real.G, params.scheme)
    sqrt_pu = np.sqrt(params.p_u)
    sqrt_pd = np.sqrt(params.p_d)

    wtg = wt @ real.G
    desired = sqrt_pu * np.diag(wtg) * real.x_u
    inter_user = sqrt_pu * (wtg @ real.x_u) - desired

    s = a @ real.x_d
    si_direct = sqrt_pd * (wt @ (real.Gs_bar @ s))
    si_reflected = sqrt_pd * (wt @ (real.Gs_tilde @ s))
    noise = wt @ real.n
    return TermBreakdown(desired, inter_user, si_direct, si_reflected, noise)


def downlink_terms(
    real: ChannelRealization, a: np.ndarray, params: SystemParams
) -> TermBreakdown:
    """Decompose the received downlink vector y_UE per user.

    desired[k]      = sqrt(p_d) (G^T A)_{kk} x_d[k]
    inter_user[k]   = sqrt(p_d) sum_{q != k} (G^T A)_{kq} x_d[q]
    si_direct[k]    = gamma * c_prime * sum_q x_u[q]
    si_reflected[k] = gamma * sum_q (Gs_prime - c_prime)_{kq} x_u[q]
    noise[k]        = n_d[k]

    The SI split separates the deterministic coupling (c_prime) from the
    random reflected part recovered as ``Gs_prime - c_prime``.
    """
    gta = real.G.T @ a
    sqrt_pd = np.sqrt(params.p_d)
    desired = sqrt_pd * np.diag(gta) * real.x_d
    inter_user = sqrt_pd * (gta @ real.x_d) - desired

    gamma = downlink_si_scale(params)
    reflected_part = real.Gs_prime - params.c_prime
    si_direct = gamma * params.c_prime * np.sum(real.x_u) * np.ones(params.K)
    si_reflected = gamma * (reflected_part @ real.x_u)
    noise = real.n_d.copy()
    return TermBreakdown(desired, inter_user, si_direct, si_reflected, noise)


def uplink_decode(real: ChannelRealization, params: SystemParams) -> np.ndarray:
    """Decode the uplink monolithically: assemble y_BS, then apply W^T.

    Independent of the term decomposition; used to cross-check that the
    per-term split sums back to the decoded vector.
    """
    if real.Gs_bar is None or real.Gs_tilde is None:
        raise ShapeError("realization has no BS SI components (drawn downlink-only)")
    a = build_precoder(real.G, params)
    wt = build_receiver(real.G, params.scheme)
    y_bs = (
        np.sqrt(params.p_u) * (real.G @ real.x_u)
        + np.sqrt(params.p_d) * ((real.Gs_bar + real.Gs_tilde) @ (a @ real.x_d))
        + real.n
    )
    return wt @ y_bs


def downlink_receive(
    real: ChannelRealization, a: np.ndarray, params: SystemParams
) -> np.ndarray:
    """Assemble the received downlink vector y_UE monolithically."""
    gamma = downlink_si_scale(params)
    return (
        np.sqrt(params.p_d) * (real.G.T @ (a @ real.x_d))
        + gamma * (real.Gs_prime @ real.x_u)
        + real.n_d
    )


def _check_channel_shape(g: np.ndarray, params: SystemParams) -> None:
    if g.ndim != 2 or g.shape != (params.M, params.K):
        raise ShapeError(
            f"channel matrix shape {g.shape} does not match (M, K)="
            f"({params.M}, {params.K})"
        )
