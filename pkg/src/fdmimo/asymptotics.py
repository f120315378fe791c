"""Numerical checks of the almost-sure convergence claims behind the model.

Almost-sure convergence is not falsifiable at finite M, so every claim is
verified the standard numerical way: sample the statistic's magnitude on a
geometric grid of antenna counts and check that its median (with quartile
bands) decays at the expected rate.

Statistics covered:

* scaled quadratic forms  x^H B x^* / M^{3/2}  and  x^H B y / M^{3/2}
  for Gaussian vectors and matrices B with tr(B B^H) = O(M^2) - the
  workhorse bound behind SI suppression;
* the SI projection  ||G^H Gs G^*||_F / M^{3/2}  for the direct (all-equal)
  and reflected (random) BS SI components;
* the channel orthogonality deviation  ||G^T G^* / M - D||_F;
* end-to-end decoding errors of the normalized uplink/downlink samples
  against their large-M targets sqrt(p_u) x_u[k] / sqrt(p_d) x_d[k].
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .channel import (
    SystemParams,
    sample_realization,
    sample_si_channel,
    sample_user_channel,
)
from .errors import ParameterError, ShapeError
from .numerics import RngStream, cscg_sample, frobenius_norm
from .processing import (
    build_precoder,
    downlink_terms,
    processing_gain,
    uplink_normalization,
    uplink_terms,
)

__all__ = [
    "B_IDENTITY",
    "B_ALLEQUAL",
    "B_RANDOM_IID",
    "PAIR_XBX",
    "PAIR_XBY",
    "LINK_UPLINK",
    "LINK_DOWNLINK",
    "DecaySeries",
    "scaled_quadratic_form",
    "quadratic_form_decay_sweep",
    "si_projection_statistic",
    "si_projection_decay_sweep",
    "orthogonality_deviation",
    "decoding_error_sweep",
]

B_IDENTITY = "identity"
B_ALLEQUAL = "deterministic_allequal"
B_RANDOM_IID = "random_iid"
B_KINDS = (B_IDENTITY, B_ALLEQUAL, B_RANDOM_IID)

PAIR_XBX = "xBx_conj"
PAIR_XBY = "xBy"
PAIRS = (PAIR_XBX, PAIR_XBY)

LINK_UPLINK = "uplink"
LINK_DOWNLINK = "downlink"


@dataclass(frozen=True)
class DecaySeries:
    """Sampled statistic magnitudes across an ascending grid of M values."""

    statistic: str
    m_values: tuple[int, ...]
    samples: tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "m_values", tuple(int(m) for m in self.m_values))
        object.__setattr__(
            self, "samples", tuple(np.asarray(s, dtype=np.float64) for s in self.samples)
        )
        if list(self.m_values) != sorted(set(self.m_values)):
            raise ParameterError("m_values must be strictly ascending")
        if len(self.samples) != len(self.m_values):
            raise ParameterError("one samples row required per M value")
        if any(s.size == 0 for s in self.samples):
            raise ParameterError("every samples row must be non-empty")

    @property
    def medians(self) -> np.ndarray:
        return np.array([np.median(s) for s in self.samples])

    @property
    def upper_quartiles(self) -> np.ndarray:
        return np.array([np.quantile(s, 0.75) for s in self.samples])


def scaled_quadratic_form(
    x: np.ndarray, b: np.ndarray, y: np.ndarray | None = None
) -> complex:
    """Evaluate x^H B x^* / M^{3/2} (or x^H B y / M^{3/2} when y is given).

    Decays to zero almost surely as M grows whenever tr(B B^H) = O(M^2); it
    is the caller's business to interpret the decay under that condition.
    """
    x = np.asarray(x).reshape(-1)
    b = np.asarray(b)
    m = x.size
    if b.shape != (m, m):
        raise ShapeError(f"B shape {b.shape} does not match x length {m}")
    right = np.conj(x) if y is None else np.asarray(y).reshape(-1)
    if right.size != m:
        raise ShapeError(f"y length {right.size} does not match x length {m}")
    return complex(np.conj(x) @ (b @ right) / m**1.5)


def _make_b(kind: str, m: int, param: float, rng: RngStream) -> np.ndarray:
    if kind == B_IDENTITY:
        return np.eye(m, dtype=np.complex128)
    if kind == B_ALLEQUAL:
        return np.full((m, m), complex(param))
    if kind == B_RANDOM_IID:
        return cscg_sample(rng, m, m) * np.sqrt(param)
    raise ParameterError(f"unknown B kind {kind!r}, expected one of {B_KINDS}")


def quadratic_form_decay_sweep(
    b_kind: str,
    pair: str,
    m_values: tuple[int, ...],
    trials: int,
    rng: RngStream,
    b_param: float = 1.0,
) -> DecaySeries:
    """Sample |x^H B x^* / M^{3/2}| (or the xBy variant) across an M grid.

    Fresh CN(0,1) vectors (and a fresh B when it is random) per trial.  The
    all-equal and random kinds take ``b_param`` as the coupling value c and
    the entry variance respectively.  Expected median rates: ~1/M for the
    identity B, ~1/sqrt(M) for the all-equal and random kinds.
    """
    if pair not in PAIRS:
        raise ParameterError(f"unknown pair {pair!r}, expected one of {PAIRS}")
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    rows = []
    for mi, m in enumerate(m_values):
        mags = np.empty(trials)
        for t in range(trials):
            cell = rng.derive(mi, t)
            b = _make_b(b_kind, m, b_param, cell.derive(0))
            x = cscg_sample(cell.derive(1), m, 1)[:, 0]
            y = cscg_sample(cell.derive(2), m, 1)[:, 0] if pair == PAIR_XBY else None
            mags[t] = abs(scaled_quadratic_form(x, b, y))
        rows.append(mags)
    name = f"quadform_{b_kind}_{pair}"
    return DecaySeries(name, tuple(m_values), tuple(rows))


def si_projection_statistic(g: np.ndarray, si_component: np.ndarray) -> float:
    """Frobenius norm of G^H Gs G^* / M^{3/2} for one SI component.

    This is the only non-vanishing obstruction in the decoded uplink SI;
    its decay is what makes the SI disappear under both processing schemes.
    """
    g = np.asarray(g)
    si_component = np.asarray(si_component)
    m = g.shape[0]
    if si_component.shape != (m, m):
        raise ShapeError(
            f"SI component shape {si_component.shape} does not match M={m}"
        )
    projected = g.conj().T @ (si_component @ np.conj(g))
    return frobenius_norm(projected) / m**1.5


def si_projection_decay_sweep(
    params: SystemParams,
    m_values: tuple[int, ...],
    trials: int,
    rng: RngStream,
) -> list[DecaySeries]:
    """Sample both SI projection statistics (direct, reflected) across M.

    Fresh user channel and BS SI draws per trial; returns one DecaySeries
    per SI component.
    """
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    direct_rows, reflected_rows = [], []
    for mi, m in enumerate(m_values):
        params_m = replace(params, M=int(m))
        direct = np.empty(trials)
        reflected = np.empty(trials)
        for t in range(trials):
            cell = rng.derive(mi, t)
            g = sample_user_channel(params_m, cell.derive(0))
            gs_bar, gs_tilde = sample_si_channel(params_m, cell.derive(1))
            direct[t] = si_projection_statistic(g, gs_bar)
            reflected[t] = si_projection_statistic(g, gs_tilde)
        direct_rows.append(direct)
        reflected_rows.append(reflected)
    ms = tuple(m_values)
    return [
        DecaySeries("si_projection_direct", ms, tuple(direct_rows)),
        DecaySeries("si_projection_reflected", ms, tuple(reflected_rows)),
    ]


def orthogonality_deviation(g: np.ndarray, params: SystemParams) -> float:
    """||G^T G^* / M - D||_F, the finite-M channel orthogonality error."""
    d = np.diag(params.beta_vector).astype(np.complex128)
    return frobenius_norm(g.T @ np.conj(g) / params.M - d)


def decoding_error_sweep(
    link: str,
    params: SystemParams,
    m_values: tuple[int, ...],
    trials: int,
    rng: RngStream,
) -> DecaySeries:
    """Sample the normalized decoding error against its large-M target.

    Per trial the error is mean_k |decoded_norm[k] - target[k]| where the
    normalized decoded sample is r_k (ZF uplink), r_k / (M beta_k) (MRC
    uplink), or y_k / rho_k (downlink), and the target is sqrt(p_u) x_u[k]
    or sqrt(p_d) x_d[k].
    """
    if link not in (LINK_UPLINK, LINK_DOWNLINK):
        raise ParameterError(f"unknown link {link!r}")
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    uplink = link == LINK_UPLINK
    rows = []
    for mi, m in enumerate(m_values):
        params_m = replace(params, M=int(m))
        errs = np.empty(trials)
        for t in range(trials):
            real = sample_realization(params_m, rng.derive(mi, t), with_bs_si=uplink)
            if uplink:
                decoded = uplink_terms(real, params_m).total
                decoded = decoded / uplink_normalization(params_m)
                target = np.sqrt(params_m.p_u) * real.x_u
            else:
                a = build_precoder(real.G, params_m)
                decoded = downlink_terms(real, a, params_m).total
                decoded = decoded / processing_gain(params_m)
                target = np.sqrt(params_m.p_d) * real.x_d
            errs[t] = float(np.mean(np.abs(decoded - target)))
        rows.append(errs)
    name = f"decode_error_{link}_{params.scheme}"
    return DecaySeries(name, tuple(m_values), tuple(rows))
