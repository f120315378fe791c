"""Monte Carlo power sweeps over the antenna count, with crossing detection.

``run_sweep`` estimates, for every antenna count M and every requested
link, the mean-square power of each decoded-signal term (desired,
inter-user, direct SI, reflected SI, their coherent sum, noise, and total
interference plus noise).  Powers are measured after the normalized view
when ``normalize`` is on (MRC uplink terms divided by M*beta_k, downlink
terms by the processing gain rho_k), which is the scaling under which the
residual SI power decays like 1/M and crosses the 0 dB unit-noise floor.

Every (M, trial) cell owns a random stream derived from
``(master_seed, m_index, trial_index, attempt)``, so results are
bit-identical regardless of execution order or worker count.  Trials whose
channel draw is singular for ZF are redrawn on a fresh attempt stream,
counted, and rejected wholesale if redraws exceed 1% of the cells.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .channel import ChannelRealization, SystemParams, sample_realization
from .errors import (
    ParameterError,
    RedrawBudgetError,
    SingularMatrixError,
)
from .numerics import RngStream
from .processing import (
    TermBreakdown,
    build_precoder,
    downlink_terms,
    processing_gain,
    uplink_normalization,
    uplink_terms,
)

__all__ = [
    "LINK_UPLINK",
    "LINK_DOWNLINK",
    "LINKS",
    "TERMS",
    "SweepConfig",
    "PowerRow",
    "PowerTable",
    "PowerReport",
    "estimate_powers",
    "run_sweep",
    "find_crossing",
    "power_to_db",
]

LINK_UPLINK = "uplink"
LINK_DOWNLINK = "downlink"
LINKS = (LINK_UPLINK, LINK_DOWNLINK)

TERMS = (
    "desired",
    "inter_user",
    "si_direct",
    "si_reflected",
    "si_total",
    "noise",
    "total_int_plus_noise",
)

# Redraw budget for singular ZF draws: abort when exceeded.
MAX_REDRAW_RATE = 0.01
_MAX_ATTEMPTS = 64


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: scenario constants, M grid, trial count, seed, links."""

    params: SystemParams
    m_values: tuple[int, ...]
    trials: int
    master_seed: int
    links: tuple[str, ...] = LINKS
    normalize: bool = True

    def __post_init__(self):
        object.__setattr__(self, "m_values", tuple(int(m) for m in self.m_values))
        object.__setattr__(self, "links", tuple(self.links))
        if self.trials < 1:
            raise ParameterError("trials must be >= 1")
        if list(self.m_values) != sorted(set(self.m_values)):
            raise ParameterError("m_values must be strictly ascending")
        if not self.m_values:
            raise ParameterError("m_values must be non-empty")
        if any(m <= self.params.K for m in self.m_values):
            raise ParameterError("every M value must exceed K")
        if not self.links:
            raise ParameterError("links must name at least one of uplink/downlink")
        if any(l not in LINKS for l in self.links):
            raise ParameterError(f"links must be a subset of {LINKS}")


@dataclass(frozen=True)
class PowerRow:
    """One CSV-facing result row."""

    link: str
    scheme: str
    term: str
    M: int
    power_linear: float
    power_db: float
    stderr_db: float
    trials: int
    seed: int


@dataclass
class PowerTable:
    """Ordered collection of PowerRow results from one or more sweeps.

    ``redraws`` counts how many singular-channel trials had to be redrawn
    while producing these rows (reported in the run manifest).
    """

    rows: list[PowerRow]
    redraws: int = 0

    def filter(self, **field_values) -> "PowerTable":
        out = [
            r
            for r in self.rows
            if all(getattr(r, k) == v for k, v in field_values.items())
        ]
        return PowerTable(out, self.redraws)

    def series(self, **field_values) -> list[tuple[int, float]]:
        """(M, power_db) pairs, ascending in M, for one filtered selection."""
        rows = self.filter(**field_values).rows
        return sorted((r.M, r.power_db) for r in rows)

    def extend(self, other: "PowerTable") -> None:
        self.rows.extend(other.rows)
        self.redraws += other.redraws


@dataclass(frozen=True)
class PowerReport:
    """Aggregated per-term powers for a single (M, link) sweep point."""

    link: str
    m: int
    trials: int
    power_linear: dict  # term -> mean square
    stderr_linear: dict  # term -> standard error of the per-trial means
    redraws: int = 0


def power_to_db(linear: float) -> float:
    """10 log10 with an explicit -inf sentinel for zero power."""
    if linear == 0.0:
        return float("-inf")
    return 10.0 * math.log10(linear)


def _trial_powers(breakdown: TermBreakdown, divisors: np.ndarray) -> np.ndarray:
    """Per-trial user-averaged squared magnitudes, ordered like TERMS."""
    tb = breakdown.scaled(divisors)
    si_sum = tb.si_direct + tb.si_reflected
    total_in = tb.inter_user + si_sum + tb.noise
    return np.array(
        [
            np.mean(np.abs(tb.desired) ** 2),
            np.mean(np.abs(tb.inter_user) ** 2),
            np.mean(np.abs(tb.si_direct) ** 2),
            np.mean(np.abs(tb.si_reflected) ** 2),
            np.mean(np.abs(si_sum) ** 2),
            np.mean(np.abs(tb.noise) ** 2),
            np.mean(np.abs(total_in) ** 2),
        ]
    )


def _link_divisors(link: str, params: SystemParams, normalize: bool) -> np.ndarray:
    if not normalize:
        return np.ones(params.K)
    if link == LINK_UPLINK:
        return uplink_normalization(params)
    return processing_gain(params)


def _trial_breakdowns(
    params: SystemParams, real: ChannelRealization, links: tuple[str, ...]
) -> dict:
    out = {}
    if LINK_UPLINK in links:
        out[LINK_UPLINK] = uplink_terms(real, params)
    if LINK_DOWNLINK in links:
        a = build_precoder(real.G, params)
        out[LINK_DOWNLINK] = downlink_terms(real, a, params)
    return out


def _run_cells(
    params: SystemParams,
    master_seed: int,
    m_index: int,
    trial_range: tuple[int, int],
    links: tuple[str, ...],
    normalize: bool,
) -> tuple[int, int, dict, int]:
    """Evaluate one block of trials for one M; returns per-trial power rows.

    The result is keyed so the reducer can place it deterministically:
    (m_index, first trial, {link: (n_trials x n_terms) array}, redraws).
    """
    root = RngStream(master_seed)
    t0, t1 = trial_range
    with_bs_si = LINK_UPLINK in links
    divisors = {link: _link_divisors(link, params, normalize) for link in links}
    blocks = {link: np.empty((t1 - t0, len(TERMS))) for link in links}
    redraws = 0
    for t in range(t0, t1):
        for attempt in range(_MAX_ATTEMPTS):
            real = sample_realization(
                params, root.derive(m_index, t, attempt), with_bs_si=with_bs_si
            )
            try:
                breakdowns = _trial_breakdowns(params, real, links)
            except SingularMatrixError:
                redraws += 1
                continue
            break
        else:  # pragma: no cover - would need 64 singular draws in a row
            raise RedrawBudgetError(
                f"trial {t} at M={params.M} still singular after "
                f"{_MAX_ATTEMPTS} redraws"
            )
        for link in links:
            blocks[link][t - t0] = _trial_powers(breakdowns[link], divisors[link])
    return m_index, t0, blocks, redraws


def estimate_powers(
    samples: list[TermBreakdown],
    params: SystemParams,
    link: str,
    normalize: bool = True,
) -> PowerReport:
    """Aggregate per-trial term decompositions into mean-square powers.

    For each term the power is the mean over trials and users of the
    squared magnitude (terms first divided by the normalized-view divisors
    when ``normalize``); the standard error comes from the sample standard
    deviation of the per-trial user means.  ``total_int_plus_noise`` is the
    mean square of the coherent sum of every non-desired term, and
    ``si_total`` of the two SI terms, not sums of their powers.
    """
    if not samples:
        raise ParameterError("estimate_powers requires at least one sample")
    divisors = _link_divisors(link, params, normalize)
    per_trial = np.stack([_trial_powers(tb, divisors) for tb in samples])
    return _aggregate(per_trial, link, params.M)


def _aggregate(per_trial: np.ndarray, link: str, m: int, redraws: int = 0) -> PowerReport:
    trials = per_trial.shape[0]
    means = per_trial.mean(axis=0)
    if trials > 1:
        stderr = per_trial.std(axis=0, ddof=1) / math.sqrt(trials)
    else:
        stderr = np.zeros(len(TERMS))
    return PowerReport(
        link=link,
        m=m,
        trials=trials,
        power_linear={term: float(means[i]) for i, term in enumerate(TERMS)},
        stderr_linear={term: float(stderr[i]) for i, term in enumerate(TERMS)},
        redraws=redraws,
    )


def run_sweep(config: SweepConfig, workers: int = 1) -> PowerTable:
    """Run the full Monte Carlo sweep and return its PowerTable.

    Cells are independent; with ``workers > 1`` trial blocks are evaluated
    in a process pool. Output is byte-identical across worker counts and
    execution orders because every cell owns a pre-assigned stream and the
    reduction runs over a canonically ordered trial array.
    """
    if workers < 1:
        raise ParameterError("workers must be >= 1")
    tasks = []
    block = max(1, math.ceil(config.trials / max(workers * 4, 1)))
    for mi, m in enumerate(config.m_values):
        params_m = replace(config.params, M=m)
        for t0 in range(0, config.trials, block):
            t1 = min(t0 + block, config.trials)
            tasks.append((params_m, config.master_seed, mi, (t0, t1)))

    results = {}
    if workers == 1:
        for params_m, seed, mi, rng_range in tasks:
            mi_r, t0_r, blocks, redraws = _run_cells(
                params_m, seed, mi, rng_range, config.links, config.normalize
            )
            results[(mi_r, t0_r)] = (blocks, redraws)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(
                    _run_cells, params_m, seed, mi, rng_range, config.links,
                    config.normalize,
                )
                for params_m, seed, mi, rng_range in tasks
            ]
            for fut in futures:
                mi_r, t0_r, blocks, redraws = fut.result()
                results[(mi_r, t0_r)] = (blocks, redraws)

    total_redraws = sum(redraws for _, redraws in results.values())
    total_cells = len(config.m_values) * config.trials
    if total_redraws > MAX_REDRAW_RATE * total_cells:
        raise RedrawBudgetError(
            f"{total_redraws} singular-channel redraws over {total_cells} cells "
            f"exceeds the {MAX_REDRAW_RATE:.0%} budget"
        )

    rows: list[PowerRow] = []
    for link in config.links:
        for mi, m in enumerate(config.m_values):
            per_trial = np.empty((config.trials, len(TERMS)))
            m_redraws = 0
            for t0 in range(0, config.trials, block):
                blocks, redraws = results[(mi, t0)]
                t1 = min(t0 + block, config.trials)
                per_trial[t0:t1] = blocks[link]
                m_redraws += redraws
            report = _aggregate(per_trial, link, m, m_redraws)
            rows.extend(
                _report_rows(report, config.params.scheme, config.master_seed)
            )
    return PowerTable(rows, redraws=total_redraws)


def _report_rows(report: PowerReport, scheme: str, seed: int) -> list[PowerRow]:
    rows = []
    for term in TERMS:
        p = report.power_linear[term]
        se = report.stderr_linear[term]
        # Delta method: d(10 log10 p) = (10 / ln 10) dp / p.
        stderr_db = (10.0 / math.log(10.0)) * se / p if p > 0 else 0.0
        rows.append(
            PowerRow(
                link=report.link,
                scheme=scheme,
                term=term,
                M=report.m,
                power_linear=p,
                power_db=power_to_db(p),
                stderr_db=stderr_db,
                trials=report.trials,
                seed=seed,
            )
        )
    return rows


def find_crossing(
    series: list[tuple[int, float]], level_db: float
) -> float | None:
    """Interpolated M* where a dB power series first crosses down a level.

    Linear interpolation in (log10 M, power_db) coordinates, which is where
    the 1/M-law curves are near-straight.  A point exactly at the level
    returns that M.  Returns None when the series never crosses downward
    (callers widen the M grid).
    """
    if len(series) < 1:
        raise ParameterError("series must contain at least one point")
    ms = [m for m, _ in series]
    if ms != sorted(ms) or len(set(ms)) != len(ms):
        raise ParameterError("series must be sorted by strictly ascending M")
    powers = [p for _, p in series]
    if any(math.isnan(p) or math.isinf(p) for p in powers):
        raise ParameterError("series powers must be finite to interpolate")
    for i, (m, p) in enumerate(series):
        if p == level_db:
            return float(m)
        if i + 1 < len(series):
            m2, p2 = series[i + 1]
            if p > level_db and p2 < level_db:
                lm1, lm2 = math.log10(m), math.log10(m2)
                frac = (p - level_db) / (p - p2)
                return float(10.0 ** (lm1 + frac * (lm2 - lm1)))
    return None
