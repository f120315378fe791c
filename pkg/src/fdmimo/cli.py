"""Command-line entry point: presets, config parsing, CSV emission.

Run ``fdmimo --preset NAME --out DIR`` for the canned experiments, or
``fdmimo --config FILE --out DIR`` for a custom sweep.  Every run writes
its data CSV(s) and a fully resolved ``*.manifest.txt`` next to them;
power sweeps additionally write ``crossings.csv`` with the interpolated
0 dB crossing points.

Config files are flat ``key=value`` lines with ``#`` comments.  Powers may
be given in dB through a ``_db`` key suffix (``p_d_db=13``); they are
converted to linear once at parse time and everything downstream is
linear.

Exit codes: 0 success, 64 usage/config error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Mapping, Optional, Sequence

import numpy as np

from . import __version__
from .asymptotics import (
    B_ALLEQUAL,
    B_IDENTITY,
    B_RANDOM_IID,
    PAIR_XBX,
    PAIR_XBY,
    DecaySeries,
    decoding_error_sweep,
    quadratic_form_decay_sweep,
    si_projection_decay_sweep,
)
from .channel import (
    CONVENTION_SQRT,
    SCHEME_MRT,
    SCHEME_ZF,
    SCHEMES,
    SystemParams,
)
from .errors import ConfigError, FdmimoError, ParameterError
from .montecarlo import (
    LINK_DOWNLINK,
    LINK_UPLINK,
    LINKS,
    PowerRow,
    PowerTable,
    SweepConfig,
    find_crossing,
    run_sweep,
)
from .numerics import RngStream

__all__ = [
    "DEFAULT_M_GRID",
    "DECAY_M_GRID",
    "PRESETS",
    "RunManifest",
    "parse_config",
    "run_preset",
    "write_csv",
    "read_power_csv",
    "read_decay_csv",
    "main",
    "entrypoint",
]

# Log-spaced default antenna grid: half-octave steps keep slope fits and
# crossing interpolation stable.
DEFAULT_M_GRID = (64, 91, 128, 181, 256, 362, 512, 724, 1024)
DECAY_M_GRID = (64, 256, 1024)

DEFAULT_SEED = 1
DEFAULT_TRIALS = 500
DECAY_TRIALS = {"lemma1": 500, "theorem1": 200, "propositions": 200}

POWER_HEADER = "link,scheme,term,M,power_linear,power_db,stderr_db,trials,seed"
DECAY_HEADER = "statistic,M,trial,magnitude"
DECAY_SUMMARY_HEADER = "statistic,M,trials,median,upper_quartile"
# `term` distinguishes the SI crossing from the total interference-plus-
# noise crossing reported at the same (link, scheme, coupling).
CROSSING_HEADER = "link,scheme,term,c_value,level_db,m_star"

EXIT_OK = 0
EXIT_IO = 2
EXIT_USAGE = 64

FIG2_UPLINK_C = (0.5, 0.9)
FIG2_DOWNLINK_C = (0.6, 0.7)
CROSSING_TERMS = ("si_total", "total_int_plus_noise")
CROSSING_LEVEL_DB = 0.0


# ---------------------------------------------------------------------------
# Defaults and config grammar
# ---------------------------------------------------------------------------

def _default_settings() -> dict:
    """Baseline scenario: K=4 users at beta 0.1, BS/user reflected SI gains
    0.8/0.7, uplink 10 dB, downlink 13 dB, ZF processing."""
    return {
        "K": 4,
        "beta_k": None,  # resolved to (0.1,) * K below
        "beta_si": 0.8,
        "beta_prime": 0.7,
        "p_u": 10.0,
        "p_d": 10.0 ** 1.3,
        "c_direct": complex(FIG2_UPLINK_C[0]),
        "c_prime": complex(FIG2_DOWNLINK_C[0]),
        "scheme": SCHEME_ZF,
        "downlink_si_uses_uplink_power": False,
        "ue_reflected_amplitude_convention": CONVENTION_SQRT,
        "M_values": DEFAULT_M_GRID,
        "trials": DEFAULT_TRIALS,
        "seed": DEFAULT_SEED,
        "links": LINKS,
        "normalize": True,
    }


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(",") if tok.strip())


def _parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.split(",") if tok.strip())


def _parse_links(text: str) -> tuple[str, ...]:
    links = tuple(tok.strip() for tok in text.split(",") if tok.strip())
    for link in links:
        if link not in LINKS:
            raise ValueError(f"unknown link {link!r}")
    return links


def _parse_scheme(text: str) -> str:
    low = text.strip().lower()
    if low in ("mrt_mrc", "mrc"):
        low = SCHEME_MRT
    if low not in SCHEMES:
        raise ValueError(f"scheme must be one of {SCHEMES}")
    return low


_KEY_PARSERS = {
    "K": int,
    "beta_k": _parse_float_list,
    "beta_si": float,
    "beta_prime": float,
    "p_u": float,
    "p_d": float,
    "p_u_db": float,
    "p_d_db": float,
    "c_direct": complex,
    "c_prime": complex,
    "scheme": _parse_scheme,
    "downlink_si_uses_uplink_power": _parse_bool,
    "ue_reflected_amplitude_convention": str,
    "M_values": _parse_int_list,
    "trials": int,
    "seed": int,
    "links": _parse_links,
    "normalize": _parse_bool,
}


def parse_config(
    path: Optional[str] = None, overrides: Optional[Mapping[str, str]] = None
) -> SweepConfig:
    """Build a SweepConfig from a config file merged with overrides.

    ``path`` may be None (pure defaults).  ``overrides`` maps config keys to
    raw string values and wins over the file; within one source, later keys
    win (a ``p_u_db`` line simply replaces an earlier ``p_u``).  Any unknown
    key, unparsable value, or parameter-constraint violation raises
    :class:`ConfigError` naming the offending key (and line).
    """
    settings = _default_settings()

    def apply(key: str, raw: str, where: str) -> None:
        if key not in _KEY_PARSERS:
            raise ConfigError(f"{where}: unknown key {key!r}")
        try:
            value = _KEY_PARSERS[key](raw)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"{where}: bad value for {key!r}: {exc}") from exc
        if key in ("p_u_db", "p_d_db"):
            settings[key[:-3]] = 10.0 ** (value / 10.0)
        else:
            settings[key] = value

    if path is not None:
        try:
            lines = Path(path).read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        for lineno, line in enumerate(lines, start=1):
            stripped = line.split("#", 1)[0].strip()
            if not stripped:
                continue
            if "=" not in stripped:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, raw = (part.strip() for part in stripped.split("=", 1))
            apply(key, raw, f"{path}:{lineno}")

    for key, raw in (overrides or {}).items():
        apply(key, str(raw), "override")

    return _build_sweep_config(settings)


def _build_sweep_config(settings: Mapping) -> SweepConfig:
    k = settings["K"]
    beta_k = settings["beta_k"]
    if beta_k is None:
        beta_k = (0.1,) * k
    elif len(beta_k) == 1:
        beta_k = beta_k * k
    m_values = settings["M_values"]
    try:
        params = SystemParams(
            M=max(m_values) if m_values else k + 1,
            K=k,
            p_u=settings["p_u"],
            p_d=settings["p_d"],
            beta_k=beta_k,
            beta_si=settings["beta_si"],
            c_direct=settings["c_direct"],
            c_prime=settings["c_prime"],
            beta_prime=settings["beta_prime"],
            scheme=settings["scheme"],
            downlink_si_uses_uplink_power=settings["downlink_si_uses_uplink_power"],
            ue_reflected_amplitude_convention=settings[
                "ue_reflected_amplitude_convention"
            ],
        )
        return SweepConfig(
            params=params,
            m_values=m_values,
            trials=settings["trials"],
            master_seed=settings["seed"],
            links=settings["links"],
            normalize=settings["normalize"],
        )
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------------------
# Number formatting and CSV I/O
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    """Lossless decimal formatting: shortest repr that round-trips exactly
    (up to 17 significant digits); zero power's dB value prints as -inf."""
    if isinstance(value, float):
        if math.isinf(value):
            return "-inf" if value < 0 else "inf"
        return repr(value)
    if isinstance(value, complex):
        return _fmt(value.real) if value.imag == 0 else repr(value)
    return str(value)


def write_csv(table, path) -> None:
    """Write a PowerTable or DecaySeries (or list of them) to ``path``.

    Decay series additionally get a ``*_summary.csv`` sibling with per-M
    medians and upper quartiles.  UTF-8, LF line endings, full-precision
    decimals.
    """
    if isinstance(table, PowerTable):
        _write_power_csv(table, path)
    elif isinstance(table, DecaySeries):
        _write_decay_csv([table], path)
    elif isinstance(table, (list, tuple)) and all(
        isinstance(s, DecaySeries) for s in table
    ):
        _write_decay_csv(list(table), path)
    else:
        raise TypeError(f"cannot serialize {type(table).__name__} to CSV")


def _open_writer(path):
    return open(path, "w", encoding="utf-8", newline="")


def _write_power_csv(table: PowerTable, path) -> None:
    with _open_writer(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(POWER_HEADER.split(","))
        for r in table.rows:
            writer.writerow(
                [
                    r.link,
                    r.scheme,
                    r.term,
                    r.M,
                    _fmt(r.power_linear),
                    _fmt(r.power_db),
                    _fmt(r.stderr_db),
                    r.trials,
                    r.seed,
                ]
            )


def read_power_csv(path) -> PowerTable:
    """Parse a power CSV back into a PowerTable (lossless round-trip)."""
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != POWER_HEADER.split(","):
            raise ConfigError(f"{path}: unexpected header {header}")
        for rec in reader:
            rows.append(
                PowerRow(
                    link=rec[0],
                    scheme=rec[1],
                    term=rec[2],
                    M=int(rec[3]),
                    power_linear=float(rec[4]),
                    power_db=float(rec[5]),
                    stderr_db=float(rec[6]),
                    trials=int(rec[7]),
                    seed=int(rec[8]),
                )
            )
    return PowerTable(rows)


def _summary_path(path) -> Path:
    p = Path(path)
    return p.with_name(p.stem + "_summary" + p.suffix)


def _write_decay_csv(series_list: list[DecaySeries], path) -> None:
    with _open_writer(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(DECAY_HEADER.split(","))
        for series in series_list:
            for m, samples in zip(series.m_values, series.samples):
                for t, mag in enumerate(samples):
                    writer.writerow([series.statistic, m, t, _fmt(float(mag))])
    with _open_writer(_summary_path(path)) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(DECAY_SUMMARY_HEADER.split(","))
        for series in series_list:
            med = series.medians
            uq = series.upper_quartiles
            for i, m in enumerate(series.m_values):
                writer.writerow(
                    [
                        series.statistic,
                        m,
                        series.samples[i].size,
                        _fmt(float(med[i])),
                        _fmt(float(uq[i])),
                    ]
                )


def read_decay_csv(path) -> list[DecaySeries]:
    """Parse a decay-samples CSV back into DecaySeries objects."""
    acc: dict[str, dict[int, list[float]]] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != DECAY_HEADER.split(","):
            raise ConfigError(f"{path}: unexpected header {header}")
        for rec in reader:
            acc.setdefault(rec[0], {}).setdefault(int(rec[1]), []).append(
                float(rec[3])
            )
    out = []
    for name, by_m in acc.items():
        ms = tuple(sorted(by_m))
        out.append(DecaySeries(name, ms, tuple(np.array(by_m[m]) for m in ms)))
    return out


def _write_crossings(rows: list[tuple], path) -> None:
    with _open_writer(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CROSSING_HEADER.split(","))
        for link, scheme, term, c_value, level_db, m_star in rows:
            writer.writerow(
                [link, scheme, term, _fmt(c_value), _fmt(level_db), _fmt(m_star)]
            )


# ---------------------------------------------------------------------------
# Manifests
# ---------------------------------------------------------------------------

@dataclass
class RunManifest:
    """Fully resolved record of one run, written next to its CSV."""

    preset: Optional[str]
    seed: int
    entries: dict
    version: str = __version__
    generated: str = ""

    def __post_init__(self):
        if not self.generated:
            self.generated = (
                datetime.datetime.now(datetime.timezone.utc)
                .isoformat(timespec="seconds")
            )

    def write(self, path) -> None:
        lines = [
            f"# fdmimo {self.version}",
            f"# generated: {self.generated}",
            f"# preset: {self.preset or '(custom config)'}",
            "# Re-running the command below with the same build reproduces",
            "# the data CSV byte for byte (worker count does not matter).",
            f"# command: {self.entries.get('command', 'n/a')}",
        ]
        for key, value in self.entries.items():
            if key == "command":
                continue
            lines.append(f"{key}={value}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _manifest_entries(config: SweepConfig, schemes: Sequence[str], extra: dict) -> dict:
    p = config.params
    entries = {
        "seed": config.master_seed,
        "trials": config.trials,
        "M_values": ",".join(str(m) for m in config.m_values),
        "links": ",".join(config.links),
        "normalize": str(config.normalize).lower(),
        "schemes": ",".join(schemes),
        "K": p.K,
        "beta_k": ",".join(_fmt(b) for b in p.beta_k),
        "beta_si": _fmt(p.beta_si),
        "beta_prime": _fmt(p.beta_prime),
        "p_u": _fmt(p.p_u),
        "p_d": _fmt(p.p_d),
        "c_direct": _fmt(p.c_direct),
        "c_prime": _fmt(p.c_prime),
        "downlink_si_uses_uplink_power": str(p.downlink_si_uses_uplink_power).lower(),
        "ue_reflected_amplitude_convention": p.ue_reflected_amplitude_convention,
    }
    entries.update(extra)
    return entries


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def run_preset(
    name: str,
    out_dir,
    *,
    seed: Optional[int] = None,
    trials: Optional[int] = None,
    m_values: Optional[tuple[int, ...]] = None,
    scheme: Optional[str] = None,
    workers: int = 1,
    command: str = "",
) -> int:
    """Execute one named preset, writing CSVs and manifests into out_dir."""
    if name not in PRESETS:
        raise ConfigError(
            f"unknown preset {name!r}; expected one of {', '.join(sorted(PRESETS))}"
        )
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    PRESETS[name](
        out,
        seed=DEFAULT_SEED if seed is None else seed,
        trials=trials,
        m_values=m_values,
        scheme=scheme,
        workers=workers,
        command=command,
    )
    return EXIT_OK


def _fig2_preset(link: str, c_key: str, c_values: tuple[float, ...], name: str):
    def run(out: Path, *, seed, trials, m_values, scheme, workers, command):
        base = parse_config(None).params
        schemes = (scheme,) if scheme else SCHEMES
        grid = m_values or DEFAULT_M_GRID
        n_trials = trials or DEFAULT_TRIALS
        crossing_rows = []
        for c in c_values:
            table = PowerTable([])
            config = None
            for s in schemes:
                params = replace(base, scheme=s, **{c_key: complex(c)})
                config = SweepConfig(
                    params=params,
                    m_values=grid,
                    trials=n_trials,
                    master_seed=seed,
                    links=(link,),
                    normalize=True,
                )
                table.extend(run_sweep(config, workers=workers))
            stem = f"{name}_c{c:g}"
            write_csv(table, out / f"{stem}.csv")
            entries = _manifest_entries(
                config,
                schemes,
                {
                    "command": command,
                    c_key: _fmt(complex(c)),
                    "singular_redraws": str(table.redraws),
                },
            )
            RunManifest(preset=name, seed=seed, entries=entries).write(
                out / f"{stem}.manifest.txt"
            )
            for s in schemes:
                for term in CROSSING_TERMS:
                    series = table.series(link=link, scheme=s, term=term)
                    m_star = find_crossing(series, CROSSING_LEVEL_DB)
                    if m_star is None:
                        print(
                            f"warning: {link}/{s}/{term} at {c_key}={c:g} never "
                            f"crosses {CROSSING_LEVEL_DB:g} dB in the M grid; "
                            "widen --m-list",
                            file=sys.stderr,
                        )
                        continue
                    crossing_rows.append(
                        (link, s, term, c, CROSSING_LEVEL_DB, m_star)
                    )
        _write_crossings(crossing_rows, out / "crossings.csv")

    return run


def _lemma1_preset(out: Path, *, seed, trials, m_values, scheme, workers, command):
    del scheme, workers  # single-threaded statistic sweeps
    grid = m_values or DECAY_M_GRID
    n_trials = trials or DECAY_TRIALS["lemma1"]
    combos = [
        (B_IDENTITY, PAIR_XBX),
        (B_IDENTITY, PAIR_XBY),
        (B_ALLEQUAL, PAIR_XBX),
        (B_ALLEQUAL, PAIR_XBY),
        (B_RANDOM_IID, PAIR_XBX),
        (B_RANDOM_IID, PAIR_XBY),
    ]
    series = []
    for i, (kind, pair) in enumerate(combos):
        rng = RngStream(seed, (i,))
        series.append(
            quadratic_form_decay_sweep(kind, pair, grid, n_trials, rng)
        )
    write_csv(series, out / "lemma1.csv")
    entries = {
        "command": command,
        "seed": seed,
        "trials": n_trials,
        "M_values": ",".join(str(m) for m in grid),
        "statistics": ",".join(s.statistic for s in series),
    }
    RunManifest(preset="lemma1", seed=seed, entries=entries).write(
        out / "lemma1.manifest.txt"
    )


def _theorem1_preset(out: Path, *, seed, trials, m_values, scheme, workers, command):
    del scheme, workers
    grid = m_values or DECAY_M_GRID
    n_trials = trials or DECAY_TRIALS["theorem1"]
    params = replace(parse_config(None).params, c_direct=0.9 + 0j)
    series = si_projection_decay_sweep(params, grid, n_trials, RngStream(seed))
    write_csv(series, out / "theorem1.csv")
    entries = {
        "command": command,
        "seed": seed,
        "trials": n_trials,
        "M_values": ",".join(str(m) for m in grid),
        "c_direct": _fmt(params.c_direct),
        "beta_si": _fmt(params.beta_si),
        "statistics": ",".join(s.statistic for s in series),
    }
    RunManifest(preset="theorem1", seed=seed, entries=entries).write(
        out / "theorem1.manifest.txt"
    )


def _propositions_preset(out: Path, *, seed, trials, m_values, scheme, workers, command):
    del workers
    grid = m_values or DECAY_M_GRID
    n_trials = trials or DECAY_TRIALS["propositions"]
    base = parse_config(None).params
    schemes = (scheme,) if scheme else SCHEMES
    series = []
    for i, s in enumerate(schemes):
        params = replace(base, scheme=s)
        for j, link in enumerate((LINK_UPLINK, LINK_DOWNLINK)):
            rng = RngStream(seed, (i, j))
            series.append(decoding_error_sweep(link, params, grid, n_trials, rng))
    write_csv(series, out / "propositions.csv")
    entries = {
        "command": command,
        "seed": seed,
        "trials": n_trials,
        "M_values": ",".join(str(m) for m in grid),
        "schemes": ",".join(schemes),
        "statistics": ",".join(s.statistic for s in series),
    }
    RunManifest(preset="propositions", seed=seed, entries=entries).write(
        out / "propositions.manifest.txt"
    )


PRESETS = {
    "fig2-uplink": _fig2_preset(LINK_UPLINK, "c_direct", FIG2_UPLINK_C, "fig2-uplink"),
    "fig2-downlink": _fig2_preset(
        LINK_DOWNLINK, "c_prime", FIG2_DOWNLINK_C, "fig2-downlink"
    ),
    "lemma1": _lemma1_preset,
    "theorem1": _theorem1_preset,
    "propositions": _propositions_preset,
}


# ---------------------------------------------------------------------------
# Custom config runs and the argument parser
# ---------------------------------------------------------------------------

def _run_custom(config: SweepConfig, out_dir, workers: int, command: str) -> int:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    table = run_sweep(config, workers=workers)
    write_csv(table, out / "sweep.csv")
    entries = _manifest_entries(
        config,
        (config.params.scheme,),
        {"command": command, "singular_redraws": str(table.redraws)},
    )
    RunManifest(preset=None, seed=config.master_seed, entries=entries).write(
        out / "manifest.txt"
    )
    crossing_rows = []
    c_by_link = {
        LINK_UPLINK: config.params.c_direct.real,
        LINK_DOWNLINK: config.params.c_prime.real,
    }
    for link in config.links:
        for term in CROSSING_TERMS:
            series = table.series(link=link, scheme=config.params.scheme, term=term)
            m_star = find_crossing(series, CROSSING_LEVEL_DB)
            if m_star is not None:
                crossing_rows.append(
                    (
                        link,
                        config.params.scheme,
                        term,
                        c_by_link[link],
                        CROSSING_LEVEL_DB,
                        m_star,
                    )
                )
    _write_crossings(crossing_rows, out / "crossings.csv")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    """argparse variant that raises instead of exiting, for exit-code control."""

    def error(self, message):
        raise ConfigError(message)


def _build_parser() -> _Parser:
    p = _Parser(
        prog="fdmimo",
        description=(
            "Monte Carlo link-level simulator for a shared-antenna full-duplex "
            "massive MU-MIMO base station: per-term power sweeps versus the "
            "antenna count, 0 dB crossings, and convergence-statistic sweeps."
        ),
    )
    p.add_argument("--preset", help=f"one of: {', '.join(sorted(PRESETS))}")
    p.add_argument("--config", help="flat key=value config file for a custom sweep")
    p.add_argument("--out", default="fdmimo_out", help="output directory")
    p.add_argument("--seed", type=int, help="master seed (default 1)")
    p.add_argument("--trials", type=int, help="Monte Carlo trials per M")
    p.add_argument("--m-list", help="comma-separated ascending antenna counts")
    p.add_argument("--scheme", help="zf or mrt (presets default to both)")
    p.add_argument("--workers", type=int, default=1, help="parallel trial workers")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    command = "fdmimo " + " ".join(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        m_values = _parse_int_list(args.m_list) if args.m_list else None
        scheme = _parse_scheme(args.scheme) if args.scheme else None

        if args.preset and args.config:
            raise ConfigError("--preset and --config are mutually exclusive")
        if args.preset:
            return run_preset(
                args.preset,
                args.out,
                seed=args.seed,
                trials=args.trials,
                m_values=m_values,
                scheme=scheme,
                workers=args.workers,
                command=command,
            )
        overrides: dict[str, str] = {}
        if args.seed is not None:
            overrides["seed"] = str(args.seed)
        if args.trials is not None:
            overrides["trials"] = str(args.trials)
        if args.m_list:
            overrides["M_values"] = args.m_list
        if scheme:
            overrides["scheme"] = scheme
        config = parse_config(args.config, overrides)
        return _run_custom(config, args.out, args.workers, command)
    except ConfigError as exc:
        print(f"fdmimo: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"fdmimo: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"fdmimo: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except FdmimoError as exc:
        print(f"fdmimo: error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:  # pragma: no cover - console-script shim
    sys.exit(main())
