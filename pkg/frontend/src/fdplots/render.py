"""Render power-vs-antenna-count figures from simulator CSV output.

This is a pure consumer of the simulator's documented file formats: the
power CSV (``link,scheme,term,M,power_linear,power_db,stderr_db,trials,
seed``), the per-run ``*.manifest.txt`` (flat ``key=value`` lines, used
only to label series with their coupling value), and ``crossings.csv``
(``link,scheme,term,c_value,level_db,m_star``), from which the 0 dB
crossing markers are taken instead of being recomputed here.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

POWER_COLUMNS = (
    "link",
    "scheme",
    "term",
    "M",
    "power_linear",
    "power_db",
    "stderr_db",
    "trials",
    "seed",
)
CROSSING_COLUMNS = ("link", "scheme", "term", "c_value", "level_db", "m_star")
SELECTOR_KEYS = ("link", "scheme", "term", "c")


class RenderError(Exception):
    """Input files or selectors cannot produce a figure."""


@dataclass
class PlotSpec:
    """What to draw: inputs, series selection, output, reference lines."""

    csv_paths: tuple
    selectors: dict
    out_path: str
    noise_floor_db: Optional[float] = 0.0
    slope_guide: bool = False
    crossings_path: Optional[str] = None
    title: Optional[str] = None
    dpi: int = 120


@dataclass
class Series:
    label: str
    link: str
    scheme: str
    term: str
    c_value: Optional[float]
    m: list = field(default_factory=list)
    power_db: list = field(default_factory=list)
    stderr_db: list = field(default_factory=list)


def parse_selectors(text: str) -> dict:
    """Parse ``link=downlink,term=si_total`` into a selector mapping."""
    selectors = {}
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if "=" not in token:
            raise RenderError(f"selector {token!r} is not key=value")
        key, value = (part.strip() for part in token.split("=", 1))
        if key not in SELECTOR_KEYS:
            raise RenderError(
                f"unknown selector key {key!r}; expected one of {SELECTOR_KEYS}"
            )
        selectors[key] = value
    return selectors


def _read_rows(path: Path) -> list[dict]:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            missing = [c for c in POWER_COLUMNS if c not in header]
            if missing:
                raise RenderError(f"{path}: missing column(s) {', '.join(missing)}")
            return list(reader)
    except OSError as exc:
        raise RenderError(f"cannot read {path}: {exc}") from exc


def _file_couplings(path: Path) -> dict:
    """Coupling values of one CSV, from its manifest or its filename.

    The manifest carries both couplings (the BS-side ``c_direct`` matters
    for uplink rows, the user-side ``c_prime`` for downlink rows); a
    ``_c<value>`` filename suffix is the fallback when no manifest sits
    next to the file.
    """
    couplings: dict = {}
    candidates = (
        path.with_name(path.stem + ".manifest.txt"),
        path.with_name("manifest.txt"),
    )
    manifest = next((p for p in candidates if p.exists()), None)
    if manifest is not None:
        for line in manifest.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line.startswith("#") or "=" not in line:
                continue
            key, value = (part.strip() for part in line.split("=", 1))
            if key in ("c_prime", "c_direct"):
                try:
                    couplings[key] = float(complex(value).real)
                except ValueError:
                    pass
    stem = path.stem
    if "_c" in stem:
        tail = stem.rsplit("_c", 1)[1]
        try:
            couplings.setdefault("any", float(tail))
        except ValueError:
            pass
    return couplings


def _series_c_value(couplings: dict, link: str) -> Optional[float]:
    key = "c_prime" if link == "downlink" else "c_direct"
    if key in couplings:
        return couplings[key]
    return couplings.get("any")


def collect_series(spec: PlotSpec) -> list[Series]:
    """Read all CSVs and group the selected rows into plottable series."""
    want_c = None
    if "c" in spec.selectors:
        try:
            want_c = float(spec.selectors["c"])
        except ValueError as exc:
            raise RenderError(f"selector c={spec.selectors['c']!r} is not a number")
    groups: dict[tuple, Series] = {}
    for path_str in spec.csv_paths:
        path = Path(path_str)
        couplings = _file_couplings(path)
        for row in _read_rows(path):
            if any(
                row[key] != spec.selectors[key]
                for key in ("link", "scheme", "term")
                if key in spec.selectors
            ):
                continue
            c_value = _series_c_value(couplings, row["link"])
            if want_c is not None and (
                c_value is None or abs(c_value - want_c) > 1e-9
            ):
                continue
            key = (str(path), row["link"], row["scheme"], row["term"])
            if key not in groups:
                label = f"{row['link']} {row['term']} ({row['scheme']})"
                if c_value is not None:
                    label += f", c={c_value:g}"
                groups[key] = Series(
                    label=label,
                    link=row["link"],
                    scheme=row["scheme"],
                    term=row["term"],
                    c_value=c_value,
                )
            series = groups[key]
            power_db = float(row["power_db"])
            if power_db == float("-inf"):
                continue  # zero-power rows have no finite dB value to draw
            series.m.append(int(row["M"]))
            series.power_db.append(power_db)
            series.stderr_db.append(float(row["stderr_db"]))
    out = []
    for series in groups.values():
        if not series.m:
            continue
        order = sorted(range(len(series.m)), key=lambda i: series.m[i])
        series.m = [series.m[i] for i in order]
        series.power_db = [series.power_db[i] for i in order]
        series.stderr_db = [series.stderr_db[i] for i in order]
        out.append(series)
    if not out:
        raise RenderError(
            f"selectors {spec.selectors!r} match no rows in "
            f"{', '.join(map(str, spec.csv_paths))}"
        )
    return sorted(out, key=lambda s: s.label)


def load_crossings(spec: PlotSpec) -> list[dict]:
    """Crossing rows from crossings.csv (explicit path or sibling file)."""
    if spec.crossings_path is not None:
        path = Path(spec.crossings_path)
        if not path.exists():
            raise RenderError(f"crossings file {path} does not exist")
    else:
        path = Path(spec.csv_paths[0]).parent / "crossings.csv"
        if not path.exists():
            return []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in CROSSING_COLUMNS if c not in header]
        if missing:
            raise RenderError(f"{path}: missing column(s) {', '.join(missing)}")
        return list(reader)


def _marker_rows(series_list: list[Series], crossings: list[dict]) -> list[tuple]:
    markers = []
    for row in crossings:
        for series in series_list:
            if (
                row["link"] == series.link
                and row["scheme"] == series.scheme
                and row["term"] == series.term
                and (
                    series.c_value is None
                    or abs(float(row["c_value"]) - series.c_value) < 1e-9
                )
            ):
                markers.append(
                    (float(row["m_star"]), float(row["level_db"]), series.label)
                )
                break
    return markers


def render_figure(spec: PlotSpec):
    """Draw the selected series and save the figure; returns the Figure.

    Log-x power-versus-M lines with shaded +-1 standard error bands, an
    optional horizontal noise-floor reference, an optional 1/M slope guide,
    and one vertical marker per matching crossings.csv row.
    """
    series_list = collect_series(spec)
    crossings = load_crossings(spec)
    markers = _marker_rows(series_list, crossings)

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for series in series_list:
        (line,) = ax.plot(series.m, series.power_db, marker="o", label=series.label)
        lo = [p - e for p, e in zip(series.power_db, series.stderr_db)]
        hi = [p + e for p, e in zip(series.power_db, series.stderr_db)]
        ax.fill_between(series.m, lo, hi, alpha=0.2, color=line.get_color())

    if spec.noise_floor_db is not None:
        ax.axhline(
            spec.noise_floor_db,
            color="black",
            linestyle="--",
            linewidth=1.0,
            label=f"{spec.noise_floor_db:g} dB noise floor",
        )
    if spec.slope_guide and series_list:
        # anchor a 1/M reference (10 dB per decade of M) on the first series
        ref = series_list[0]
        m0, p0 = ref.m[0], ref.power_db[0]
        guide_p = [p0 - 10.0 * math.log10(m / m0) for m in ref.m]
        ax.plot(ref.m, guide_p, color="gray", linestyle=":", label="1/M slope guide")
    for m_star, level_db, label in markers:
        ax.axvline(m_star, color="crimson", linestyle=":", linewidth=1.0)
        ax.annotate(
            f"M*={m_star:.0f}",
            xy=(m_star, level_db),
            xytext=(3, 6),
            textcoords="offset points",
            fontsize=8,
            color="crimson",
        )

    ax.set_xscale("log")
    ax.set_xlabel("antenna count M")
    ax.set_ylabel("power (dB)")
    if spec.title:
        ax.set_title(spec.title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(spec.out_path, dpi=spec.dpi)
    plt.close(fig)
    return fig
