"""Figure renderer for fdmimo power-sweep CSV output (pure consumer)."""

__version__ = "0.1.0"

from .render import PlotSpec, RenderError, collect_series, render_figure  # noqa: F401
