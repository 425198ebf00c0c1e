"""Figure rendering for the demonstration grid and comparability reports.

Everything here draws with the Agg backend and writes PNG files next to the
plot-file output; nothing opens a window.
"""

from __future__ import annotations

from pathlib import Path

from .harness import FIGURE_COLUMNS, FIGURE_ROWS, ComparabilityReport, figure_csv_name
from .io import read_columns_csv

__all__ = ["save_noise_grid_png", "save_report_png"]

_ROW_TITLES = ("noise", "first-order lowpass", "state-variable lowpass", "magnitude spectrum")


def _matplotlib():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def save_noise_grid_png(csv_dir, png_path) -> Path:
    """Render the 4x3 grid written by `reproduce_noise_figure` to one PNG."""
    plt = _matplotlib()
    csv_dir = Path(csv_dir)
    png_path = Path(png_path)

    fig, axes = plt.subplots(
        len(FIGURE_ROWS), len(FIGURE_COLUMNS), figsize=(11, 8), sharex="row", sharey="row"
    )
    for i, row in enumerate(FIGURE_ROWS):
        for j, column in enumerate(FIGURE_COLUMNS):
            x, y = read_columns_csv(csv_dir / figure_csv_name(column, row))
            ax = axes[i, j]
            ax.plot(x, y, linewidth=0.6, color="black")
            if i == 0:
                ax.set_title(f"{column} rate noise", fontsize=9)
            if j == 0:
                ax.set_ylabel(_ROW_TITLES[i], fontsize=8)
            ax.tick_params(labelsize=7)
    for j in range(len(FIGURE_COLUMNS)):
        axes[-1, j].set_xlabel("frequency (Hz)", fontsize=8)
        axes[-2, j].set_xlabel("time (s)", fontsize=8)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return png_path


def save_report_png(report: ComparabilityReport, png_path) -> Path:
    """Bar chart of metric ratios with the pass band marked."""
    plt = _matplotlib()
    png_path = Path(png_path)

    names = [m.name for m in report.metrics]
    ratios = [m.ratio for m in report.metrics]
    tolerance = report.metrics[0].tolerance if report.metrics else 0.0

    fig, ax = plt.subplots(figsize=(6, 4))
    colors = ["tab:green" if m.passed else "tab:red" for m in report.metrics]
    ax.bar(names, ratios, color=colors)
    ax.axhline(1.0, color="black", linewidth=0.8)
    ax.axhspan(1.0 - tolerance, 1.0 + tolerance, color="gray", alpha=0.25, label="pass band")
    ax.set_ylabel("low rate / high rate")
    ax.set_title(
        f"comparability at {report.rate_low_hz:g} Hz vs {report.rate_high_hz:g} Hz "
        f"({report.trials} trials)"
    )
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return png_path
