"""Figure rendering for the report path: curves to a PNG/PDF next to the data."""

from __future__ import annotations

from typing import Mapping, Sequence


def render_curves(
    x: Sequence[float],
    curves: Mapping[str, Sequence[float]],
    xlabel: str,
    ylabel: str,
    path: str,
    title: str | None = None,
) -> None:
    """Plot named curves over a shared axis and save the figure to path."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for name, ys in curves.items():
        ax.plot(x, ys, label=name, linewidth=1.6)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
