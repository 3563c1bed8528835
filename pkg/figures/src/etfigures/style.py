"""Shared plot style and deterministic SVG output."""

import pathlib

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

AGENT_COLORS = plt.rcParams["axes.prop_cycle"].by_key()["color"]


def apply_style() -> None:
    plt.rcParams.update({
        "figure.figsize": (6.0, 4.0),
        "figure.dpi": 100,
        "font.size": 9,
        "axes.grid": True,
        "grid.alpha": 0.3,
        "lines.linewidth": 1.2,
        # fixed hash salt so element ids in the SVG do not depend on the
        # process; required for byte-identical reruns
        "svg.hashsalt": "etfigures",
    })


def save(fig, path) -> pathlib.Path:
    """Write an SVG with no embedded timestamp and close the figure."""
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path
