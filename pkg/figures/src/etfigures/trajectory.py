"""Agent paths in the plane from a run's timeseries CSV.

Draws each agent's trajectory, marks start (circle) and end (square), and
connects the final positions to show the achieved formation polygon.
"""

import argparse

import matplotlib.pyplot as plt
import pandas as pd

from .style import AGENT_COLORS, apply_style, save


def agent_ids(df) -> list[int]:
    return sorted(int(c.split("_")[1]) for c in df.columns if c.startswith("x_"))


def make_figure(timeseries_csv, out_path):
    apply_style()
    df = pd.read_csv(timeseries_csv)
    ids = agent_ids(df)

    fig, ax = plt.subplots(figsize=(5.2, 5.2))
    finals = []
    for i in ids:
        color = AGENT_COLORS[(i - 1) % len(AGENT_COLORS)]
        x, y = df[f"x_{i}"], df[f"y_{i}"]
        ax.plot(x, y, color=color, alpha=0.8, label=f"agent {i}")
        ax.plot(x.iloc[0], y.iloc[0], "o", color=color, markersize=5)
        ax.plot(x.iloc[-1], y.iloc[-1], "s", color=color, markersize=5)
        finals.append((x.iloc[-1], y.iloc[-1]))

    loop = finals + [finals[0]]
    ax.plot([p[0] for p in loop], [p[1] for p in loop],
            color="gray", linestyle=":", linewidth=1.0)
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    ax.set_aspect("equal")
    ax.legend(fontsize=7, loc="best")
    ax.set_title("agent trajectories (circle = start, square = end)")
    fig.tight_layout()
    return save(fig, out_path)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("timeseries_csv")
    parser.add_argument("--out", default="trajectory.svg")
    args = parser.parse_args(argv)
    print(make_figure(args.timeseries_csv, args.out))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
