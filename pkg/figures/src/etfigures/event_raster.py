"""Broadcast instants per agent from a run's events CSV."""

import argparse

import matplotlib.pyplot as plt
import pandas as pd

from .style import AGENT_COLORS, apply_style, save


def make_figure(events_csv, out_path, t_max=None):
    apply_style()
    df = pd.read_csv(events_csv)
    senders = sorted(df["sender"].unique())

    fig, ax = plt.subplots(figsize=(7.0, 2.8))
    for i in senders:
        times = df.loc[df["sender"] == i, "t"]
        ax.vlines(times, i - 0.35, i + 0.35,
                  color=AGENT_COLORS[(int(i) - 1) % len(AGENT_COLORS)],
                  linewidth=0.7)

    ax.set_yticks(senders)
    ax.set_ylabel("agent")
    ax.set_xlabel("time [s]")
    if t_max is not None:
        ax.set_xlim(0.0, t_max)
    n = len(df)
    ax.set_title(f"broadcast instants ({n} messages)")
    fig.tight_layout()
    return save(fig, out_path)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("events_csv")
    parser.add_argument("--out", default="event_raster.svg")
    parser.add_argument("--t-max", type=float, default=None)
    args = parser.parse_args(argv)
    print(make_figure(args.events_csv, args.out, t_max=args.t_max))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
