"""Formation potential and tracking error over time from a timeseries CSV."""

import argparse

import matplotlib.pyplot as plt
import pandas as pd

from .style import apply_style, save


def make_figure(timeseries_csv, out_path):
    apply_style()
    df = pd.read_csv(timeseries_csv)

    fig, (ax_p, ax_e) = plt.subplots(2, 1, sharex=True, figsize=(6.0, 4.6))
    ax_p.semilogy(df["t"], df["P"].clip(lower=1e-12), color="tab:blue")
    ax_p.set_ylabel("potential P(q, t)")
    ax_e.plot(df["t"], df["eps0"], color="tab:red")
    ax_e.set_ylabel("tracking error ||eps_1||")
    ax_e.set_xlabel("time [s]")
    fig.tight_layout()
    return save(fig, out_path)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("timeseries_csv")
    parser.add_argument("--out", default="timeseries.svg")
    args = parser.parse_args(argv)
    print(make_figure(args.timeseries_csv, args.out))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
