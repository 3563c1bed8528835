"""Communication ratio and final potential over the (D_max, eta) grid.

Reads a sweep CSV and draws, per metric, one curve over D_max for every eta
value, averaging over replicates.
"""

import argparse

import matplotlib.pyplot as plt
import pandas as pd

from .style import apply_style, save


def make_figure(sweep_csv, out_path):
    apply_style()
    df = pd.read_csv(sweep_csv)
    means = df.groupby(["eta", "D_max"], as_index=False)[["R_com", "P_T"]].mean()

    fig, (ax_r, ax_p) = plt.subplots(1, 2, figsize=(9.0, 3.6))
    for eta, group in means.groupby("eta"):
        group = group.sort_values("D_max")
        ax_r.plot(group["D_max"], group["R_com"], marker="o", markersize=3,
                  label=f"eta = {eta:g}")
        ax_p.plot(group["D_max"], group["P_T"], marker="o", markersize=3,
                  label=f"eta = {eta:g}")

    ax_r.set_xlabel("perturbation bound D_max")
    ax_r.set_ylabel("communication ratio R_com [%]")
    ax_p.set_xlabel("perturbation bound D_max")
    ax_p.set_ylabel("final potential P(q, T)")
    ax_p.legend(fontsize=7, ncol=2)
    fig.suptitle("threshold eta trades messages against formation quality", y=0.98)
    fig.tight_layout()
    return save(fig, out_path)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("sweep_csv")
    parser.add_argument("--out", default="sweep_surface.svg")
    args = parser.parse_args(argv)
    print(make_figure(args.sweep_csv, args.out))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
