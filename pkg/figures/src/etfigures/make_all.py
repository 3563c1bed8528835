"""Regenerate every figure from the shipped example outputs.

Expects a data directory containing one or more run directories (each with
timeseries.csv and events.csv) and a sweep.csv, and writes one SVG per
figure into the output directory.
"""

import argparse
import pathlib

from . import event_raster, sweep_surface, timeseries, trajectory


def generate(data_dir, out_dir) -> list[pathlib.Path]:
    data_dir = pathlib.Path(data_dir)
    out_dir = pathlib.Path(out_dir)
    written = []

    sweep = data_dir / "sweep.csv"
    if sweep.exists():
        written.append(sweep_surface.make_figure(sweep, out_dir / "sweep_surface.svg"))

    for run_dir in sorted(p for p in data_dir.iterdir() if p.is_dir()):
        ts = run_dir / "timeseries.csv"
        ev = run_dir / "events.csv"
        if not ts.exists():
            continue
        written.append(trajectory.make_figure(ts, out_dir / f"{run_dir.name}-trajectory.svg"))
        written.append(timeseries.make_figure(ts, out_dir / f"{run_dir.name}-timeseries.svg"))
        if ev.exists():
            written.append(event_raster.make_figure(ev, out_dir / f"{run_dir.name}-events.svg"))
    return written


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data", default="data", help="directory with run outputs")
    parser.add_argument("--out", default="out", help="directory for the SVGs")
    args = parser.parse_args(argv)
    written = generate(args.data, args.out)
    if not written:
        print("no inputs found")
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
