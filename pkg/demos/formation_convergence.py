"""Six point-mass agents settle into a hexagon without a leader.

Runs the unperturbed planar formation scenario and prints how the formation
potential decays and how much of the communication budget the agents used.
"""

import numpy as np

from etform.presets import get_preset
from etform.simulation import simulate


def main() -> None:
    cfg = get_preset("formation-di")
    result = simulate(cfg)

    print("unperturbed hexagon formation, 6 agents, T = 2 s")
    print(f"messages sent: {result.n_messages} "
          f"(R_com = {result.r_com:.2f}% of the step budget)")
    print()
    print("  t [s]   P(q,t)")
    for t_mark in (0.0, 0.25, 0.5, 1.0, 1.5, 2.0):
        k = int(round(t_mark / cfg["dt"]))
        print(f"  {result.t[k]:5.2f}   {result.P[k]:.3e}")

    tail = result.P[int(round(0.5 / cfg["dt"])):]
    print()
    print(f"P is monotonically decreasing after 0.5 s: {bool(np.all(np.diff(tail) <= 0))}")
    print(f"final potential P(q,T) = {result.P[-1]:.3e}")


if __name__ == "__main__":
    main()
