"""Model-based estimation buys communication silence on the ship formation.

Runs the perturbed surface-vessel formation twice per seed, once with the
zero-order-hold estimator and once with the model-based one, and compares
how often the agents had to broadcast to reach the same formation quality.
"""

import numpy as np

from etform.presets import get_preset
from etform.simulation import derive_seed, simulate

N_SEEDS = 5


def run(estimator: str, seed: int):
    cfg = get_preset("formation-ss")
    cfg["estimator"] = estimator
    cfg["seed"] = seed
    return simulate(cfg)


def main() -> None:
    print("surface-vessel formation, D_max = 20, eta = 20, T = 2 s")
    print()
    print("  seed   R_com (hold)   R_com (model)   P_T (hold)   P_T (model)")
    rows = []
    for rep in range(N_SEEDS):
        seed = derive_seed(0, rep)
        zoh = run("zoh", seed)
        acc = run("accurate", seed)
        rows.append((zoh.r_com, acc.r_com, zoh.P[-1], acc.P[-1]))
        print(f"  {rep:4d}   {zoh.r_com:11.2f}%   {acc.r_com:12.2f}%"
              f"   {zoh.P[-1]:10.2e}   {acc.P[-1]:11.2e}")

    zoh_r, acc_r, zoh_p, acc_p = (np.array(c) for c in zip(*rows))
    print()
    print(f"median R_com: hold {np.median(zoh_r):.2f}% vs "
          f"model {np.median(acc_r):.2f}%")
    print(f"median P(q,T): hold {np.median(zoh_p):.2e} vs "
          f"model {np.median(acc_p):.2e}")
    print("the model-based estimator tracks neighbors between messages, so")
    print("the same formation quality needs far fewer broadcasts")


if __name__ == "__main__":
    main()
