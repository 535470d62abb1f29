"""Two- versus three-qubit steady entanglement under a temperature bias.

The left bath is swept in temperature while the right bath is held at a
fixed multiple of it.  At low temperature the two-qubit chain carries
more end-to-end entanglement, but there is a temperature interval where
the three-qubit chain overtakes it, and the crossover survives a finite
bias between the baths.

Run:  python3 demos/nonequilibrium_sweep.py [--ratio 1.5] [--plot out.png]
"""

import argparse

import numpy as np

from thermalchain import analysis, model

EPSILON, COUPLING, GAMMA = 1.5, 1.0, 1 / 50


def concurrences(t_left, t_right):
    spec2 = model.two_bath_chain(
        2, EPSILON, COUPLING, GAMMA, 1 / t_left, GAMMA, 1 / t_right
    )
    spec3 = model.two_bath_chain(
        3, EPSILON, COUPLING, GAMMA, 1 / t_left, GAMMA, 1 / t_right
    )
    c2 = analysis.analytic_concurrence_2q(spec2)
    c3 = analysis.concurrence_first_last(
        analysis.analytic_steady_state_3q(spec3), 3
    )
    return c2, c3


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--ratio", type=float, default=1.5,
                        help="T_right / T_left (default 1.5)")
    parser.add_argument("--plot", help="write a PNG instead of a table")
    args = parser.parse_args()

    temperatures = np.linspace(0.05, 1.5, 150)
    pairs = np.array(
        [concurrences(t, args.ratio * t) for t in temperatures]
    )
    c2, c3 = pairs[:, 0], pairs[:, 1]

    above = temperatures[c3 > c2]
    print(f"bath temperature ratio T_right/T_left = {args.ratio:g}")
    print(f"max two-qubit C = {c2.max():.4f}, "
          f"max three-qubit C = {c3.max():.4f}")
    if above.size:
        print(f"three qubits beat two for T_left in "
              f"[{above[0]:.3f}, {above[-1]:.3f}]")
    else:
        print("no crossover on this grid")

    if args.plot:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(6, 4))
        ax.plot(temperatures, c2, label="2 qubits")
        ax.plot(temperatures, c3, label="3 qubits")
        ax.set_xlabel("left bath temperature")
        ax.set_ylabel("steady concurrence, first and last qubit")
        ax.legend()
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)
        print(f"wrote {args.plot}")


if __name__ == "__main__":
    main()
