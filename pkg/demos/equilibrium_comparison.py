"""Steady entanglement at thermal equilibrium versus temperature.

Both baths are held at the same temperature, so the chain relaxes to a
Gibbs state and the end-to-end concurrence is purely thermal.  The demo
sweeps the common temperature for the two- and three-qubit chains and
for two values of the splitting-to-coupling ratio, showing the finite
temperature window of entanglement and its shrinkage as epsilon/K grows.

Run:  python3 demos/equilibrium_comparison.py [--plot out.png]
"""

import argparse

import numpy as np

from thermalchain import analysis, model

COUPLING, GAMMA = 1.0, 1 / 50


def steady_concurrence(n_qubits, epsilon, temperature):
    beta = 1.0 / temperature
    spec = model.two_bath_chain(
        n_qubits, epsilon, COUPLING, GAMMA, beta, GAMMA, beta
    )
    if n_qubits == 2:
        return analysis.analytic_concurrence_2q(spec)
    return analysis.concurrence_first_last(
        analysis.analytic_steady_state_3q(spec), 3
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--plot", help="write a PNG instead of a table")
    args = parser.parse_args()

    temperatures = np.linspace(0.02, 2.0, 150)
    cases = {
        (n, eps): np.array(
            [steady_concurrence(n, eps, t) for t in temperatures]
        )
        for n in (2, 3)
        for eps in (1.5, 2.0)
    }

    for (n, eps), conc in cases.items():
        window = temperatures[conc > 0]
        peak = temperatures[np.argmax(conc)]
        print(f"{n} qubits, epsilon/K = {eps:g}:")
        if window.size:
            print(f"  entangled for T in [{window[0]:.3f}, {window[-1]:.3f}],"
                  f" max C = {conc.max():.4f} at T = {peak:.3f}")
        else:
            print("  no entanglement on this grid")

    if args.plot:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(6, 4))
        for (n, eps), conc in cases.items():
            ax.plot(temperatures, conc,
                    label=f"{n} qubits, eps/K = {eps:g}")
        ax.set_xlabel("temperature")
        ax.set_ylabel("steady concurrence, first and last qubit")
        ax.legend()
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)
        print(f"wrote {args.plot}")


if __name__ == "__main__":
    main()
