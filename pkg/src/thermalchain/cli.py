"""Command-line experiment runner.

Subcommands: `dynamics`, `steady`, `compare`, `validate`. Each reads an
optional YAML config plus repeatable `--set key=value` overrides and writes
CSV (or a JSON report for `validate`). Exit codes: 0 success, 1 validation
failure, 2 configuration or physics-domain error.
"""

import argparse
import json
import multiprocessing
import sys

import numpy as np

from . import analysis, config, dynamics, linalg, model, validate
from .errors import ConfigError, ThermalChainError

_MODE_BY_COMMAND = {
    "dynamics": ("dynamics",),
    "steady": ("steady",),
    "compare": ("compare-2v3", "sweep-equilibrium", "sweep-nonequilibrium"),
    "validate": ("validate",),
}


def _fmt(value):
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _write_csv(path, cfg, columns, rows):
    lines = []
    for key, value in config.flatten(cfg):
        if key == "output":
            continue  # keep the file content independent of its own path
        lines.append(f"# {key} = {value}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def run_dynamics(cfg):
    """Concurrence/purity/population trajectory for one configuration."""
    spec = config.build_chain_spec(cfg)
    config.check_frequencies(spec)
    h = model.build_hamiltonian(spec)
    liou = dynamics.build_liouvillian(h, model.build_channels(spec))
    rho0 = config.initial_state(str(cfg["initial_state"]), spec, h)
    linalg.validate_density_matrix(rho0, herm_tol=1e-10)

    grid = cfg["time_grid"]
    t_max = float(grid["t_max"])
    n_points = int(grid["n_points"])
    if t_max <= 0 or n_points < 2:
        raise ConfigError(f"bad time grid: t_max={t_max}, n_points={n_points}")
    times = np.linspace(0.0, t_max, n_points)

    tol = cfg["tolerances"]
    states = dynamics.evolve(
        liou, rho0, times,
        rtol=float(tol["rtol"]), atol=float(tol["atol"]),
    )
    w, u = linalg.hermitian_eig(h)

    columns = (["t", "C_first_last", "purity"]
               + [f"pop_{i + 1}" for i in range(spec.dim)]
               + ["trace_error"])
    rows = []
    for t, rho in zip(times, states):
        pops = np.real(np.diag(u.conj().T @ rho @ u))
        rows.append(
            [t, analysis.concurrence_first_last(rho, spec.n_qubits),
             linalg.purity(rho)]
            + list(pops)
            + [abs(np.trace(rho).real - 1.0)]
        )
    _write_csv(cfg["output"], cfg, columns, rows)
    return 0


def run_steady(cfg):
    """Numeric steady state with analytic cross-check columns."""
    spec = config.build_chain_spec(cfg)
    config.check_frequencies(spec)
    if spec.n_qubits > 4:
        raise ConfigError(
            "dense steady-state extraction is limited to n_qubits <= 4"
        )
    h = model.build_hamiltonian(spec)
    liou = dynamics.build_liouvillian(h, model.build_channels(spec))
    rho, gap = dynamics.steady_state(liou)

    w, u = linalg.hermitian_eig(h)
    in_eigenbasis = u.conj().T @ rho @ u
    pops = np.real(np.diag(in_eigenbasis))
    off = in_eigenbasis - np.diag(np.diag(in_eigenbasis))
    max_coherence = float(np.max(np.abs(off)))

    c_num = analysis.concurrence_first_last(rho, spec.n_qubits)
    if spec.n_qubits == 2:
        c_ana = analysis.analytic_concurrence_2q(spec)
    elif spec.n_qubits == 3:
        c_ana = analysis.concurrence_first_last(
            analysis.analytic_steady_state_3q(spec), 3
        )
    else:
        c_ana = float("nan")
    diff = abs(c_num - c_ana) if np.isfinite(c_ana) else float("nan")

    columns = ([f"pop_{i + 1}" for i in range(spec.dim)]
               + ["max_coherence", "C_inf_numeric", "C_inf_analytic",
                  "C_abs_diff", "spectral_gap"])
    rows = [list(pops) + [max_coherence, c_num, c_ana, diff, gap]]
    _write_csv(cfg["output"], cfg, columns, rows)
    return 0


def _compare_point(args):
    eps, k, g1, g2, t1, t2 = args
    spec2 = model.two_bath_chain(2, eps, k, g1, 1.0 / t1, g2, 1.0 / t2)
    spec3 = model.two_bath_chain(3, eps, k, g1, 1.0 / t1, g2, 1.0 / t2)
    c2 = analysis.analytic_concurrence_2q(spec2)
    c3 = analysis.concurrence_first_last(
        analysis.analytic_steady_state_3q(spec3), 3
    )
    return (t1, t2, c2, c3, c3 - c2)


def run_compare(cfg):
    """Steady concurrence of the 2- and 3-qubit chains over a T sweep."""
    spec = config.build_chain_spec(cfg)
    eps, k = spec.epsilon, spec.coupling
    if eps <= np.sqrt(2) * k:
        raise ConfigError(
            f"three-qubit branch needs epsilon/K > sqrt(2); got "
            f"{eps / k:.6g} (omega = {eps - np.sqrt(2) * k:.6g})"
        )
    gammas = [b.gamma for b in spec.baths]
    if len(gammas) != 2:
        raise ConfigError("compare needs exactly two baths")

    sweep = cfg["sweep"]
    t_min, t_max = float(sweep["t_min"]), float(sweep["t_max"])
    n_points, ratio = int(sweep["n_points"]), float(sweep["ratio"])
    if not (0 < t_min < t_max) or n_points < 2 or ratio <= 0:
        raise ConfigError(f"bad sweep section: {sweep}")

    grid = np.linspace(t_min, t_max, n_points)
    tasks = [(eps, k, gammas[0], gammas[1], t1, ratio * t1) for t1 in grid]
    threads = int(cfg.get("threads", 1))
    if threads > 1:
        with multiprocessing.Pool(threads) as pool:
            rows = pool.map(_compare_point, tasks)
    else:
        rows = [_compare_point(t) for t in tasks]

    columns = ["T_1", "T_2", "C_inf_2qubit", "C_inf_3qubit", "difference"]
    _write_csv(cfg["output"], cfg, columns, rows)
    return 0


def run_validate(cfg, swap_rates=False):
    """Full invariant suite; writes a JSON report."""
    report = validate.run_all(swap_rates=swap_rates)
    text = json.dumps(report, indent=2) + "\n"
    path = cfg["output"]
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)
    for check in report["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        print(
            f"[{status}] {check['name']}: "
            f"{check['value']:.3e} (threshold {check['threshold']:.3e})",
            file=sys.stderr,
        )
    return 0 if report["all_passed"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="thermalchain",
        description=(
            "Qubit chains between two thermal baths: dynamics, steady "
            "states and first-to-last concurrence."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("dynamics", "time evolution of concurrence and populations"),
        ("steady", "steady state with analytic cross-checks"),
        ("compare", "2- vs 3-qubit steady concurrence over a temperature sweep"),
        ("validate", "run the structural-invariant and oracle suite"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="YAML config file")
        p.add_argument("--output", help="output path (default: stdout)")
        p.add_argument("--threads", type=int, help="worker count for sweeps")
        p.add_argument(
            "--set", action="append", default=[], metavar="KEY=VALUE",
            help="override a config entry (repeatable)",
        )
        if name == "validate":
            p.add_argument(
                "--debug-swap-rates", action="store_true",
                help="deliberately swap channel rates (suite self-test)",
            )
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = config.load_config(args.config, args.set)
        if args.output is not None:
            cfg["output"] = args.output
        if args.threads is not None:
            cfg["threads"] = args.threads
        allowed = _MODE_BY_COMMAND[args.command]
        if cfg["mode"] is None:
            cfg["mode"] = allowed[0]
        elif cfg["mode"] not in allowed:
            raise ConfigError(
                f"mode {cfg['mode']!r} is not valid for subcommand "
                f"{args.command!r} (allowed: {', '.join(allowed)})"
            )
        if args.command == "dynamics":
            return run_dynamics(cfg)
        if args.command == "steady":
            return run_steady(cfg)
        if args.command == "compare":
            return run_compare(cfg)
        return run_validate(cfg, swap_rates=args.debug_swap_rates)
    except (ConfigError, ThermalChainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
