"""Experiment configuration: YAML file + command-line overrides.

A config is a nested mapping; `--set key.subkey=value` overrides single
entries. The full effective config is echoed into every CSV header so each
output file documents how it was produced.
"""

import copy

import numpy as np
import yaml

from . import analysis, model
from .errors import ConfigError

DEFAULTS = {
    "mode": None,
    "chain": {
        "n_qubits": 3,
        "epsilon": 1.5,
        "coupling": 1.0,
        "baths": [
            {"site": 0, "gamma": 0.02, "beta": 10.0},
            {"site": -1, "gamma": 0.02, "beta": 10.0},
        ],
    },
    "initial_state": "w3",
    "time_grid": {"t_max": 2500.0, "n_points": 101},
    "sweep": {"t_min": 0.05, "t_max": 3.0, "n_points": 200, "ratio": 1.0},
    "output": None,
    "threads": 1,
    "tolerances": {"rtol": 1e-10, "atol": 1e-12},
}

MODES = (
    "dynamics",
    "steady",
    "sweep-equilibrium",
    "sweep-nonequilibrium",
    "compare-2v3",
    "validate",
)


def _deep_update(base, extra):
    for key, value in extra.items():
        if (key in base and isinstance(base[key], dict)
                and isinstance(value, dict)):
            _deep_update(base[key], value)
        else:
            base[key] = value


def load_config(path=None, overrides=()):
    """Build the effective config dict from defaults, file and overrides."""
    cfg = copy.deepcopy(DEFAULTS)
    if path is not None:
        with open(path) as fh:
            data = yaml.safe_load(fh)
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigError(f"config file {path} must hold a mapping")
        _deep_update(cfg, data)
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        key, _, raw = item.partition("=")
        value = yaml.safe_load(raw)
        node = cfg
        parts = key.split(".")
        for p in parts[:-1]:
            if not isinstance(node.get(p), dict):
                node[p] = {}
            node = node[p]
        node[parts[-1]] = value
    return cfg


def flatten(cfg, prefix=""):
    """Flatten a nested config to sorted (dotted-key, value) pairs."""
    items = []
    for key in sorted(cfg):
        value = cfg[key]
        dotted = f"{prefix}{key}"
        if isinstance(value, dict):
            items.extend(flatten(value, dotted + "."))
        else:
            items.append((dotted, value))
    return items


def build_chain_spec(cfg):
    """ChainSpec from the config's `chain` section; -1 site means last."""
    chain = cfg["chain"]
    try:
        n = int(chain["n_qubits"])
        baths = tuple(
            model.BathSpec(
                site=(int(b["site"]) % n),
                gamma=float(b["gamma"]),
                beta=float(b["beta"]),
            )
            for b in chain["baths"]
        )
        return model.ChainSpec(
            n_qubits=n,
            epsilon=float(chain["epsilon"]),
            coupling=float(chain["coupling"]),
            baths=baths,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid chain section: {exc}") from exc


def check_frequencies(spec):
    """Reject configurations whose transition frequencies are not positive."""
    if spec.n_qubits in (2, 3):
        freqs = analysis.transition_frequencies(spec)
        bad = [f for f in freqs if f <= 1e-9]
        if bad:
            names = ", ".join(f"omega = {f:.6g}" for f in bad)
            raise ConfigError(
                f"non-positive transition frequency ({names}) for "
                f"epsilon = {spec.epsilon}, K = {spec.coupling}; "
                "the secular construction requires all omega > 0"
            )


def initial_state(tag, spec, hamiltonian):
    """Resolve an initial-state tag into a density matrix.

    Tags: "w3", "ground", "gibbs:<beta>", or a path to an .npy file.
    """
    if tag == "w3":
        if spec.n_qubits != 3:
            raise ConfigError("initial state w3 requires a 3-qubit chain")
        return analysis.w_state(3)
    if tag == "ground":
        rho = np.zeros((spec.dim, spec.dim), dtype=complex)
        rho[0, 0] = 1.0
        return rho
    if tag.startswith("gibbs:"):
        try:
            beta = float(tag.split(":", 1)[1])
        except ValueError as exc:
            raise ConfigError(f"bad gibbs tag {tag!r}") from exc
        return analysis.gibbs_state(hamiltonian, beta)
    if tag.endswith(".npy"):
        rho = np.load(tag)
        if rho.shape != (spec.dim, spec.dim):
            raise ConfigError(
                f"state file {tag} has shape {rho.shape}, "
                f"expected ({spec.dim}, {spec.dim})"
            )
        return rho.astype(complex)
    raise ConfigError(f"unknown initial_state tag {tag!r}")
