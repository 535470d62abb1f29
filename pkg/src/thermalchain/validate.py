"""Structural-invariant and oracle-equivalence suite behind `validate`.

Every check returns a measured value, its threshold and a pass flag, so a
report can be written machine-readably and the whole run reduced to one
exit code.
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import analysis, dynamics, linalg, model


@dataclass
class CheckResult:
    name: str
    value: float
    threshold: float
    passed: bool

    def to_dict(self):
        return asdict(self)


def _check(name, value, threshold):
    return CheckResult(
        name=name,
        value=float(value),
        threshold=float(threshold),
        passed=bool(value <= threshold),
    )


def _reference_specs():
    return [
        model.two_bath_chain(2, 1.5, 1.0, 0.02, 5.0, 0.02, 3.0),
        model.two_bath_chain(3, 1.5, 1.0, 0.02, 5.0, 0.02, 3.0),
        model.two_bath_chain(2, 1.5, 1.0, 0.02, 10.0, 0.02, 10.0),
        model.two_bath_chain(3, 1.5, 1.0, 0.02, 10.0, 0.02, 10.0),
    ]


def _maybe_swap(channels, swap_rates):
    if not swap_rates:
        return channels
    return [
        model.JumpChannel(
            bath_index=c.bath_index,
            omega=c.omega,
            lowering_op=c.lowering_op,
            rate_up=c.rate_down,   # deliberately wrong: self-test sabotage
            rate_down=c.rate_up,
        )
        for c in channels
    ]


def _random_spec(rng, n_qubits):
    min_gap = math.sqrt(2.0) if n_qubits == 3 else 1.0
    k = rng.uniform(0.1, 2.0)
    eps = min_gap * k + rng.uniform(0.1, 3.0)
    g1, g2 = rng.uniform(1e-3, 0.1, size=2)
    b1, b2 = rng.uniform(0.2, 20.0, size=2)
    return model.two_bath_chain(n_qubits, eps, k, g1, b1, g2, b2)


def random_specs(n_qubits, count, seed):
    rng = np.random.default_rng(seed)
    return [_random_spec(rng, n_qubits) for _ in range(count)]


def check_generator_structure(specs=None):
    """Trace and Hermiticity preservation of the assembled generators."""
    specs = specs or _reference_specs()
    rng = np.random.default_rng(7)
    worst_trace = 0.0
    worst_herm = 0.0
    for spec in specs:
        h = model.build_hamiltonian(spec)
        liou = dynamics.build_liouvillian(h, model.build_channels(spec))
        d = liou.dim
        tr_vec = dynamics.vectorize(np.eye(d))
        worst_trace = max(
            worst_trace,
            np.linalg.norm(tr_vec.conj() @ liou.generator) / liou.norm,
        )
        for _ in range(4):
            a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            herm = a + a.conj().T
            out = dynamics.apply_generator(liou, herm)
            worst_herm = max(
                worst_herm,
                np.max(np.abs(out - out.conj().T)) / max(np.max(np.abs(herm)), 1),
            )
    return [
        _check("generator_trace_preservation", worst_trace, 1e-12),
        _check("generator_hermiticity_preservation", worst_herm, 1e-12),
    ]


def check_channel_structure(specs=None):
    """Eigenoperator identity, completeness and detailed balance."""
    specs = specs or _reference_specs()
    worst_comm = 0.0
    worst_complete = 0.0
    worst_balance = 0.0
    for spec in specs:
        h = model.build_hamiltonian(spec)
        channels = model.build_channels(spec)
        per_site = {}
        for c in channels:
            comm = h @ c.lowering_op - c.lowering_op @ h
            worst_comm = max(
                worst_comm,
                np.linalg.norm(comm + c.omega * c.lowering_op),
            )
            bath = spec.baths[c.bath_index]
            worst_balance = max(
                worst_balance,
                abs(c.rate_up / c.rate_down - math.exp(-bath.beta * c.omega)),
            )
            per_site.setdefault(bath.site, []).append(c.lowering_op)
        for site, ops in per_site.items():
            sm = model.site_operator(model.SIGMA_MINUS, site, spec.n_qubits)
            worst_complete = max(
                worst_complete, np.max(np.abs(sum(ops) - sm))
            )
    return [
        _check("eigenoperator_identity", worst_comm, 1e-10),
        _check("channel_completeness", worst_complete, 1e-12),
        _check("detailed_balance", worst_balance, 1e-14),
    ]


def check_analytic_tables():
    """Generic channels span the same dissipator as the hard-coded tables."""
    worst = 0.0
    for n in (2, 3):
        spec = model.two_bath_chain(n, 1.5, 1.0, 0.02, 5.0, 0.02, 3.0)
        def dissipator(channels):
            gen = 0.0
            for c in channels:
                v = c.lowering_op
                gen = gen + c.rate_down * dynamics.dissipator_superoperator(v)
                gen = gen + c.rate_up * dynamics.dissipator_superoperator(v.conj().T)
            return gen
        generic = dissipator(model.build_channels(spec))
        table = dissipator(model.analytic_channel_tables(spec))
        worst = max(worst, np.max(np.abs(generic - table)))
    return [_check("analytic_table_dissipator", worst, 1e-12)]


def check_oracles(count=20, seed=11, swap_rates=False):
    """Closed-form steady states against the null-space solver."""
    results = []
    for n, oracle in (
        (2, analysis.analytic_steady_state_2q),
        (3, analysis.analytic_steady_state_3q),
    ):
        worst = 0.0
        for spec in random_specs(n, count, seed + n):
            h = model.build_hamiltonian(spec)
            channels = _maybe_swap(model.build_channels(spec), swap_rates)
            liou = dynamics.build_liouvillian(h, channels)
            rho_num, _gap = dynamics.steady_state(liou)
            worst = max(worst, linalg.trace_distance(rho_num, oracle(spec)))
        results.append(_check(f"oracle_equivalence_{n}q", worst, 1e-10))
    return results


def check_concurrence_identity(count=50, seed=29):
    """Closed-form steady concurrence equals the Wootters value."""
    worst = 0.0
    for spec in random_specs(2, count, seed):
        c_formula = analysis.analytic_concurrence_2q(spec)
        c_wootters = analysis.concurrence(analysis.analytic_steady_state_2q(spec))
        worst = max(worst, abs(c_formula - c_wootters))
    return [_check("concurrence_formula_identity", worst, 1e-12)]


def check_gibbs_limit(swap_rates=False):
    """Equal-temperature steady state equals the Gibbs state."""
    worst = 0.0
    for n in (2, 3):
        for beta in (0.5, 2.0, 8.0):
            for ratio in (1.6, 2.5):
                spec = model.two_bath_chain(
                    n, ratio, 1.0, 0.02, beta, 0.05, beta
                )
                h = model.build_hamiltonian(spec)
                channels = _maybe_swap(model.build_channels(spec), swap_rates)
                liou = dynamics.build_liouvillian(h, channels)
                rho, _gap = dynamics.steady_state(liou)
                worst = max(
                    worst,
                    linalg.trace_distance(rho, analysis.gibbs_state(h, beta)),
                )
    return [_check("gibbs_equilibrium_limit", worst, 1e-8)]


def check_uniqueness(specs=None):
    """Exactly one null eigenvalue; gap well above rate scale."""
    specs = specs or _reference_specs()
    worst_second = 0.0   # second-smallest |lambda| relative to floor, inverted
    worst_gap = np.inf
    for spec in specs:
        h = model.build_hamiltonian(spec)
        liou = dynamics.build_liouvillian(h, model.build_channels(spec))
        w = np.linalg.eigvals(liou.generator)
        mags = np.sort(np.abs(w))
        floor = 1e-10 * liou.norm
        worst_second = max(worst_second, mags[0] / floor)
        gamma_min = min(b.gamma for b in spec.baths)
        _rho, gap = dynamics.steady_state(liou)
        worst_gap = min(worst_gap, gap / (1e-6 * gamma_min))
    return [
        _check("uniqueness_null_eigenvalue", worst_second, 1.0),
        # gap check is a lower bound: report 1/margin so <= 1 means pass
        _check("spectral_gap_margin", 1.0 / worst_gap, 1.0),
    ]


def check_trajectory_invariants():
    """Trace, Hermiticity and positivity along a reference trajectory."""
    spec = model.two_bath_chain(3, 1.5, 1.0, 0.02, 5.0, 0.02, 3.0)
    h = model.build_hamiltonian(spec)
    liou = dynamics.build_liouvillian(h, model.build_channels(spec))
    times = np.linspace(0.0, 300.0, 31)
    worst_trace = 0.0
    worst_pos = 0.0
    for rho in dynamics.evolve(liou, analysis.w_state(3), times):
        worst_trace = max(worst_trace, abs(np.trace(rho).real - 1.0))
        worst_pos = max(worst_pos, -min(np.linalg.eigvalsh(rho).min(), 0.0))
    return [
        _check("trajectory_trace_conservation", worst_trace, 1e-8),
        _check("trajectory_positivity", worst_pos, 1e-9),
    ]


def run_all(swap_rates=False):
    """Run the full suite; returns a report dict."""
    checks = []
    checks += check_generator_structure()
    checks += check_channel_structure()
    checks += check_analytic_tables()
    checks += check_oracles(swap_rates=swap_rates)
    checks += check_concurrence_identity()
    checks += check_gibbs_limit(swap_rates=swap_rates)
    checks += check_uniqueness()
    checks += check_trajectory_invariants()
    return {
        "checks": [c.to_dict() for c in checks],
        "all_passed": all(c.passed for c in checks),
    }
