"""Physical model: XX qubit chain, thermal-bath rates and jump channels.

The chain Hamiltonian is

    H = sum_i (eps/2) sz_i + K sum_i (sp_i sm_{i+1} + sm_i sp_{i+1}),

with sz|1> = +|1>, sp|0> = |1>, so |0...0> is the global ground state for
eps > 0. Each bath couples to one site through that site's lowering
operator; the secular master equation then needs the decomposition of the
site lowering operator into eigenoperators of H, one per Bohr frequency.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    FrequencyTooSmallError,
    IndexOutOfRangeError,
    NearDegenerateGapError,
)

# Single-qubit operators in the fixed (|0>, |1>) basis order.
IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_Z = np.diag([-1.0, 1.0]).astype(complex)
SIGMA_PLUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)

MIN_BETA_OMEGA = 1e-12


@dataclass(frozen=True)
class BathSpec:
    """One thermal bosonic bath attached to a single chain site."""

    site: int
    gamma: float  # relaxation-rate scale, > 0
    beta: float   # inverse temperature, > 0

    def __post_init__(self):
        if self.gamma <= 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if self.beta <= 0:
            raise ValueError(f"beta must be > 0, got {self.beta}")

    @property
    def temperature(self):
        return 1.0 / self.beta


@dataclass(frozen=True)
class ChainSpec:
    """Full physical configuration of the chain plus its baths."""

    n_qubits: int
    epsilon: float
    coupling: float
    baths: tuple = ()

    def __post_init__(self):
        if not 2 <= self.n_qubits <= 8:
            raise ValueError(f"n_qubits must be in [2, 8], got {self.n_qubits}")
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")
        object.__setattr__(self, "baths", tuple(self.baths))
        sites = [b.site for b in self.baths]
        if len(set(sites)) != len(sites):
            raise ValueError(f"bath sites must be distinct, got {sites}")
        for b in self.baths:
            if not 0 <= b.site < self.n_qubits:
                raise IndexOutOfRangeError(
                    f"bath site {b.site} not in [0, {self.n_qubits})"
                )

    @property
    def dim(self):
        return 2**self.n_qubits


def two_bath_chain(n_qubits, epsilon, coupling, gamma1, beta1, gamma2, beta2):
    """Convenience constructor: baths on the first and last site."""
    return ChainSpec(
        n_qubits=n_qubits,
        epsilon=epsilon,
        coupling=coupling,
        baths=(
            BathSpec(site=0, gamma=gamma1, beta=beta1),
            BathSpec(site=n_qubits - 1, gamma=gamma2, beta=beta2),
        ),
    )


def site_operator(op, site, n_sites):
    """Embed a single-qubit operator at `site` into the 2^n space."""
    if not 0 <= site < n_sites:
        raise IndexOutOfRangeError(f"site {site} not in [0, {n_sites})")
    ops = [IDENTITY_2] * n_sites
    ops[site] = np.asarray(op, dtype=complex)
    return linalg.kron_all(ops)


def build_hamiltonian(spec):
    """Chain Hamiltonian: on-site splittings plus nearest-neighbour XX hopping."""
    n = spec.n_qubits
    h = np.zeros((spec.dim, spec.dim), dtype=complex)
    for i in range(n):
        h += 0.5 * spec.epsilon * site_operator(SIGMA_Z, i, n)
    for i in range(n - 1):
        hop = site_operator(SIGMA_PLUS, i, n) @ site_operator(SIGMA_MINUS, i + 1, n)
        h += spec.coupling * (hop + hop.conj().T)
    return h


def bose_occupation(beta, omega):
    """Bose-Einstein occupancy n(omega) = 1/(exp(beta*omega) - 1)."""
    x = beta * omega
    if x < MIN_BETA_OMEGA:
        raise FrequencyTooSmallError(
            f"beta*omega = {x:.3e} < {MIN_BETA_OMEGA:.1e}: occupancy diverges"
        )
    # exp(-x)/(1 - exp(-x)) is overflow-safe for arbitrarily large x
    return math.exp(-x) / -math.expm1(-x)


def channel_rates(bath, omega):
    """Excitation and decay rates of one bath at Bohr frequency omega.

    rate_up = gamma * n(omega), rate_down = gamma * (n(omega) + 1);
    the ratio rate_up/rate_down is exactly exp(-beta*omega).
    """
    n = bose_occupation(bath.beta, omega)
    return bath.gamma * n, bath.gamma * (n + 1.0)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigensystem of the chain Hamiltonian plus its Bohr-frequency table."""

    eigenvalues: np.ndarray          # ascending
    eigenvectors: np.ndarray         # unitary, columns match eigenvalues
    bohr_frequencies: tuple          # distinct positive gaps, ascending
    bin_tolerance: float


def default_bin_tolerance(eigenvalues):
    scale = np.max(np.abs(eigenvalues))
    return 1e-9 * (scale if scale > 0 else 1.0)


def _fix_eigenvector_phases(u):
    # Make the first nonzero amplitude of every column real positive, so
    # channel matrices are deterministic across eigensolver runs.
    u = u.copy()
    for k in range(u.shape[1]):
        col = u[:, k]
        idx = np.argmax(np.abs(col) > 1e-12)
        phase = col[idx] / abs(col[idx])
        u[:, k] = col / phase
    return u


def diagonalize(h, bin_tolerance=None):
    """Diagonalize a Hermitian matrix and bin its positive eigenvalue gaps.

    Gaps closer than `bin_tolerance` are merged into one Bohr frequency.
    Raises NearDegenerateGapError when two binned frequencies differ by an
    amount in (bin_tolerance, 10*bin_tolerance): the secular grouping would
    be unreliable there.
    """
    w, u = linalg.hermitian_eig(h)
    if bin_tolerance is None:
        bin_tolerance = default_bin_tolerance(w)
    u = _fix_eigenvector_phases(u)

    gaps = np.sort([w[b] - w[a]
                    for a in range(len(w)) for b in range(len(w))
                    if w[b] - w[a] > bin_tolerance])
    bins = []
    for g in gaps:
        if bins and g - bins[-1][-1] <= bin_tolerance:
            bins[-1].append(g)
        else:
            bins.append([g])
    freqs = [float(np.mean(b)) for b in bins]

    for f1, f2 in zip(freqs, freqs[1:]):
        d = f2 - f1
        if bin_tolerance < d <= 10 * bin_tolerance:
            raise NearDegenerateGapError(
                f"Bohr frequencies {f1!r} and {f2!r} differ by {d:.3e}, "
                f"within 10x the bin tolerance {bin_tolerance:.1e}"
            )
    return SpectralDecomposition(
        eigenvalues=w,
        eigenvectors=u,
        bohr_frequencies=tuple(freqs),
        bin_tolerance=bin_tolerance,
    )


def eigenoperators(decomp, site_op):
    """Decompose `site_op` into lowering eigenoperators of the Hamiltonian.

    Returns [(omega, V(omega)), ...] over the positive Bohr frequencies with
    nonzero projection; each V satisfies [H, V] = -omega V. Components of
    `site_op` that do not lower the energy are not representable here and are
    simply left out (build_channels checks completeness).
    """
    w = decomp.eigenvalues
    u = decomp.eigenvectors
    a = u.conj().T @ np.asarray(site_op, dtype=complex) @ u
    tol = decomp.bin_tolerance

    out = []
    for omega in decomp.bohr_frequencies:
        # Bins are separated by > 10*tol (diagonalize guarantees it), so a
        # 5*tol matching window cannot capture a neighbouring bin.
        mask = np.abs((w[None, :] - w[:, None]) - omega) <= 5 * tol
        m = np.where(mask, a, 0.0)
        if np.linalg.norm(m) < 1e-12:
            continue
        v = u @ m @ u.conj().T
        out.append((omega, v))
    return out


@dataclass(frozen=True)
class JumpChannel:
    """One dissipative channel: a bath, a Bohr frequency and its rates."""

    bath_index: int
    omega: float
    lowering_op: np.ndarray
    rate_up: float    # excitation, gamma * n(omega)
    rate_down: float  # decay, gamma * (n(omega) + 1)


def _two_qubit_table():
    # Explicit transition operators of the two-qubit chain in the standard
    # basis. Keys: (site, frequency label), frequency labels are
    # "eps-K" and "eps+K".
    e = np.eye(4, dtype=complex)
    m1 = e[:, 0]                       # |00>
    m2 = e[:, 3]                       # |11>
    m3 = (e[:, 2] + e[:, 1]) / np.sqrt(2)   # (|10> + |01>)/sqrt(2)
    m4 = (e[:, 1] - e[:, 2]) / np.sqrt(2)   # (|01> - |10>)/sqrt(2)

    def ketbra(a, b):
        return np.outer(a, b.conj())

    s = 1 / np.sqrt(2)
    return {
        (0, "eps+K"): s * (ketbra(m1, m3) + ketbra(m4, m2)),
        (0, "eps-K"): s * (ketbra(m3, m2) - ketbra(m1, m4)),
        (1, "eps+K"): s * (ketbra(m1, m3) - ketbra(m4, m2)),
        (1, "eps-K"): s * (ketbra(m3, m2) + ketbra(m1, m4)),
    }


def _three_qubit_table():
    # Explicit transition operators of the three-qubit chain; frequency
    # labels "eps", "eps-r2K", "eps+r2K".
    e = np.eye(8, dtype=complex)
    r2 = np.sqrt(2)
    m = [None] * 9
    m[1] = e[:, 0b000]
    m[2] = (e[:, 0b001] - e[:, 0b100]) / r2
    m[3] = (e[:, 0b011] - e[:, 0b110]) / r2
    m[4] = e[:, 0b111]
    m[5] = (e[:, 0b100] - r2 * e[:, 0b010] + e[:, 0b001]) / 2
    m[6] = (e[:, 0b110] - r2 * e[:, 0b101] + e[:, 0b011]) / 2
    m[7] = (e[:, 0b100] + r2 * e[:, 0b010] + e[:, 0b001]) / 2
    m[8] = (e[:, 0b110] + r2 * e[:, 0b101] + e[:, 0b011]) / 2

    def kb(a, b):
        return np.outer(m[a], m[b].conj())

    return {
        (0, "eps"): (-kb(1, 2) + kb(3, 4) - kb(5, 6) + kb(7, 8)) / r2,
        (0, "eps-r2K"): (kb(1, 5) - kb(2, 6) - kb(7, 3) + kb(8, 4)) / 2,
        (0, "eps+r2K"): (kb(1, 7) + kb(2, 8) + kb(5, 3) + kb(6, 4)) / 2,
        (2, "eps"): (kb(1, 2) - kb(3, 4) - kb(5, 6) + kb(7, 8)) / r2,
        (2, "eps-r2K"): (kb(1, 5) + kb(2, 6) + kb(7, 3) + kb(8, 4)) / 2,
        (2, "eps+r2K"): (kb(1, 7) - kb(2, 8) - kb(5, 3) + kb(6, 4)) / 2,
    }


def analytic_channel_tables(spec):
    """Hard-coded jump channels for the 2- and 3-qubit chains.

    Validation layer only: the generic eigenoperator construction is the
    source of truth, and these tables cross-check it. The operator-to-
    frequency pairing is the derived one (for two qubits the first table
    operator lowers by eps + K, the second by eps - K).
    """
    eps, k = spec.epsilon, spec.coupling
    if spec.n_qubits == 2:
        table = _two_qubit_table()
        freq = {"eps-K": eps - k, "eps+K": eps + k}
    elif spec.n_qubits == 3:
        table = _three_qubit_table()
        freq = {"eps": eps, "eps-r2K": eps - np.sqrt(2) * k,
                "eps+r2K": eps + np.sqrt(2) * k}
    else:
        raise ValueError(
            f"analytic tables exist only for 2 or 3 qubits, "
            f"got {spec.n_qubits}"
        )

    channels = []
    for bath_index, bath in enumerate(spec.baths):
        for (site, label), v in table.items():
            if site != bath.site:
                continue
            omega = freq[label]
            if omega <= 0:
                raise FrequencyTooSmallError(
                    f"table frequency {label} = {omega:.6g} is not positive"
                )
            rate_up, rate_down = channel_rates(bath, omega)
            channels.append(JumpChannel(
                bath_index=bath_index,
                omega=omega,
                lowering_op=v,
                rate_up=rate_up,
                rate_down=rate_down,
            ))
    return channels


def build_channels(spec, bin_tolerance=None, decomp=None):
    """Derive every jump channel of the chain-plus-baths model.

    One channel per (bath, bath-relevant Bohr frequency); channels from
    different baths never mix (independent reservoirs). Raises
    FrequencyTooSmallError if part of a site lowering operator sits at a
    vanishing or non-positive Bohr frequency (e.g. eps = sqrt(2) K at n=3).
    """
    h = build_hamiltonian(spec)
    if decomp is None:
        decomp = diagonalize(h, bin_tolerance)
    channels = []
    for bath_index, bath in enumerate(spec.baths):
        sm = site_operator(SIGMA_MINUS, bath.site, spec.n_qubits)
        ops = eigenoperators(decomp, sm)
        total = sum((v for _, v in ops), np.zeros_like(sm))
        residual = np.max(np.abs(total - sm))
        if residual > 1e-10:
            raise FrequencyTooSmallError(
                f"site {bath.site}: lowering-operator weight {residual:.3e} "
                "sits at a vanishing or negative Bohr frequency; "
                "the secular channel construction does not apply"
            )
        for omega, v in ops:
            rate_up, rate_down = channel_rates(bath, omega)
            channels.append(JumpChannel(
                bath_index=bath_index,
                omega=omega,
                lowering_op=v,
                rate_up=rate_up,
                rate_down=rate_down,
            ))
    return channels
