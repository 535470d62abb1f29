"""Entanglement measures and closed-form steady states.

The two- and three-qubit chains admit exact nonequilibrium steady states
built from per-frequency summed bath rates. Convention used throughout:
for transition frequency omega_i,

    x_plus[i]  = sum over baths of gamma_j * (n_j(omega_i) + 1)   (decay)
    x_minus[i] = sum over baths of gamma_j * n_j(omega_i)         (excitation)

so x_plus > x_minus and the global ground state carries the largest
population in the equal low-temperature limit.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import linalg, model
from .errors import DimensionMismatchError

SQRT2 = math.sqrt(2.0)


def concurrence(rho):
    """Wootters concurrence of a two-qubit state, in [0, 1].

    C = max(0, l1 - l2 - l3 - l4) with l_i the descending square roots of
    the eigenvalues of rho (sy kron sy) conj(rho) (sy kron sy).
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise DimensionMismatchError(f"expected a 4x4 state, got {rho.shape}")
    sy = np.array([[0.0, -1j], [1j, 0.0]])
    flip = np.kron(sy, sy)
    rho_tilde = flip @ rho.conj() @ flip

    def psd_sqrt(m):
        w, u = np.linalg.eigh((m + m.conj().T) / 2)
        # clip numerical noise on a PSD-by-construction spectrum
        return (u * np.sqrt(np.clip(w, 0.0, None))) @ u.conj().T

    # The lambda_i are the singular values of sqrt(rho~) sqrt(rho): same
    # values as the square roots of the eigenvalues of rho rho~, but
    # without the precision loss of square-rooting near-zero eigenvalues.
    lam = scipy.linalg.svdvals(psd_sqrt(rho_tilde) @ psd_sqrt(rho))
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence_first_last(rho, n_sites):
    """Concurrence between the first and last qubit of the chain."""
    if n_sites == 2:
        return concurrence(rho)
    reduced = linalg.partial_trace(rho, [0, n_sites - 1], n_sites)
    return concurrence(reduced)


def transition_frequencies(spec):
    """Bath-relevant transition frequencies, in the conventional order.

    Two qubits: (eps - K, eps + K). Three qubits: (eps, eps - sqrt(2) K,
    eps + sqrt(2) K).
    """
    eps, k = spec.epsilon, spec.coupling
    if spec.n_qubits == 2:
        return (eps - k, eps + k)
    if spec.n_qubits == 3:
        return (eps, eps - SQRT2 * k, eps + SQRT2 * k)
    raise ValueError(
        f"closed-form frequency table exists only for 2 or 3 qubits, "
        f"got {spec.n_qubits}"
    )


@dataclass(frozen=True)
class XCoefficients:
    """Per-frequency bath rates summed over both reservoirs."""

    frequencies: tuple
    x_minus: tuple  # total excitation rate per frequency
    x_plus: tuple   # total decay rate per frequency

    @property
    def x_total(self):
        return tuple(p + m for p, m in zip(self.x_plus, self.x_minus))


def x_coefficients(spec):
    """Summed up/down rates of both baths at each transition frequency."""
    freqs = transition_frequencies(spec)
    x_minus, x_plus = [], []
    for omega in freqs:
        up = down = 0.0
        for bath in spec.baths:
            u, d = model.channel_rates(bath, omega)
            up += u
            down += d
        x_minus.append(up)
        x_plus.append(down)
    return XCoefficients(
        frequencies=tuple(freqs),
        x_minus=tuple(x_minus),
        x_plus=tuple(x_plus),
    )


def analytic_steady_state_2q(spec):
    """Closed-form two-qubit steady state in the standard basis.

    X-structured matrix: diagonal products of per-frequency rate fractions
    plus a central coherence block between |01> and |10>.
    """
    if spec.n_qubits != 2:
        raise DimensionMismatchError(f"need n_qubits=2, got {spec.n_qubits}")
    x = x_coefficients(spec)
    x1m, x2m = x.x_minus
    x1p, x2p = x.x_plus
    norm = x.x_total[0] * x.x_total[1]

    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = x1p * x2p   # |00>, ground state: decay * decay
    rho[3, 3] = x1m * x2m   # |11>
    rho[1, 1] = rho[2, 2] = 0.5 * (x1p * x2m + x1m * x2p)
    rho[1, 2] = rho[2, 1] = 0.5 * (x1p * x2m - x1m * x2p)
    return rho / norm


def analytic_concurrence_2q(spec):
    """Closed-form steady-state concurrence of the two-qubit chain."""
    x = x_coefficients(spec)
    x1m, x2m = x.x_minus
    x1p, x2p = x.x_plus
    norm = x.x_total[0] * x.x_total[1]
    return (2.0 / norm) * max(
        0.0,
        0.5 * abs(x1p * x2m - x1m * x2p) - math.sqrt(x1m * x1p * x2m * x2p),
    )


def _three_qubit_eigenbasis():
    """Columns: the eight energy eigenvectors of the three-qubit chain."""
    e = np.eye(8, dtype=complex)

    def ket(*bits):
        return e[:, int("".join(map(str, bits)), 2)]

    cols = [
        ket(0, 0, 0),
        (ket(0, 0, 1) - ket(1, 0, 0)) / SQRT2,
        (ket(0, 1, 1) - ket(1, 1, 0)) / SQRT2,
        ket(1, 1, 1),
        (ket(1, 0, 0) - SQRT2 * ket(0, 1, 0) + ket(0, 0, 1)) / 2,
        (ket(1, 1, 0) - SQRT2 * ket(1, 0, 1) + ket(0, 1, 1)) / 2,
        (ket(1, 0, 0) + SQRT2 * ket(0, 1, 0) + ket(0, 0, 1)) / 2,
        (ket(1, 1, 0) + SQRT2 * ket(1, 0, 1) + ket(0, 1, 1)) / 2,
    ]
    return np.column_stack(cols)


def three_qubit_eigenvalues(spec):
    """Energies of the eigenbasis columns, same order."""
    eps, k = spec.epsilon, spec.coupling
    return np.array([
        -1.5 * eps,
        -0.5 * eps,
        +0.5 * eps,
        +1.5 * eps,
        -0.5 * eps - SQRT2 * k,
        +0.5 * eps - SQRT2 * k,
        -0.5 * eps + SQRT2 * k,
        +0.5 * eps + SQRT2 * k,
    ])


def analytic_steady_state_3q(spec):
    """Closed-form three-qubit steady state, diagonal in the energy basis.

    The eight populations are triple products of per-frequency rate
    fractions; the ground state gets the all-decay product. Returned in the
    standard computational basis.
    """
    if spec.n_qubits != 3:
        raise DimensionMismatchError(f"need n_qubits=3, got {spec.n_qubits}")
    x = x_coefficients(spec)
    (x1m, x2m, x3m) = x.x_minus
    (x1p, x2p, x3p) = x.x_plus
    norm = x.x_total[0] * x.x_total[1] * x.x_total[2]

    populations = np.array([
        x1p * x2p * x3p,  # ground state
        x1m * x2p * x3p,
        x1p * x2m * x3m,
        x1m * x2m * x3m,
        x1p * x2m * x3p,
        x1m * x2m * x3p,
        x1p * x2p * x3m,
        x1m * x2p * x3m,
    ]) / norm
    u = _three_qubit_eigenbasis()
    return (u * populations) @ u.conj().T


def gibbs_state(h, beta):
    """Thermal equilibrium state exp(-beta H) / Tr[exp(-beta H)]."""
    w, u = linalg.hermitian_eig(h)
    p = np.exp(-beta * (w - w.min()))  # shift avoids overflow at large beta
    p /= p.sum()
    return (u * p) @ u.conj().T


def w_state(n=3):
    """Projector onto the symmetric single-excitation W state (n=3 only)."""
    if n != 3:
        raise ValueError(f"only the three-qubit W state is supported, got n={n}")
    psi = np.zeros(8, dtype=complex)
    psi[[4, 2, 1]] = 1.0 / math.sqrt(3.0)  # |100>, |010>, |001>
    return np.outer(psi, psi.conj())
