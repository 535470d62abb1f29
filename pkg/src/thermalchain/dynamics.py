"""Liouvillian assembly, time propagation and steady-state extraction.

Vectorization is column-stacking throughout: vec(A X B) = (B^T kron A) vec(X),
so the generator reads

    L = -i (I kron H - H^T kron I)
        + sum_channels rate * (conj(V) kron V
                               - 1/2 (I kron V†V + (V†V)^T kron I)).
"""

from dataclasses import dataclass

import numpy as np
import scipy.integrate
import scipy.linalg

from .errors import (
    DegenerateSteadyStateError,
    DimensionMismatchError,
    PositivityLostError,
    ToleranceNotMetError,
)

DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-12
TRACE_DRIFT_TOL = 1e-8
POSITIVITY_FLOOR = -1e-6
GAP_FLOOR_REL = 1e-10
EXPM_MAX_DIM = 4096


def vectorize(rho):
    """Column-stack a matrix into a vector."""
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def unvectorize(vec):
    """Inverse of `vectorize`."""
    vec = np.asarray(vec, dtype=complex)
    d = round(np.sqrt(vec.size))
    return vec.reshape(d, d, order="F")


def dissipator_superoperator(op):
    """Superoperator of D[A]ρ = AρA† - 1/2 {A†A, ρ} in column stacking."""
    op = np.asarray(op, dtype=complex)
    d = op.shape[0]
    eye = np.eye(d)
    ada = op.conj().T @ op
    return (np.kron(op.conj(), op)
            - 0.5 * (np.kron(eye, ada) + np.kron(ada.T, eye)))


def commutator_superoperator(h):
    """Superoperator of -i[H, ρ] in column stacking."""
    h = np.asarray(h, dtype=complex)
    eye = np.eye(h.shape[0])
    return -1j * (np.kron(eye, h) - np.kron(h.T, eye))


@dataclass(frozen=True)
class Liouvillian:
    """Master-equation generator acting on column-stacked density matrices."""

    generator: np.ndarray
    hamiltonian: np.ndarray
    channels: tuple

    @property
    def dim(self):
        """Hilbert-space dimension."""
        return self.hamiltonian.shape[0]

    @property
    def norm(self):
        return float(np.linalg.norm(self.generator))


def build_liouvillian(h, channels):
    """Assemble the full generator from the Hamiltonian and jump channels.

    Each channel contributes its decay dissipator D[V] at rate_down and its
    excitation dissipator D[V†] at rate_up.
    """
    h = np.asarray(h, dtype=complex)
    d = h.shape[0]
    gen = commutator_superoperator(h)
    for ch in channels:
        v = np.asarray(ch.lowering_op, dtype=complex)
        if v.shape != (d, d):
            raise DimensionMismatchError(
                f"channel operator shape {v.shape} vs Hamiltonian dim {d}"
            )
        gen = gen + ch.rate_down * dissipator_superoperator(v)
        gen = gen + ch.rate_up * dissipator_superoperator(v.conj().T)
    return Liouvillian(generator=gen, hamiltonian=h, channels=tuple(channels))


def apply_generator(liou, rho):
    """dρ/dt for a given state, returned as a matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (liou.dim, liou.dim):
        raise DimensionMismatchError(
            f"state shape {rho.shape} vs Liouvillian dim {liou.dim}"
        )
    return unvectorize(liou.generator @ vectorize(rho))


def _checked_state(rho_raw, context):
    dev = np.max(np.abs(rho_raw - rho_raw.conj().T))
    if dev > 1e-8:
        raise ToleranceNotMetError(
            f"{context}: Hermiticity drift {dev:.3e} exceeds 1e-8"
        )
    rho = (rho_raw + rho_raw.conj().T) / 2
    tr_err = abs(np.trace(rho).real - 1.0)
    if tr_err > TRACE_DRIFT_TOL:
        raise ToleranceNotMetError(
            f"{context}: trace drift {tr_err:.3e} exceeds {TRACE_DRIFT_TOL:.1e}"
        )
    lam_min = np.linalg.eigvalsh(rho).min()
    if lam_min < POSITIVITY_FLOOR:
        raise PositivityLostError(
            f"{context}: min eigenvalue {lam_min:.3e} below {POSITIVITY_FLOOR:.1e}"
        )
    return rho


def evolve(liou, rho0, times, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL,
           backend="adaptive"):
    """Propagate ρ(0) = rho0 and return ρ(t) at each requested time.

    `backend` is "adaptive" (embedded Runge-Kutta, DOP853) or "expm"
    (scaling-and-squaring matrix exponential, generator dim <= 4096).
    Outputs are re-hermitized; trace drift beyond 1e-8 or a significantly
    negative eigenvalue raises.
    """
    times = np.asarray(times, dtype=float)
    if times.size == 0 or times[0] < 0 or np.any(np.diff(times) <= 0):
        raise ValueError("times must be nonempty, ascending and start at >= 0")
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (liou.dim, liou.dim):
        raise DimensionMismatchError(
            f"initial state shape {rho0.shape} vs dim {liou.dim}"
        )

    gen = liou.generator
    y0 = vectorize(rho0)

    if backend == "adaptive":
        if times[-1] == 0:
            raw = [y0]
        else:
            sol = scipy.integrate.solve_ivp(
                lambda _t, y: gen @ y,
                t_span=(0.0, float(times[-1])),
                y0=y0,
                t_eval=times,
                method="DOP853",
                rtol=rtol,
                atol=atol,
            )
            if not sol.success:
                raise ToleranceNotMetError(f"integrator failed: {sol.message}")
            raw = [sol.y[:, k] for k in range(times.size)]
    elif backend == "expm":
        if gen.shape[0] > EXPM_MAX_DIM:
            raise ValueError(
                f"expm backend limited to generator dim {EXPM_MAX_DIM}"
            )
        raw = []
        y = y0
        t_prev = 0.0
        for t in times:
            if t > t_prev:
                y = scipy.linalg.expm(gen * (t - t_prev)) @ y
                t_prev = t
            raw.append(y)
    else:
        raise ValueError(f"unknown backend {backend!r}")

    return [
        _checked_state(unvectorize(y), f"t = {t:g}")
        for t, y in zip(times, raw)
    ]


def _null_and_spectrum(liou):
    w, vr = scipy.linalg.eig(liou.generator)
    order = np.argsort(np.abs(w))
    floor = GAP_FLOOR_REL * liou.norm
    if len(w) > 1 and abs(w[order[1]]) < floor:
        raise DegenerateSteadyStateError(
            "two eigenvalues below the uniqueness floor: "
            f"|λ| = {abs(w[order[0]]):.3e}, {abs(w[order[1]]):.3e} "
            f"(floor {floor:.3e})"
        )
    return w, vr, order


def steady_state(liou):
    """Unique fixed point of the generator plus its spectral gap.

    The null vector is reshaped, hermitized and trace-normalized; raises
    DegenerateSteadyStateError if the null space is not one-dimensional.
    """
    w, vr, order = _null_and_spectrum(liou)
    rho = unvectorize(vr[:, order[0]])
    rho = (rho + rho.conj().T) / 2
    tr = np.trace(rho).real
    if abs(tr) < 1e-8:
        raise DegenerateSteadyStateError(
            f"null vector has near-zero trace {tr:.3e}"
        )
    rho = rho / tr
    gap = float(np.min(np.abs(np.real(w[order[1:]]))))
    return rho, gap


def spectral_gap(liou):
    """Smallest nonzero |Re λ| of the generator spectrum."""
    _rho, gap = steady_state(liou)
    return gap
