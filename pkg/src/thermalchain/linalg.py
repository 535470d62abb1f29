"""Dense complex linear-algebra kernel for multi-qubit states and operators.

Basis convention, fixed repo-wide: site 0 is the leftmost tensor factor,
single-qubit basis order is (|0>, |1>), and the multi-qubit basis index is
the binary string q0 q1 ... read left to right.
"""

import numpy as np
import scipy.linalg

from .errors import (
    DimensionMismatchError,
    IndexOutOfRangeError,
    NotHermitianError,
)

HERMITICITY_TOL = 1e-10


def kron(a, b):
    """Kronecker product of two matrices; dimensions multiply."""
    return np.kron(np.asarray(a), np.asarray(b))


def kron_all(ops):
    """Kronecker product of a sequence of matrices, left to right."""
    out = np.asarray(ops[0])
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def hermitian_eig(h, tol=HERMITICITY_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvector matrix U) with h @ U
    = U @ diag(w) and orthonormal columns.

    Raises NotHermitianError if max |h - h†| exceeds `tol`.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionMismatchError(f"expected square matrix, got {h.shape}")
    dev = np.max(np.abs(h - h.conj().T))
    if dev > tol:
        raise NotHermitianError(f"max |h - h†| = {dev:.3e} > {tol:.1e}")
    w, u = np.linalg.eigh(h)
    return w, u


def partial_trace(rho, keep, n_sites):
    """Reduced state of `rho` on the sites listed in `keep`.

    `rho` is a 2^n x 2^n matrix on `n_sites` qubits; the result lives on
    the kept sites in their listed order. Trace is preserved.
    """
    rho = np.asarray(rho, dtype=complex)
    dim = 2**n_sites
    if rho.shape != (dim, dim):
        raise DimensionMismatchError(
            f"state has shape {rho.shape}, expected ({dim}, {dim})"
        )
    keep = list(keep)
    if len(set(keep)) != len(keep):
        raise IndexOutOfRangeError(f"duplicate site in keep={keep}")
    for s in keep:
        if not 0 <= s < n_sites:
            raise IndexOutOfRangeError(f"site {s} not in [0, {n_sites})")

    traced = [s for s in range(n_sites) if s not in keep]
    t = rho.reshape((2,) * (2 * n_sites))
    # Axes 0..n-1 are kets, n..2n-1 are bras of the same site.
    # Contract bra against ket for every traced site.
    for s in sorted(traced, reverse=True):
        n_cur = t.ndim // 2
        t = np.trace(t, axis1=s, axis2=n_cur + s)
    # Remaining site order is ascending; permute to the requested order.
    remaining = sorted(keep)
    perm = [remaining.index(s) for s in keep]
    n_keep = len(keep)
    t = np.transpose(t, perm + [n_keep + p for p in perm])
    d_keep = 2**n_keep
    return t.reshape(d_keep, d_keep)


def trace_distance(a, b):
    """Trace distance (1/2) ||a - b||_1 between two equally sized states."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shapes {a.shape} and {b.shape} differ")
    return 0.5 * np.sum(scipy.linalg.svdvals(a - b))


def validate_density_matrix(rho, herm_tol=1e-12, trace_tol=1e-10, psd_tol=1e-9):
    """Check the density-matrix contract; raise on violation.

    Hermitian to `herm_tol`, unit trace to `trace_tol`, smallest eigenvalue
    above -`psd_tol`. Returns rho unchanged on success.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionMismatchError(f"expected square matrix, got {rho.shape}")
    dev = np.max(np.abs(rho - rho.conj().T))
    if dev > herm_tol:
        raise NotHermitianError(f"max |ρ - ρ†| = {dev:.3e} > {herm_tol:.1e}")
    tr_err = abs(np.trace(rho) - 1.0)
    if tr_err > trace_tol:
        raise ValueError(f"|Tr ρ - 1| = {tr_err:.3e} > {trace_tol:.1e}")
    lam_min = np.linalg.eigvalsh((rho + rho.conj().T) / 2).min()
    if lam_min < -psd_tol:
        raise ValueError(f"min eigenvalue {lam_min:.3e} < -{psd_tol:.1e}")
    return rho


def purity(rho):
    """Tr(ρ²), real part."""
    rho = np.asarray(rho, dtype=complex)
    return float(np.real(np.trace(rho @ rho)))
