"""Dense linear algebra for small complex matrices (dim <= 16).

The workloads here are 4x4 Choi matrices and 3x3 Bloch contractions, so
robustness and predictable accuracy matter far more than asymptotics.
The Hermitian eigensolver is a cyclic Jacobi iteration: unlike an
absolute-threshold sweep, its relative pivot test keeps the sign of
eigenvalues that are many orders of magnitude below the matrix norm
(long-time channel margins live there).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, NotHermitian
from .tolerances import HERMITICITY_TOL

__all__ = ["hermitian_eigenvalues", "svd3", "kron", "partial_transpose"]

MAX_JACOBI_SWEEPS = 100

# pivots below this fraction of their diagonal pair are flushed to zero
_REL_PIVOT_SKIP = 1e-18


def hermitian_eigenvalues(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted ascending.

    The input must be Hermitian within HERMITICITY_TOL (max deviation of
    any entry of m - m^dagger); it is symmetrized before iterating so the
    rotations act on an exactly Hermitian matrix.

    Raises:
        NotHermitian: if the Hermiticity pre-check fails.
        ConvergenceFailure: if Jacobi sweeps do not converge (not
            reachable for finite inputs of the sizes used here).
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise NotHermitian("matrix contains non-finite entries")
    deviation = np.abs(m - m.conj().T).max()
    if deviation > HERMITICITY_TOL:
        raise NotHermitian(
            f"matrix is not Hermitian: max |m - m^dagger| = {deviation:.3e} "
            f"exceeds {HERMITICITY_TOL:.0e}"
        )
    n = m.shape[0]
    if n == 1:
        return np.array([m[0, 0].real])

    # plain nested lists: scalar complex arithmetic beats ndarray indexing
    # at these sizes, and the hot callers loop over thousands of matrices
    h = ((m + m.conj().T) / 2.0).tolist()
    for _ in range(MAX_JACOBI_SWEEPS):
        rotated = False
        for p in range(n - 1):
            hp = h[p]
            for q in range(p + 1, n):
                apq = hp[q]
                r = abs(apq)
                if r == 0.0:
                    continue
                app = hp[p].real
                aqq = h[q][q].real
                if r <= _REL_PIVOT_SKIP * (abs(app) + abs(aqq)):
                    hp[q] = 0.0
                    h[q][p] = 0.0
                    continue
                # unitary 2x2 rotation annihilating the (p, q) entry
                alpha = apq / r
                tau = (aqq - app) / (2.0 * r)
                t = 1.0 / (abs(tau) + math.hypot(1.0, tau))
                if tau < 0.0:
                    t = -t
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                sa = s * alpha
                sac = s * alpha.conjugate()
                for i in range(n):
                    hi = h[i]
                    aip = hi[p]
                    aiq = hi[q]
                    hi[p] = c * aip - sac * aiq
                    hi[q] = sa * aip + c * aiq
                hq = h[q]
                for j in range(n):
                    apj = hp[j]
                    aqj = hq[j]
                    hp[j] = c * apj - sa * aqj
                    hq[j] = sac * apj + c * aqj
                hp[q] = 0.0
                hq[p] = 0.0
                rotated = True
        if not rotated:
            return np.sort(np.array([h[i][i].real for i in range(n)]))
    raise ConvergenceFailure(
        f"Jacobi iteration did not converge within {MAX_JACOBI_SWEEPS} sweeps"
    )


def svd3(m: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    """SVD of a real 3x3 matrix with both factors special-orthogonal.

    Returns (u, s, v, sign) with u, v in SO(3), s nonnegative descending,
    and u @ diag(s1, s2, s3 * sign) @ v.T == m within RECON_TOL.  Any
    reflection is routed into `sign`, carried by the smallest singular
    value; sign equals the sign of det(m), with +1 for singular inputs.
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        raise DimensionMismatch(f"expected a 3x3 real matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("matrix contains non-finite entries")
    u, s, vt = np.linalg.svd(m)
    sign = 1.0
    if np.linalg.det(u) < 0.0:
        u = u.copy()
        u[:, 2] = -u[:, 2]
        sign = -sign
    if np.linalg.det(vt) < 0.0:
        vt = vt.copy()
        vt[2, :] = -vt[2, :]
        sign = -sign
    if np.linalg.det(m) == 0.0:
        sign = 1.0
    return u, s, vt.T, sign


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two square complex matrices."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_transpose(m: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    """Transpose the second tensor factor of a (dim_a * dim_b) matrix.

    Entry ((i, j), (k, l)) moves to ((i, l), (k, j)).  The map is an
    involution and preserves trace and Hermiticity exactly.
    """
    m = np.asarray(m, dtype=complex)
    dim = dim_a * dim_b
    if m.shape != (dim, dim):
        raise DimensionMismatch(
            f"matrix shape {m.shape} does not match dimensions {dim_a} x {dim_b}"
        )
    return (
        m.reshape(dim_a, dim_b, dim_a, dim_b)
        .transpose(0, 3, 2, 1)
        .reshape(dim, dim)
    )
