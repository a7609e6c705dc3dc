"""Fixed-size complex matrix algebra for one- and two-qubit operators.

Everything in this package lives in dimension 2 or 4, so the routines here
trade generality for predictability: the eigensolver is a cyclic complex
Jacobi iteration rather than a LAPACK call, and the Pauli transforms work
with plain (4, 4) real coefficient arrays.

Conventions:
    - Pauli-pair coefficients are a[i, j] = Tr[M (sigma_i (x) sigma_j)] / 4,
      so that M = sum_ij a[i, j] sigma_i (x) sigma_j.
    - Tensor indices order the first factor as the slow index: entry
      M[2a + b, 2a' + b'] = <a b| M |a' b'>.
"""

from __future__ import annotations

import numpy as np

from .errors import NotHermitianError

__all__ = [
    "PAULIS",
    "tensor",
    "anticommutator",
    "swap_matrix",
    "partial_transpose",
    "pauli_expand",
    "pauli_reconstruct",
    "herm_eig",
]

_SIGMA_0 = np.eye(2, dtype=np.complex128)
_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)
_SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)

#: The four Pauli matrices, indexed 0..3.
PAULIS = (_SIGMA_0, _SIGMA_X, _SIGMA_Y, _SIGMA_Z)

# All sixteen sigma_i (x) sigma_j products, flat index k = 4*i + j.
_PAULI_PAIRS = np.stack([np.kron(a, b) for a in PAULIS for b in PAULIS])

_HERM_TOL = 1e-10


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the first factor on the slow index."""
    return np.kron(a, b)


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """{a, b} = a b + b a."""
    return a @ b + b @ a


def swap_matrix() -> np.ndarray:
    """The two-qubit SWAP operator, equal to (1/2) sum_i sigma_i (x) sigma_i."""
    m = np.zeros((4, 4), dtype=np.complex128)
    for i in range(2):
        for j in range(2):
            m[2 * i + j, 2 * j + i] = 1.0
    return m


def partial_transpose(m: np.ndarray, subsystem: int) -> np.ndarray:
    """Transpose one tensor factor of a two-qubit operator.

    :param m: (4, 4) operator on qubit_A (x) qubit_B.
    :param subsystem: 0 transposes the A factor, 1 the B factor.
    """
    if subsystem not in (0, 1):
        raise ValueError(f"subsystem must be 0 or 1, got {subsystem!r}")
    t = np.asarray(m, dtype=np.complex128).reshape(2, 2, 2, 2)
    if subsystem == 0:
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return t.reshape(4, 4)


def pauli_expand(m: np.ndarray) -> np.ndarray:
    """Coefficients a[i, j] = Tr[m (sigma_i (x) sigma_j)] / 4.

    The coefficients are real when m is Hermitian; the imaginary part is
    discarded, so feed Hermitian input.
    """
    coeffs = np.einsum("kij,ji->k", _PAULI_PAIRS, np.asarray(m, dtype=np.complex128))
    return coeffs.real.reshape(4, 4) / 4.0


def pauli_reconstruct(a: np.ndarray) -> np.ndarray:
    """Rebuild sum_ij a[i, j] sigma_i (x) sigma_j from a (4, 4) real array."""
    a = np.asarray(a, dtype=np.float64)
    if a.shape != (4, 4):
        raise ValueError(f"coefficient array must be (4, 4), got {a.shape}")
    return np.tensordot(a.ravel(), _PAULI_PAIRS, axes=1)


# === Cyclic Jacobi eigensolver ===

def _jacobi_rotation(app: float, aqq: float, apq: complex) -> tuple[float, complex]:
    """Cosine and complex sine zeroing the (p, q) entry of a Hermitian 2x2 block."""
    mag = abs(apq)
    phase = apq / mag
    tau = (aqq - app) / (2.0 * mag)
    if tau >= 0.0:
        t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
    else:
        t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    return c, t * c * phase


def herm_eig(m: np.ndarray, *, off_tol: float = 1e-13, max_sweeps: int = 100):
    """Eigendecomposition of a small Hermitian matrix by cyclic Jacobi rotations.

    :param m: Hermitian square matrix (2x2 or 4x4 in this package).
    :param off_tol: relative off-diagonal magnitude at which to stop.
    :param max_sweeps: hard cap on full sweeps; convergence is quadratic, so
        hitting it means the input was out of contract.
    :return: (w, v) with eigenvalues w ascending and orthonormal columns v,
        such that m v[:, k] = w[k] v[:, k].
    :raises NotHermitianError: if max |m - m^dag| exceeds 1e-10.
    """
    a = np.asarray(m, dtype=np.complex128).copy()
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"matrix must be square, got {a.shape}")
    if np.abs(a - a.conj().T).max() > _HERM_TOL:
        raise NotHermitianError("matrix is not Hermitian to 1e-10")

    scale = max(1.0, np.abs(a).max())
    stop = off_tol * scale
    v = np.eye(n, dtype=np.complex128)

    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off = max(off, abs(a[p, q]))
        if off <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) <= stop:
                    continue
                c, s = _jacobi_rotation(a[p, p].real, a[q, q].real, a[p, q])
                # A <- G^dag A G with G the identity outside the (p, q) plane,
                # G[p,p] = G[q,q] = c, G[p,q] = s, G[q,p] = -conj(s).
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - np.conj(s) * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = np.conj(s) * row_p + c * row_q
                col_p = v[:, p].copy()
                col_q = v[:, q].copy()
                v[:, p] = c * col_p - np.conj(s) * col_q
                v[:, q] = s * col_p + c * col_q

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]
