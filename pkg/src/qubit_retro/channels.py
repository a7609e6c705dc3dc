"""Single-qubit channel representations and structure maps.

A channel is held as exactly one of four interconvertible forms:

    kraus   list of 2x2 operators K_k, action w -> sum_k K_k w K_k^dag
    choi    (id (x) N) acting on 2|Phi+><Phi+|, trace 2 for trace-preserving N
    jam     (id (x) N)(SWAP); the partial transpose of choi on the first factor
    ptm     Pauli transfer matrix T[i, j] = Tr[sigma_i N(sigma_j)] / 2

The Pauli channel sum_i p_i sigma_i w sigma_i gets its own value type since
most of the inversion machinery works directly with its probability vector
and signed eigenvalues lambda_i = p_0 + p_i - p_j - p_k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InternalCPViolationError,
    NotCPTPError,
    NotHermitianError,
    NotPSDError,
    NotUnitalError,
)
from .linalg import PAULIS, herm_eig, partial_transpose, pauli_expand, pauli_reconstruct

__all__ = [
    "BlochState",
    "PauliChannel",
    "ChannelRep",
    "jamiolkowski",
    "choi_from_jam",
    "jam_from_choi",
    "kraus_from_choi",
    "apply",
    "apply_operator",
    "adjoint",
    "compose",
    "is_cptp",
    "fujiwara_algoet",
    "unital_to_pauli",
    "transport_inverse",
    "rotation_from_su2",
]

# Maps lambda = L @ p and back; rows/columns follow the index convention
# lambda_i = p_0 + p_i - p_j - p_k with {j, k} = {1, 2, 3} \ {i}.
_LAMBDA_OF_P = np.array(
    [
        [1.0, 1.0, -1.0, -1.0],
        [1.0, -1.0, 1.0, -1.0],
        [1.0, -1.0, -1.0, 1.0],
    ]
)


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class BlochState:
    """Qubit state (1/2)(I + r . sigma) held by its Bloch vector."""

    r: np.ndarray

    def __post_init__(self) -> None:
        r = np.asarray(self.r, dtype=np.float64).reshape(-1)
        if r.shape != (3,):
            raise ValueError(f"Bloch vector must have 3 components, got {r.shape}")
        if np.linalg.norm(r) > 1.0 + 1e-12:
            raise ValueError(f"Bloch vector length {np.linalg.norm(r)} exceeds 1")
        object.__setattr__(self, "r", _readonly(r))

    @property
    def matrix(self) -> np.ndarray:
        """Density matrix of the state."""
        m = 0.5 * PAULIS[0].copy()
        for i in range(3):
            m += 0.5 * self.r[i] * PAULIS[i + 1]
        return m

    @classmethod
    def from_matrix(cls, rho: np.ndarray) -> "BlochState":
        rho = np.asarray(rho, dtype=np.complex128)
        if np.abs(rho - rho.conj().T).max() > 1e-10:
            raise NotHermitianError("density matrix is not Hermitian to 1e-10")
        if abs(rho.trace().real - 1.0) > 1e-10:
            raise ValueError("density matrix trace differs from 1 beyond 1e-10")
        r = np.array([np.trace(rho @ PAULIS[i + 1]).real for i in range(3)])
        return cls(r)

    @classmethod
    def maximally_mixed(cls) -> "BlochState":
        return cls(np.zeros(3))


@dataclass(frozen=True)
class PauliChannel:
    """Random-Pauli channel w -> sum_i p_i sigma_i w sigma_i."""

    p: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.p, dtype=np.float64).reshape(-1)
        if p.shape != (4,):
            raise ValueError(f"probability vector must have 4 entries, got {p.shape}")
        if p.min() < -1e-12:
            raise ValueError(f"negative Pauli probability {p.min()}")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValueError(f"Pauli probabilities sum to {p.sum()}, not 1")
        object.__setattr__(self, "p", _readonly(np.clip(p, 0.0, None)))

    @property
    def lam(self) -> np.ndarray:
        """Signed map eigenvalues: sigma_i is sent to lam[i-1] sigma_i."""
        return _LAMBDA_OF_P @ self.p

    @classmethod
    def from_lambdas(cls, lam: np.ndarray, *, tol: float = 1e-9) -> "PauliChannel":
        """Build the channel with given signed eigenvalues.

        :raises NotCPTPError: when the eigenvalues lie outside the
            completely positive region by more than tol.
        """
        l1, l2, l3 = (float(x) for x in np.asarray(lam).reshape(3))
        p = 0.25 * np.array(
            [1 + l1 + l2 + l3, 1 + l1 - l2 - l3, 1 - l1 + l2 - l3, 1 - l1 - l2 + l3]
        )
        if p.min() < -tol:
            raise NotCPTPError(f"eigenvalues {lam} violate complete positivity by {-p.min():.3e}")
        p = np.clip(p, 0.0, None)
        return cls(p / p.sum())

    @classmethod
    def depolarizing(cls, strength: float) -> "PauliChannel":
        """Depolarizing channel with error weight spread evenly over X, Y, Z."""
        if not 0.0 <= strength <= 1.0:
            raise ValueError(f"depolarizing strength must lie in [0, 1], got {strength}")
        q = strength / 3.0
        return cls(np.array([1.0 - strength, q, q, q]))

    def apply_matrix(self, m: np.ndarray) -> np.ndarray:
        out = np.zeros((2, 2), dtype=np.complex128)
        for w, s in zip(self.p, PAULIS):
            out += w * (s @ m @ s)
        return out


class ChannelRep:
    """A qubit channel in one of the four representations, converted lazily.

    Exactly one representation is supplied at construction; the others are
    derived on demand and cached. All conversions round-trip to 1e-10.
    """

    def __init__(self, *, kraus=None, choi=None, jam=None, ptm=None):
        given = {
            name: value
            for name, value in
            (("kraus", kraus), ("choi", choi), ("jam", jam), ("ptm", ptm))
            if value is not None
        }
        if len(given) != 1:
            raise ValueError("supply exactly one of kraus/choi/jam/ptm")
        name, value = next(iter(given.items()))
        self._reps: dict[str, object] = {}
        if name == "kraus":
            ops = [np.asarray(k, dtype=np.complex128) for k in value]
            if not ops or any(k.shape != (2, 2) for k in ops):
                raise ValueError("kraus must be a non-empty list of 2x2 operators")
            self._reps["kraus"] = tuple(_readonly(k) for k in ops)
        else:
            m = np.asarray(value, dtype=np.complex128 if name != "ptm" else np.float64)
            if m.shape != (4, 4):
                raise ValueError(f"{name} must be a 4x4 matrix, got {m.shape}")
            self._reps[name] = _readonly(m)

    # --- constructors ---

    @classmethod
    def from_kraus(cls, ops) -> "ChannelRep":
        return cls(kraus=ops)

    @classmethod
    def from_choi(cls, m) -> "ChannelRep":
        return cls(choi=m)

    @classmethod
    def from_jam(cls, m) -> "ChannelRep":
        return cls(jam=m)

    @classmethod
    def from_ptm(cls, t) -> "ChannelRep":
        return cls(ptm=t)

    @classmethod
    def from_pauli(cls, pc: PauliChannel) -> "ChannelRep":
        return cls(kraus=[np.sqrt(w) * s for w, s in zip(pc.p, PAULIS) if w > 0.0])

    @classmethod
    def from_unitary(cls, u) -> "ChannelRep":
        u = np.asarray(u, dtype=np.complex128)
        if np.abs(u @ u.conj().T - np.eye(2)).max() > 1e-10:
            raise ValueError("matrix is not unitary to 1e-10")
        return cls(kraus=[u])

    # --- representations ---

    @property
    def kraus(self) -> tuple:
        if "kraus" not in self._reps:
            self._reps["kraus"] = tuple(_readonly(k) for k in kraus_from_choi(self.choi))
        return self._reps["kraus"]

    @property
    def choi(self) -> np.ndarray:
        if "choi" not in self._reps:
            if "kraus" in self._reps:
                c = np.zeros((4, 4), dtype=np.complex128)
                for k in self._reps["kraus"]:
                    v = k.T.ravel()
                    c += np.outer(v, v.conj())
                self._reps["choi"] = _readonly(c)
            else:
                self._reps["choi"] = _readonly(partial_transpose(self.jam, 0))
        return self._reps["choi"]

    @property
    def jam(self) -> np.ndarray:
        if "jam" not in self._reps:
            if "choi" in self._reps or "kraus" in self._reps:
                self._reps["jam"] = _readonly(partial_transpose(self.choi, 0))
            else:
                self._reps["jam"] = _readonly(pauli_reconstruct(self._reps["ptm"].T / 2.0))
        return self._reps["jam"]

    @property
    def ptm(self) -> np.ndarray:
        if "ptm" not in self._reps:
            if "kraus" in self._reps:
                t = np.empty((4, 4))
                for j in range(4):
                    out = np.zeros((2, 2), dtype=np.complex128)
                    for k in self._reps["kraus"]:
                        out += k @ PAULIS[j] @ k.conj().T
                    for i in range(4):
                        t[i, j] = np.trace(PAULIS[i] @ out).real / 2.0
                self._reps["ptm"] = _readonly(t)
            else:
                self._reps["ptm"] = _readonly(2.0 * pauli_expand(self.jam).T)
        return self._reps["ptm"]

    # --- predicates and action ---

    def is_trace_preserving(self, tol: float = 1e-10) -> bool:
        return bool(np.abs(self.ptm[0] - np.array([1.0, 0.0, 0.0, 0.0])).max() <= tol)

    def is_unital(self, tol: float = 1e-10) -> bool:
        return bool(np.abs(self.ptm[:, 0] - np.array([1.0, 0.0, 0.0, 0.0])).max() <= tol)

    def apply_matrix(self, m: np.ndarray) -> np.ndarray:
        """Action on an arbitrary 2x2 operator via the transfer matrix."""
        m = np.asarray(m, dtype=np.complex128)
        coeff = np.array([np.trace(m @ s) / 2.0 for s in PAULIS])
        out_coeff = self.ptm @ coeff
        out = np.zeros((2, 2), dtype=np.complex128)
        for c, s in zip(out_coeff, PAULIS):
            out += c * s
        return out

    def __repr__(self) -> str:
        return f"ChannelRep(stored={sorted(self._reps)})"


def _as_rep(e) -> ChannelRep:
    if isinstance(e, ChannelRep):
        return e
    if isinstance(e, PauliChannel):
        return ChannelRep.from_pauli(e)
    raise TypeError(f"expected ChannelRep or PauliChannel, got {type(e).__name__}")


def jamiolkowski(e) -> np.ndarray:
    """(id (x) N)(SWAP) for the channel N.

    For a Pauli channel this equals
    (1/2)(I (x) I + sum_i lambda_i sigma_i (x) sigma_i).
    """
    if isinstance(e, PauliChannel):
        a = np.zeros((4, 4))
        a[0, 0] = 0.5
        lam = e.lam
        for i in range(3):
            a[i + 1, i + 1] = 0.5 * lam[i]
        return pauli_reconstruct(a)
    return _as_rep(e).jam


def choi_from_jam(j: np.ndarray) -> np.ndarray:
    """Partial transpose on the first factor, mapping (id (x) N)(SWAP) to the Choi matrix."""
    return partial_transpose(j, 0)


def jam_from_choi(c: np.ndarray) -> np.ndarray:
    """Inverse of :func:`choi_from_jam` (the map is an involution)."""
    return partial_transpose(c, 0)


def kraus_from_choi(choi: np.ndarray, tol: float = 1e-9) -> list[np.ndarray]:
    """Extract Kraus operators from a Choi matrix.

    The Choi matrix is rescaled to trace 2 (the trace-preserving value)
    before decomposition; eigenvalues below 1e-12 are truncated and the
    operators come back ordered by descending eigenvalue.

    :raises NotPSDError: if an eigenvalue is below -tol after rescaling.
    """
    c = np.asarray(choi, dtype=np.complex128)
    tr = c.trace().real
    if tr <= 0.0:
        raise NotPSDError(f"Choi trace {tr} is not positive")
    c = c * (2.0 / tr)
    w, v = herm_eig(c)
    if w[0] < -tol:
        raise NotPSDError(f"Choi matrix has eigenvalue {w[0]:.3e} < -{tol}")
    ops = []
    for k in range(len(w) - 1, -1, -1):
        if w[k] <= 1e-12:
            continue
        ops.append(np.sqrt(w[k]) * v[:, k].reshape(2, 2).T)
    return ops


def apply(e, s: BlochState) -> BlochState:
    """Send a state through a channel.

    For a PauliChannel the Bloch vector maps componentwise, r_i -> lambda_i r_i.

    :raises InternalCPViolationError: if the output leaves the Bloch ball by
        more than 1e-10 (the channel object is broken, not the caller).
    """
    if isinstance(e, PauliChannel):
        return BlochState(e.lam * s.r)
    rep = _as_rep(e)
    out = rep.ptm @ np.concatenate(([1.0], s.r))
    if abs(out[0] - 1.0) > 1e-10:
        raise InternalCPViolationError(f"channel scaled the trace to {out[0]}")
    r = out[1:]
    norm = np.linalg.norm(r)
    if norm > 1.0 + 1e-10:
        raise InternalCPViolationError(f"output Bloch vector has length {norm}")
    if norm > 1.0:
        r = r / norm
    return BlochState(r)


def apply_operator(e, m: np.ndarray) -> np.ndarray:
    """Channel action on an arbitrary 2x2 operator (not necessarily a state)."""
    if isinstance(e, PauliChannel):
        return e.apply_matrix(m)
    return _as_rep(e).apply_matrix(m)


def adjoint(e):
    """Adjoint map N^dag with respect to the Hilbert-Schmidt inner product.

    Transposes the transfer matrix; a Pauli channel is self-adjoint and is
    returned unchanged.
    """
    if isinstance(e, PauliChannel):
        return e
    return ChannelRep.from_ptm(_as_rep(e).ptm.T)


def compose(f, g) -> ChannelRep:
    """The channel "f after g"; transfer matrices multiply in the same order."""
    return ChannelRep.from_ptm(_as_rep(f).ptm @ _as_rep(g).ptm)


def is_cptp(e, tol: float = 1e-9) -> bool:
    """Completely positive and trace preserving, via the Choi spectrum."""
    rep = _as_rep(e)
    if not rep.is_trace_preserving(tol):
        return False
    choi = rep.choi
    if np.abs(choi - choi.conj().T).max() > 1e-10:
        return False
    w, _ = herm_eig(choi)
    return bool(w[0] >= -tol)


def fujiwara_algoet(lam) -> bool:
    """Complete-positivity test for the map sigma_i -> lambda_i sigma_i.

    Checks s1 l1 + s2 l2 <= 1 + s1 s2 l3 over all four sign combinations,
    which is the unfolding of |l1 +- l2| <= |1 +- l3| with matched signs.
    """
    l1, l2, l3 = (float(x) for x in np.asarray(lam).reshape(3))
    for s1 in (1.0, -1.0):
        for s2 in (1.0, -1.0):
            if s1 * l1 + s2 * l2 > 1.0 + s1 * s2 * l3:
                return False
    return True


# === Rotation factor extraction ===

def rotation_from_su2(u: np.ndarray) -> np.ndarray:
    """The SO(3) Bloch rotation R[i, j] = Tr[sigma_i u sigma_j u^dag] / 2."""
    u = np.asarray(u, dtype=np.complex128)
    r = np.empty((3, 3))
    for j in range(3):
        m = u @ PAULIS[j + 1] @ u.conj().T
        for i in range(3):
            r[i, j] = np.trace(PAULIS[i + 1] @ m).real / 2.0
    return r


def _su2_from_rotation(r: np.ndarray) -> np.ndarray:
    """Lift a proper rotation to SU(2) with non-negative trace.

    Uses the standard branch-on-largest-diagonal quaternion extraction, so
    angle-pi rotations (trace -1) stay well conditioned.
    """
    r = np.asarray(r, dtype=np.float64)
    tr = r[0, 0] + r[1, 1] + r[2, 2]
    if tr > 0.0:
        s = 2.0 * np.sqrt(1.0 + tr)
        q = np.array(
            [0.25 * s, (r[2, 1] - r[1, 2]) / s, (r[0, 2] - r[2, 0]) / s, (r[1, 0] - r[0, 1]) / s]
        )
    elif r[0, 0] >= r[1, 1] and r[0, 0] >= r[2, 2]:
        s = 2.0 * np.sqrt(1.0 + r[0, 0] - r[1, 1] - r[2, 2])
        q = np.array(
            [(r[2, 1] - r[1, 2]) / s, 0.25 * s, (r[0, 1] + r[1, 0]) / s, (r[0, 2] + r[2, 0]) / s]
        )
    elif r[1, 1] >= r[2, 2]:
        s = 2.0 * np.sqrt(1.0 + r[1, 1] - r[0, 0] - r[2, 2])
        q = np.array(
            [(r[0, 2] - r[2, 0]) / s, (r[0, 1] + r[1, 0]) / s, 0.25 * s, (r[1, 2] + r[2, 1]) / s]
        )
    else:
        s = 2.0 * np.sqrt(1.0 + r[2, 2] - r[0, 0] - r[1, 1])
        q = np.array(
            [(r[1, 0] - r[0, 1]) / s, (r[0, 2] + r[2, 0]) / s, (r[1, 2] + r[2, 1]) / s, 0.25 * s]
        )
    q = q / np.linalg.norm(q)
    if q[0] < 0.0:
        q = -q
    w, x, y, z = q
    return np.array(
        [[w - 1.0j * z, -1.0j * x - y], [-1.0j * x + y, w + 1.0j * z]], dtype=np.complex128
    )


def unital_to_pauli(e, tol: float = 1e-9):
    """Factor a unital channel as U . P . V with P a Pauli channel.

    The 3x3 Bloch block is split by SVD; reflection signs are folded into
    the diagonal so both orthogonal factors are proper rotations, which then
    lift to the SU(2) conjugations U and V.

    :return: (u, p, v) with u, v 2x2 unitaries and p a PauliChannel, such
        that the input equals conj-by-u . p . conj-by-v.
    :raises NotUnitalError: if the transfer matrix's first column is not (1,0,0,0).
    :raises NotCPTPError: if the channel fails the Choi positivity check.
    """
    rep = _as_rep(e)
    t = rep.ptm
    if np.abs(t[1:, 0]).max() > 1e-10 or abs(t[0, 0] - 1.0) > 1e-10:
        col = ", ".join(format(x, ".6g") for x in t[:, 0])
        raise NotUnitalError(
            f"transfer matrix first column is ({col}), expected (1, 0, 0, 0)"
        )
    if not is_cptp(rep, tol):
        raise NotCPTPError("channel fails the Choi positivity test")
    o1, sv, o2t = np.linalg.svd(t[1:, 1:])
    lam = sv.copy()
    if np.linalg.det(o1) < 0.0:
        o1 = o1.copy()
        o1[:, 2] *= -1.0
        lam[2] *= -1.0
    if np.linalg.det(o2t) < 0.0:
        o2t = o2t.copy()
        o2t[2, :] *= -1.0
        lam[2] *= -1.0
    u = _su2_from_rotation(o1)
    v = _su2_from_rotation(o2t)
    return u, PauliChannel.from_lambdas(lam, tol=tol), v


def transport_inverse(u: np.ndarray, v: np.ndarray, f) -> ChannelRep:
    """Undo the rotation factors around an inverse found in the Pauli frame.

    If the original channel is U . E . V and f inverts E with respect to
    V(state), then the returned channel V^dag . f . U^dag inverts the
    original with respect to the original state.
    """
    u = np.asarray(u, dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128)
    left = ChannelRep.from_unitary(v.conj().T)
    right = ChannelRep.from_unitary(u.conj().T)
    return compose(left, compose(_as_rep(f), right))
