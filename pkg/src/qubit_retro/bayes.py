"""Bayesian inversion of unital qubit channels.

The retrodiction question answered here: given a channel E and a prior
state rho, is there a channel F whose two-point correlations run backwards,

    {E(rho) (x) I, J[F]} = {I (x) rho, J[E^dag]},

and if so, what is it? For Pauli channels with all |lambda_i| < 1 the unique
candidate has closed-form Pauli-pair coefficients; whether that candidate is
an actual channel reduces to three scalar inequalities on its Choi matrix.
Boundary channels (some |lambda_i| = 1) are handled by the unscathed test:
the adjoint map works exactly when some Pauli sigma satisfies
E(rho) = sigma rho sigma. General unital channels are rotated into the
Pauli frame, inverted there, and rotated back.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .channels import (
    BlochState,
    ChannelRep,
    PauliChannel,
    adjoint,
    apply,
    apply_operator,
    choi_from_jam,
    is_cptp,
    jamiolkowski,
    kraus_from_choi,
    transport_inverse,
    unital_to_pauli,
)
from .errors import (
    EigenvalueOnBoundaryError,
    InternalCPViolationError,
    NonUniqueSolutionWarning,
    NotHermitianError,
    NotPSDError,
    RankDeficientError,
    SingularSError,
)
from .linalg import PAULIS, anticommutator, herm_eig, pauli_expand, pauli_reconstruct, tensor

__all__ = [
    "PseudoDensityMatrix",
    "FeasibilityReport",
    "InverseRecord",
    "NoInverse",
    "star_product",
    "two_time_expectation",
    "two_time_projector",
    "bayes_residual",
    "is_unscathed",
    "adjoint_is_inverse",
    "analytic_inverse",
    "gamel_report",
    "solve_anticommutator",
    "bayesian_inverse",
    "kraus_from_choi",
]

_BOUNDARY_EPS = 1e-12
_UNSCATHED_TOL = 1e-10

_ID2 = np.eye(2, dtype=np.complex128)


def _frozen_array(a) -> np.ndarray:
    out = np.array(a)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class PseudoDensityMatrix:
    """Two-time correlation operator {omega (x) I, J[N]} / 2.

    Hermitian with unit trace, but not positive in general; a negative
    eigenvalue is the signature of temporal (rather than spatial)
    correlations.
    """

    m: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.m, dtype=np.complex128)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 operator, got {m.shape}")
        if np.abs(m - m.conj().T).max() > 1e-10:
            raise NotHermitianError("pseudo-density matrix must be Hermitian")
        if abs(m.trace().real - 1.0) > 1e-10:
            raise ValueError(f"pseudo-density matrix trace is {m.trace().real}, not 1")
        object.__setattr__(self, "m", _frozen_array(m))

    def min_eigenvalue(self) -> float:
        w, _ = herm_eig(self.m)
        return float(w[0])


@dataclass(frozen=True)
class FeasibilityReport:
    """Scalar data of the complete-positivity test for a candidate inverse.

    The candidate's unit-trace Choi matrix has Pauli-pair coefficient block

        [[1, v^T], [0, R]],

    and positivity is equivalent to the three slacks being non-negative:

        slack[0] = 3 - eta
        slack[1] = 1 - 2 det R - eta
        slack[2] = (eta - 1)^2 - 8 det R - 4 (|R v|^2 + |adj R|^2)

    with eta = |v|^2 + |R|^2 (Frobenius norms).
    """

    v: np.ndarray
    R: np.ndarray
    eta: float
    detR: float
    normRv2: float
    normAdjR2: float
    slack: np.ndarray
    feasible: bool
    S: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "v", _frozen_array(np.asarray(self.v, dtype=np.float64)))
        object.__setattr__(self, "R", _frozen_array(np.asarray(self.R, dtype=np.float64)))
        object.__setattr__(self, "slack", _frozen_array(np.asarray(self.slack, dtype=np.float64)))


@dataclass(frozen=True)
class InverseRecord:
    """A constructed Bayesian inverse plus its certification data.

    ``a`` holds the Pauli-frame coefficients in the normalization where
    a[0, 0] = 1 (twice the actual operator coefficients); ``choi`` and
    ``kraus`` describe the returned channel in the original frame;
    ``residual`` is the max-entry defect of the defining two-sided
    anticommutator identity; ``unique`` is False only when E(rho) is pure,
    in which case other solutions exist.
    """

    a: np.ndarray
    S: float
    choi: np.ndarray
    kraus: tuple
    report: FeasibilityReport
    unique: bool = True
    residual: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _frozen_array(np.asarray(self.a, dtype=np.float64)))
        object.__setattr__(self, "choi", _frozen_array(np.asarray(self.choi, dtype=np.complex128)))
        object.__setattr__(self, "kraus", tuple(_frozen_array(k) for k in self.kraus))


@dataclass(frozen=True)
class NoInverse:
    """Verdict object explaining why no Bayesian inverse exists.

    reason is "cp-infeasible" (interior candidate fails complete
    positivity; see report) or "not-unscathed" (boundary channel, no Pauli
    sigma conjugation matches; residuals lists the conjugation defect for
    sigma_0..sigma_3).
    """

    reason: str
    report: FeasibilityReport | None = None
    residuals: np.ndarray | None = None


# === Two-time objects ===

def star_product(e, s: BlochState) -> PseudoDensityMatrix:
    """{rho (x) I, J[E]} / 2 for the channel E and input state rho."""
    j = jamiolkowski(e)
    return PseudoDensityMatrix(anticommutator(tensor(s.matrix, _ID2), j) / 2.0)


def two_time_expectation(pdm: PseudoDensityMatrix, i: int, j: int) -> float:
    """<sigma_i, sigma_j> read from a pseudo-density matrix; i, j in {1, 2, 3}."""
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise ValueError(f"observable indices must be in 1..3, got ({i}, {j})")
    return float(np.trace(pdm.m @ tensor(PAULIS[i], PAULIS[j])).real)


def two_time_projector(e, s: BlochState, i: int, j: int) -> float:
    """Two-time expectation from the projective-measurement formula.

    Measures sigma_i on the input state, pipes each outcome branch through
    the channel, then takes the sigma_j expectation:

        Tr[E(P+ rho P+) sigma_j] - Tr[E(P- rho P-) sigma_j].
    """
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise ValueError(f"observable indices must be in 1..3, got ({i}, {j})")
    rho = s.matrix
    plus = (_ID2 + PAULIS[i]) / 2.0
    minus = (_ID2 - PAULIS[i]) / 2.0
    t_plus = np.trace(apply_operator(e, plus @ rho @ plus) @ PAULIS[j]).real
    t_minus = np.trace(apply_operator(e, minus @ rho @ minus) @ PAULIS[j]).real
    return float(t_plus - t_minus)


def bayes_residual(e, s: BlochState, f) -> float:
    """Max-entry defect of {E(rho) (x) I, J[F]} = {I (x) rho, J[E^dag]}."""
    e_rho = apply_operator(e, s.matrix)
    lhs = anticommutator(tensor(e_rho, _ID2), jamiolkowski(f))
    rhs = anticommutator(tensor(_ID2, s.matrix), jamiolkowski(adjoint(e)))
    return float(np.abs(lhs - rhs).max())


# === Unscathed classification ===

def is_unscathed(p: PauliChannel, s: BlochState, tol: float = _UNSCATHED_TOL):
    """Smallest index k with P(rho) = sigma_k rho sigma_k, or None.

    Index 0 means the state passes through the channel untouched.
    """
    rho = s.matrix
    out = p.apply_matrix(rho)
    for k, sigma in enumerate(PAULIS):
        if np.abs(out - sigma @ rho @ sigma).max() <= tol:
            return k
    return None


def unscathed_residuals(p: PauliChannel, s: BlochState) -> np.ndarray:
    """Max-entry defect of P(rho) = sigma_k rho sigma_k for each k in 0..3."""
    rho = s.matrix
    out = p.apply_matrix(rho)
    return np.array([np.abs(out - sigma @ rho @ sigma).max() for sigma in PAULIS])


def adjoint_is_inverse(p: PauliChannel, s: BlochState, tol: float = _UNSCATHED_TOL) -> bool:
    """Whether the adjoint map is itself a Bayesian inverse for (p, s)."""
    return is_unscathed(p, s, tol) is not None


# === Feasibility of the interior candidate ===

def _det3(m: np.ndarray) -> float:
    return float(
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


def _adj3(m: np.ndarray) -> np.ndarray:
    out = np.empty((3, 3))
    out[0, 0] = m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
    out[0, 1] = -(m[0, 1] * m[2, 2] - m[0, 2] * m[2, 1])
    out[0, 2] = m[0, 1] * m[1, 2] - m[0, 2] * m[1, 1]
    out[1, 0] = -(m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
    out[1, 1] = m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
    out[1, 2] = -(m[0, 0] * m[1, 2] - m[0, 2] * m[1, 0])
    out[2, 0] = m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]
    out[2, 1] = -(m[0, 0] * m[2, 1] - m[0, 1] * m[2, 0])
    out[2, 2] = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return out


def gamel_report(choi: np.ndarray, S: float, tol: float = 1e-9) -> FeasibilityReport:
    """Positivity test for a trace-preserving candidate's Choi matrix.

    The matrix is normalized to unit trace before reading off the Pauli-pair
    coefficient block [[1, v^T], [0, R]]; the scalar S is carried through to
    the report unchanged. Feasible means every slack >= -tol.

    :raises NotHermitianError: on a non-Hermitian input.
    :raises ValueError: if the first coefficient column is not (1, 0, 0, 0),
        i.e. the candidate is not trace preserving.
    """
    c = np.asarray(choi, dtype=np.complex128)
    if np.abs(c - c.conj().T).max() > 1e-10:
        raise NotHermitianError("Choi matrix must be Hermitian")
    coeff = pauli_expand(c)
    if coeff[0, 0] <= 0.0:
        raise ValueError(f"Choi trace {4 * coeff[0, 0]} is not positive")
    w = coeff / coeff[0, 0]
    if np.abs(w[1:, 0]).max() > 1e-8:
        raise ValueError("candidate is not trace preserving (first coefficient column nonzero)")
    v = w[0, 1:]
    r_block = w[1:, 1:]
    eta = float(v @ v + (r_block * r_block).sum())
    det_r = _det3(r_block)
    rv = r_block @ v
    norm_rv2 = float(rv @ rv)
    adj = _adj3(r_block)
    norm_adj2 = float((adj * adj).sum())
    slack = np.array(
        [
            3.0 - eta,
            1.0 - 2.0 * det_r - eta,
            (eta - 1.0) ** 2 - 8.0 * det_r - 4.0 * (norm_rv2 + norm_adj2),
        ]
    )
    return FeasibilityReport(
        v=v,
        R=r_block,
        eta=eta,
        detR=det_r,
        normRv2=norm_rv2,
        normAdjR2=norm_adj2,
        slack=slack,
        feasible=bool((slack >= -tol).all()),
        S=float(S),
    )


# === The interior (analytic) inverse ===

def _candidate_coefficients(lam: np.ndarray, r: np.ndarray, s_scalar: float) -> np.ndarray:
    """Pauli-frame coefficients of the candidate inverse, a[0,0]-normalized to 1."""
    a = np.zeros((4, 4))
    a[0, 0] = 1.0
    denom = 1.0 - s_scalar
    for j in range(3):
        a[0, j + 1] = r[j] * (1.0 - lam[j] ** 2) / denom
    for i in range(3):
        for j in range(3):
            a[i + 1, j + 1] = -lam[i] * r[i] * a[0, j + 1]
        a[i + 1, i + 1] += lam[i]
    return a


def analytic_inverse(
    p: PauliChannel,
    s: BlochState,
    tol: float = 1e-9,
    *,
    build_kraus: bool = True,
) -> InverseRecord:
    """Closed-form candidate inverse for a strictly contracting Pauli channel.

    The defining identity is satisfied exactly by construction; the returned
    report says whether the candidate is completely positive. Kraus
    operators are extracted only for feasible candidates (and only when
    ``build_kraus`` is set; region scans switch it off).

    :raises EigenvalueOnBoundaryError: when some |lambda_i| >= 1 - 1e-12.
    :raises SingularSError: when S = sum lambda_i^2 r_i^2 >= 1 - 1e-12.
    """
    lam = p.lam
    if np.abs(lam).max() >= 1.0 - _BOUNDARY_EPS:
        raise EigenvalueOnBoundaryError(
            f"|lambda| = {np.abs(lam).max()}; use the unscathed/adjoint route"
        )
    r = s.r
    s_scalar = float(np.sum(lam * lam * r * r))
    if s_scalar >= 1.0 - _BOUNDARY_EPS:
        raise SingularSError(f"S = {s_scalar} is too close to 1")
    a = _candidate_coefficients(lam, r, s_scalar)
    jam = pauli_reconstruct(a / 2.0)
    choi = choi_from_jam(jam)
    report = gamel_report(choi, s_scalar, tol)
    kraus = tuple(kraus_from_choi(choi, tol)) if (build_kraus and report.feasible) else ()
    return InverseRecord(
        a=a, S=s_scalar, choi=choi, kraus=kraus, report=report, unique=True, residual=0.0
    )


# === Linear-algebra route to the same operator ===

def solve_anticommutator(m: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve {m (x) I, x} = b for x, with m a 2x2 Hermitian PSD matrix.

    Works in m's eigenbasis, where each 2x2 block of x is the matching block
    of b divided by an eigenvalue-pair sum. A vanishing pair sum makes the
    equation rank deficient: if the corresponding b block is nonzero there
    is no solution; if it is zero, the minimal-norm (zero) block is chosen
    and a NonUniqueSolutionWarning is emitted.
    """
    m = np.asarray(m, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if m.shape != (2, 2) or b.shape != (4, 4):
        raise ValueError("expected m of shape (2, 2) and b of shape (4, 4)")
    w, vec = herm_eig(m)
    if w[0] < -1e-10:
        raise NotPSDError(f"m has eigenvalue {w[0]:.3e} < 0")
    basis = tensor(vec, _ID2)
    bt = basis.conj().T @ b @ basis
    xt = np.zeros((4, 4), dtype=np.complex128)
    zero_tol = 1e-10 * max(1.0, np.abs(b).max())
    for k in range(2):
        for l in range(2):
            denom = w[k] + w[l]
            block = bt[2 * k : 2 * k + 2, 2 * l : 2 * l + 2]
            if denom <= _BOUNDARY_EPS:
                if np.abs(block).max() > zero_tol:
                    raise RankDeficientError(
                        f"eigenvalue pair ({k}, {l}) sums to {denom} against a nonzero block"
                    )
                warnings.warn(
                    "anticommutator equation is rank deficient; minimal-norm block chosen",
                    NonUniqueSolutionWarning,
                    stacklevel=2,
                )
                continue
            xt[2 * k : 2 * k + 2, 2 * l : 2 * l + 2] = block / denom
    return basis @ xt @ basis.conj().T


# === Full pipeline ===

def bayesian_inverse(e, s: BlochState, tol: float = 1e-9):
    """Decide and construct the Bayesian inverse of a unital channel.

    Pipeline: factor the channel through a Pauli channel between two
    unitaries, move the state into the Pauli frame, run either the
    boundary (unscathed/adjoint) or interior (closed-form + positivity)
    route, then rotate the result back to the original frame.

    :return: an InverseRecord, or a NoInverse explaining the obstruction.
    :raises NotUnitalError / NotCPTPError: if e is out of contract.
    """
    if isinstance(e, PauliChannel):
        u = v = None
        pch, s_frame = e, s
    else:
        u, pch, v = unital_to_pauli(e, tol)
        s_frame = apply(ChannelRep.from_unitary(v), s)

    lam = pch.lam
    if np.abs(lam).max() >= 1.0 - _BOUNDARY_EPS:
        if is_unscathed(pch, s_frame) is None:
            return NoInverse(
                reason="not-unscathed", residuals=unscathed_residuals(pch, s_frame)
            )
        f_frame = ChannelRep.from_pauli(pch)  # adjoint of a Pauli channel is itself
        a = np.diag(np.concatenate(([1.0], lam)))
        s_scalar = float(np.sum(lam * lam * s_frame.r * s_frame.r))
        report = gamel_report(f_frame.choi, s_scalar, tol)
        unique = bool(s_scalar < 1.0 - _BOUNDARY_EPS)
    else:
        rec = analytic_inverse(pch, s_frame, tol, build_kraus=False)
        if not rec.report.feasible:
            return NoInverse(reason="cp-infeasible", report=rec.report)
        f_frame = ChannelRep.from_jam(pauli_reconstruct(rec.a / 2.0))
        a, s_scalar, report, unique = rec.a, rec.S, rec.report, rec.unique

    final = f_frame if u is None else transport_inverse(u, v, f_frame)
    if not is_cptp(final, max(tol, 1e-9)):
        raise InternalCPViolationError("constructed inverse failed the CPTP check")
    residual = bayes_residual(e, s, final)
    if residual > max(tol, 1e-9):
        raise InternalCPViolationError(f"constructed inverse has residual {residual:.3e}")
    return InverseRecord(
        a=a,
        S=s_scalar,
        choi=final.choi,
        kraus=tuple(kraus_from_choi(final.choi, tol)),
        report=report,
        unique=unique,
        residual=residual,
    )
