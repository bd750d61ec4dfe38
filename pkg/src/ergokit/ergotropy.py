"""Extractable work (ergotropy) of battery states and its coherent split.

Total ergotropy is the energy gap to the passive state: eigenvalues of the
density matrix sorted descending and paired with the energy levels sorted
ascending.  The incoherent share is the ergotropy left after wiping all
off-diagonal elements in the energy eigenbasis (the dephasing map); the
coherent share is the remainder.

For qubits everything also has a closed form in Bloch coordinates,
implemented independently in :func:`qubit_ergotropy_closed_form` so the two
routes can cross-check each other.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .qstate import (
    BatteryHamiltonian,
    BlochVector,
    DimensionMismatch,
    NLevelState,
    NonPhysicalState,
    POSITIVITY_TOL,
    QubitState,
    energy,
)

# Values below this are treated as hard errors, not round-off to clamp.
NEGATIVE_TOL = -1e-12

_JACOBI_TARGET = 1e-12
_JACOBI_MAX_SWEEPS = 60


class NoConvergence(RuntimeError):
    """Jacobi sweeps exhausted before the off-diagonal norm target."""

    def __init__(self, residual: float, sweeps: int):
        self.residual = residual
        self.sweeps = sweeps
        super().__init__(f"off-diagonal norm {residual:.3e} after {sweeps} sweeps")


class DimensionTooLarge(ValueError):
    """Brute-force enumeration refused above its dimension cap."""


class ConsistencyError(RuntimeError):
    """An internally guaranteed non-negative quantity came out significantly negative."""


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending with matching orthonormal eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)


@dataclass(frozen=True)
class ErgotropyBreakdown:
    """Total extractable work and its incoherent/coherent split.

    ``total = incoherent + coherent`` holds to clamp precision;
    ``passive_energy`` is the energy of the zero-ergotropy state reached by
    the optimal cyclic unitary.
    """

    total: float
    incoherent: float
    coherent: float
    passive_energy: float


def _as_matrix(state: QubitState | NLevelState) -> np.ndarray:
    return state.to_matrix() if isinstance(state, QubitState) else state.matrix


def _eig2(a: float, b: float, z: complex) -> tuple[np.ndarray, np.ndarray]:
    """Exact eigensystem of the Hermitian 2x2 [[a, z], [conj(z), b]].

    Returns (descending eigenvalues, unitary eigenvector columns).  The
    eigenvector branch is chosen by the sign of (a - b)/2 to avoid
    cancellation near diagonal matrices.
    """
    mean = 0.5 * (a + b)
    half_gap = 0.5 * (a - b)
    rad = math.hypot(half_gap, abs(z))
    vals = np.array([mean + rad, mean - rad])
    if rad == 0.0:
        return vals, np.eye(2, dtype=complex)
    if half_gap >= 0.0:
        v_hi = np.array([rad + half_gap, np.conj(z)], dtype=complex)
        v_lo = np.array([-z, rad + half_gap], dtype=complex)
    else:
        v_hi = np.array([z, rad - half_gap], dtype=complex)
        v_lo = np.array([-(rad - half_gap), np.conj(z)], dtype=complex)
    vecs = np.column_stack([v_hi / np.linalg.norm(v_hi), v_lo / np.linalg.norm(v_lo)])
    return vals, vecs


def _offdiag_norm(m: np.ndarray) -> float:
    off = m - np.diag(np.diag(m))
    return float(np.linalg.norm(off))


def _jacobi(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    Each pivot (p, q) is annihilated by the exact unitary that diagonalizes
    its 2x2 block; sweeps repeat until the off-diagonal Frobenius norm drops
    below 1e-12.
    """
    a = np.array(matrix, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    for sweep in range(1, _JACOBI_MAX_SWEEPS + 1):
        if _offdiag_norm(a) < _JACOBI_TARGET:
            return np.real(np.diag(a)).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) == 0.0:
                    continue
                _, u = _eig2(a[p, p].real, a[q, q].real, a[p, q])
                a[:, [p, q]] = a[:, [p, q]] @ u
                a[[p, q], :] = u.conj().T @ a[[p, q], :]
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, [p, q]] = v[:, [p, q]] @ u
    residual = _offdiag_norm(a)
    if residual < _JACOBI_TARGET:
        return np.real(np.diag(a)).copy(), v
    raise NoConvergence(residual, _JACOBI_MAX_SWEEPS)


def hermitian_eigensystem(state: QubitState | NLevelState) -> Spectrum:
    """Eigen-decomposition with eigenvalues ordered descending.

    dim 2 uses the exact closed form; dim >= 3 runs cyclic Jacobi sweeps
    and raises :class:`NoConvergence` if the 1e-12 off-diagonal target is
    not reached within the sweep cap.
    """
    m = _as_matrix(state)
    if m.shape[0] == 2:
        vals, vecs = _eig2(m[0, 0].real, m[1, 1].real, m[0, 1])
        return Spectrum(eigenvalues=vals, eigenvectors=vecs)
    vals, vecs = _jacobi(m)
    order = np.argsort(vals)[::-1]
    return Spectrum(eigenvalues=vals[order], eigenvectors=vecs[:, order])


def passive_state_energy(spec: Spectrum, h: BatteryHamiltonian) -> float:
    """Minimal energy reachable by cyclic unitaries: descending eigenvalues
    paired with ascending levels."""
    if spec.dim != h.dim:
        raise DimensionMismatch(f"spectrum dim {spec.dim} against {h.dim} levels")
    return float(spec.eigenvalues @ np.asarray(h.levels))


def passive_energy_oracle(spec: Spectrum, h: BatteryHamiltonian) -> float:
    """Brute-force passive energy: minimum over all eigenvalue-to-level
    assignments.  Independent check of the sorting rule; dim <= 8 only."""
    if spec.dim != h.dim:
        raise DimensionMismatch(f"spectrum dim {spec.dim} against {h.dim} levels")
    if spec.dim > 8:
        raise DimensionTooLarge(f"dim {spec.dim} exceeds the factorial cap of 8")
    levels = np.asarray(h.levels)
    return min(
        float(np.asarray(perm) @ levels)
        for perm in itertools.permutations(spec.eigenvalues.tolist())
    )


def _clamp_nonnegative(value: float, label: str) -> float:
    if value < NEGATIVE_TOL:
        raise ConsistencyError(f"{label} = {value!r} below the {NEGATIVE_TOL} noise floor")
    return max(0.0, value)


def ergotropy_total(state: QubitState | NLevelState, h: BatteryHamiltonian) -> float:
    """Maximum work extractable by cyclic unitaries: E(rho) - E(passive)."""
    passive = passive_state_energy(hermitian_eigensystem(state), h)
    return _clamp_nonnegative(energy(state, h) - passive, "total ergotropy")


def _populations(state: QubitState | NLevelState, h: BatteryHamiltonian) -> np.ndarray:
    if isinstance(state, QubitState):
        if h.dim != 2:
            raise DimensionMismatch(f"qubit state against {h.dim} levels")
        return np.array([state.rho_gg, state.rho_ee])
    if state.dim != h.dim:
        raise DimensionMismatch(f"state dim {state.dim} against {h.dim} levels")
    return np.real(np.diag(state.matrix)).copy()


def ergotropy_incoherent(state: QubitState | NLevelState, h: BatteryHamiltonian) -> float:
    """Work recoverable from populations alone.

    Applies the dephasing map (keep the diagonal in the energy eigenbasis,
    zero the coherences) and measures the energy drop to the population-
    sorted passive arrangement.
    """
    levels = np.asarray(h.levels)
    pops = _populations(state, h)
    dephased_passive = np.sort(pops)[::-1] @ levels
    return _clamp_nonnegative(float(pops @ levels - dephased_passive), "incoherent ergotropy")


def ergotropy_breakdown(
    state: QubitState | NLevelState, h: BatteryHamiltonian
) -> ErgotropyBreakdown:
    """Total, incoherent and coherent ergotropy of a state in one pass."""
    passive = passive_state_energy(hermitian_eigensystem(state), h)
    total = _clamp_nonnegative(energy(state, h) - passive, "total ergotropy")
    incoherent = ergotropy_incoherent(state, h)
    coherent = _clamp_nonnegative(total - incoherent, "coherent ergotropy")
    return ErgotropyBreakdown(
        total=total, incoherent=incoherent, coherent=coherent, passive_energy=passive
    )


def qubit_ergotropy_closed_form(b: BlochVector, omega0: float = 1.0) -> ErgotropyBreakdown:
    """Qubit ergotropy directly from Bloch coordinates.

    Against levels (0, omega0): total work is (omega0/2)(r + r3); the
    incoherent share is 0 on the lower hemisphere (r3 <= 0) and omega0*r3
    above it, leaving (omega0/2)(r + r3) respectively (omega0/2)(r - r3)
    for the coherent share.  Cross-checks the eigen-decomposition route.
    """
    r = b.r
    if r > 1.0 + POSITIVITY_TOL:
        raise NonPhysicalState(f"Bloch radius {r!r} exceeds 1")
    total = 0.5 * omega0 * (r + b.r3)
    if b.r3 <= 0.0:
        incoherent = 0.0
        coherent = total
    else:
        incoherent = omega0 * b.r3
        coherent = 0.5 * omega0 * (r - b.r3)
    return ErgotropyBreakdown(
        total=total,
        incoherent=incoherent,
        coherent=coherent,
        passive_energy=0.5 * omega0 * (1.0 - r),
    )
