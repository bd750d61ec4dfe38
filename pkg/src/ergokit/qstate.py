"""Qubit and small N-level quantum states, Bloch coordinates and energies.

The two-level emitter is stored in (population, coherence) form: the excited
population ``rho_ee`` and the single independent coherence ``rho_ge``.  The
ground population and the conjugate coherence are implied by trace one and
Hermiticity, so every stored state has unit trace by construction.

Sign conventions: ``rho_ge = (r1 + i*r2) / 2`` and ``r3 = 2*rho_ee - 1``,
i.e. the excited state sits at the north pole of the Bloch sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

POSITIVITY_TOL = 1e-9


class NonPhysicalState(ValueError):
    """State violates trace, Hermiticity or positivity beyond tolerance."""


class DimensionMismatch(ValueError):
    """State dimension and Hamiltonian level count disagree."""


@dataclass(frozen=True)
class QubitState:
    """Two-level density matrix in (population, coherence) form.

    ``rho_ee`` is the excited-state population, ``rho_ge = <g|rho|e>`` the
    coherence; ``rho_eg = conj(rho_ge)`` is implied.  ``rho_gg`` defaults to
    ``1 - rho_ee`` and is stored so that a pi_x pulse can swap the two
    populations bitwise (an exact involution; recomputing 1 - x twice is
    not).  Positivity (`|rho_ge|^2 <= rho_ee*(1 - rho_ee)`, i.e. Bloch
    radius <= 1) is enforced up to ``POSITIVITY_TOL`` at construction.
    """

    rho_ee: float
    rho_ge: complex
    rho_gg: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "rho_ee", float(self.rho_ee))
        object.__setattr__(self, "rho_ge", complex(self.rho_ge))
        if self.rho_gg is None:
            object.__setattr__(self, "rho_gg", 1.0 - self.rho_ee)
        else:
            object.__setattr__(self, "rho_gg", float(self.rho_gg))
            if abs(self.rho_ee + self.rho_gg - 1.0) > 1e-12:
                raise NonPhysicalState(
                    f"populations sum to {self.rho_ee + self.rho_gg!r}, not 1"
                )
        excess = positivity_excess(self.rho_ee, self.rho_ge)
        if excess > POSITIVITY_TOL:
            raise NonPhysicalState(
                f"positivity violated by {excess:.3e} "
                f"(rho_ee={self.rho_ee!r}, |rho_ge|={abs(self.rho_ge)!r})"
            )

    def to_matrix(self) -> np.ndarray:
        """2x2 density matrix in the ascending-energy basis (|g>, |e>)."""
        return np.array(
            [
                [self.rho_gg, self.rho_ge],
                [np.conj(self.rho_ge), self.rho_ee],
            ],
            dtype=complex,
        )


def positivity_excess(rho_ee: float, rho_ge: complex) -> float:
    """How far (rho_ee, rho_ge) sits outside the physical set; <= 0 is valid.

    Returns the largest of the three violations: rho_ee below 0, rho_ee
    above 1, and |rho_ge|^2 above rho_ee*(1 - rho_ee).
    """
    return max(
        -rho_ee,
        rho_ee - 1.0,
        abs(rho_ge) ** 2 - rho_ee * (1.0 - rho_ee),
    )


@dataclass(frozen=True)
class BlochVector:
    """Real Bloch components (r1, r2, r3); physical states have radius <= 1."""

    r1: float
    r2: float
    r3: float

    @property
    def r(self) -> float:
        """Bloch radius sqrt(r1^2 + r2^2 + r3^2)."""
        return math.sqrt(self.r1**2 + self.r2**2 + self.r3**2)


@dataclass(frozen=True)
class BatteryHamiltonian:
    """Diagonal energy ladder the extractable work is measured against."""

    levels: tuple[float, ...]

    def __post_init__(self):
        levels = tuple(float(x) for x in self.levels)
        if len(levels) < 2:
            raise ValueError("need at least two energy levels")
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise ValueError(f"levels must be strictly ascending, got {levels}")
        object.__setattr__(self, "levels", levels)

    @classmethod
    def qubit(cls, omega0: float = 1.0) -> "BatteryHamiltonian":
        """Two-level ladder with ground energy 0 and splitting omega0."""
        return cls((0.0, omega0))

    @property
    def dim(self) -> int:
        return len(self.levels)


@dataclass(frozen=True)
class NLevelState:
    """Generic dim x dim density matrix, validated at construction.

    Trace and Hermiticity are checked to 1e-12, eigenvalue positivity to
    -1e-9 (integrator round-off on the qubit path maps into the same
    tolerance).  The stored array is a read-only copy.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
            raise NonPhysicalState(f"expected a square matrix of dim >= 2, got shape {m.shape}")
        report = _check_density_matrix(m)
        if report is not None:
            raise NonPhysicalState(f"{report[0]} violated by {report[1]:.3e}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a density-matrix check: ok, or first violation found."""

    ok: bool
    violation: str | None = None
    magnitude: float = 0.0


def _check_density_matrix(m: np.ndarray) -> tuple[str, float] | None:
    """First violated invariant of (trace, Hermiticity, positivity), or None."""
    trace_err = abs(m.trace() - 1.0)
    if trace_err > 1e-12:
        return ("trace", float(trace_err))
    herm_err = float(np.max(np.abs(m - m.conj().T)))
    if herm_err > 1e-12:
        return ("hermiticity", herm_err)
    if m.shape[0] == 2:
        # closed form saves an eigensolve on the hot qubit path
        h = 0.5 * (m[0, 0].real - m[1, 1].real)
        rad = math.hypot(h, abs(m[0, 1]))
        min_eig = 0.5 * (m[0, 0].real + m[1, 1].real) - rad
    else:
        min_eig = float(np.linalg.eigvalsh(m)[0])
    if min_eig < -POSITIVITY_TOL:
        return ("positivity", -min_eig)
    return None


def validate(matrix: np.ndarray | NLevelState) -> ValidationReport:
    """Check a candidate density matrix, reporting the first violation.

    Accepts a raw array (possibly invalid) or an existing ``NLevelState``.
    """
    m = matrix.matrix if isinstance(matrix, NLevelState) else np.asarray(matrix, dtype=complex)
    report = _check_density_matrix(m)
    if report is None:
        return ValidationReport(ok=True)
    return ValidationReport(ok=False, violation=report[0], magnitude=report[1])


def bloch_from_state(s: QubitState) -> BlochVector:
    """Bloch components of a qubit state: r3 = 2*rho_ee - 1, r1 + i*r2 = 2*rho_ge."""
    return BlochVector(
        r1=2.0 * s.rho_ge.real,
        r2=2.0 * s.rho_ge.imag,
        r3=2.0 * s.rho_ee - 1.0,
    )


def state_from_bloch(b: BlochVector) -> QubitState:
    """Inverse of :func:`bloch_from_state`; rejects radius > 1 + tol."""
    if b.r > 1.0 + POSITIVITY_TOL:
        raise NonPhysicalState(f"Bloch radius {b.r!r} exceeds 1")
    return QubitState(
        rho_ee=0.5 * (1.0 + b.r3),
        rho_ge=0.5 * (b.r1 + 1j * b.r2),
    )


def energy(state: QubitState | NLevelState, h: BatteryHamiltonian) -> float:
    """Average energy Tr(rho H) against the diagonal ladder ``h``."""
    if isinstance(state, QubitState):
        if h.dim != 2:
            raise DimensionMismatch(f"qubit state against {h.dim} levels")
        return h.levels[0] * state.rho_gg + h.levels[1] * state.rho_ee
    if state.dim != h.dim:
        raise DimensionMismatch(f"state dim {state.dim} against {h.dim} levels")
    return float(np.real(np.diag(state.matrix)) @ np.asarray(h.levels))


def excited_state() -> QubitState:
    return QubitState(1.0, 0.0)


def ground_state() -> QubitState:
    return QubitState(0.0, 0.0)


def max_coherent_state() -> QubitState:
    """(|e> + |g>)/sqrt(2): rho_ee = 1/2 with maximal real coherence."""
    return QubitState(0.5, 0.5)
