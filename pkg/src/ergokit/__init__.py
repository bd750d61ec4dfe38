"""Work extraction from a driven two-level emitter coupled to a photonic bath.

Simulates the damped Bloch equations under continuous or pulsed drive and
tracks the extractable work (total, incoherent and coherent ergotropy)
along the trajectory.
"""

from .qstate import (
    BatteryHamiltonian,
    BlochVector,
    DimensionMismatch,
    NLevelState,
    NonPhysicalState,
    QubitState,
    ValidationReport,
    bloch_from_state,
    energy,
    excited_state,
    ground_state,
    max_coherent_state,
    state_from_bloch,
    validate,
)
from .ergotropy import (
    ConsistencyError,
    DimensionTooLarge,
    ErgotropyBreakdown,
    NoConvergence,
    Spectrum,
    ergotropy_breakdown,
    ergotropy_incoherent,
    ergotropy_total,
    hermitian_eigensystem,
    passive_energy_oracle,
    passive_state_energy,
    qubit_ergotropy_closed_form,
)
from .dynamics import (
    ContinuousDrive,
    DriveProtocol,
    InvalidConfig,
    NoDrive,
    PhysicsParams,
    PiXPulseTrain,
    SquarePulseTrain,
    StepOverPulseEvent,
    TrajectoryRecord,
    TrajectorySample,
    apply_pi_x,
    bloch_rhs,
    rk4_step,
    simulate,
    steady_state,
)

__version__ = "0.1.0"

__all__ = [
    "BatteryHamiltonian",
    "BlochVector",
    "ConsistencyError",
    "ContinuousDrive",
    "DimensionMismatch",
    "DimensionTooLarge",
    "DriveProtocol",
    "ErgotropyBreakdown",
    "InvalidConfig",
    "NLevelState",
    "NoConvergence",
    "NoDrive",
    "NonPhysicalState",
    "PhysicsParams",
    "PiXPulseTrain",
    "QubitState",
    "Spectrum",
    "SquarePulseTrain",
    "StepOverPulseEvent",
    "TrajectoryRecord",
    "TrajectorySample",
    "ValidationReport",
    "apply_pi_x",
    "bloch_from_state",
    "bloch_rhs",
    "energy",
    "ergotropy_breakdown",
    "ergotropy_incoherent",
    "ergotropy_total",
    "excited_state",
    "ground_state",
    "hermitian_eigensystem",
    "max_coherent_state",
    "passive_energy_oracle",
    "passive_state_energy",
    "qubit_ergotropy_closed_form",
    "rk4_step",
    "simulate",
    "state_from_bloch",
    "steady_state",
    "validate",
]
