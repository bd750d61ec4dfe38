"""Time evolution of the driven, spontaneously emitting two-level emitter.

Between control events the state obeys the damped Bloch equations

    d(rho_ee)/dt = Omega_x * Im(rho_ge) - Gamma * rho_ee
    d(rho_ge)/dt = (i*Delta - Gamma/2) * rho_ge - i*(Omega_x/2)*(2*rho_ee - 1)

with the ground population and rho_eg implied by trace one and Hermiticity.
Time and energy units follow the Gamma = 2 normalization, so the undriven
emission line has unit half-width.

Integration is fixed-step classical RK4 with steps aligned to every control
event (instantaneous pi_x pulses, square-pulse edges), which keeps the drive
amplitude exactly constant within each step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import ergotropy
from .qstate import (
    BatteryHamiltonian,
    NonPhysicalState,
    POSITIVITY_TOL,
    QubitState,
    energy as qstate_energy,
    positivity_excess,
)

TIME_EPS = 1e-12


class InvalidConfig(ValueError):
    """A simulation parameter violates its documented precondition."""


class StepOverPulseEvent(RuntimeError):
    """An RK4 step was asked to straddle a control event."""


@dataclass(frozen=True)
class PhysicsParams:
    """Emitter and battery constants.

    gamma: spontaneous emission rate (unit convention: 2).
    delta: static detuning between the drive carrier and the transition.
    omega0_battery: level splitting the extractable work is measured against.
    """

    gamma: float = 2.0
    delta: float = 0.0
    omega0_battery: float = 1.0

    def __post_init__(self):
        if self.gamma <= 0.0:
            raise InvalidConfig(f"gamma must be positive, got {self.gamma!r}")
        if self.omega0_battery <= 0.0:
            raise InvalidConfig(f"omega0_battery must be positive, got {self.omega0_battery!r}")


@dataclass(frozen=True)
class NoDrive:
    """Free decay; the control field stays off."""

    def amplitude(self, t: float) -> float:
        return 0.0

    def pulse_times(self) -> tuple[float, ...]:
        return ()

    def switch_times(self) -> tuple[float, ...]:
        return ()


@dataclass(frozen=True)
class ContinuousDrive:
    """Constant Rabi drive of amplitude omega."""

    omega: float

    def amplitude(self, t: float) -> float:
        return self.omega

    def pulse_times(self) -> tuple[float, ...]:
        return ()

    def switch_times(self) -> tuple[float, ...]:
        return ()


@dataclass(frozen=True)
class PiXPulseTrain:
    """Periodic instantaneous pi_x pulses: n_pulses kicks spaced tau apart.

    The first pulse defaults to t = tau (one free interval before the train
    starts); set first_pulse_at to override.
    """

    tau: float
    n_pulses: int
    first_pulse_at: float | None = None

    def __post_init__(self):
        if self.tau <= 0.0:
            raise InvalidConfig(f"tau must be positive, got {self.tau!r}")
        if self.n_pulses < 1:
            raise InvalidConfig(f"n_pulses must be >= 1, got {self.n_pulses!r}")
        if self.first_pulse_at is not None and self.first_pulse_at < 0.0:
            raise InvalidConfig(f"first_pulse_at must be >= 0, got {self.first_pulse_at!r}")

    @property
    def start(self) -> float:
        return self.tau if self.first_pulse_at is None else self.first_pulse_at

    def amplitude(self, t: float) -> float:
        return 0.0

    def pulse_times(self) -> tuple[float, ...]:
        return tuple(self.start + k * self.tau for k in range(self.n_pulses))

    def switch_times(self) -> tuple[float, ...]:
        return ()


@dataclass(frozen=True)
class SquarePulseTrain:
    """Finite square pulses: amplitude omega on [k*tau, k*tau + duration).

    Pulses fire at k*tau for k = 1..n_pulses.  duration defaults to pi/omega
    (a finite-duration pi pulse) and may not exceed the period tau.
    """

    omega: float
    tau: float
    n_pulses: int
    duration: float | None = None

    def __post_init__(self):
        if self.omega <= 0.0:
            raise InvalidConfig(f"omega must be positive, got {self.omega!r}")
        if self.tau <= 0.0:
            raise InvalidConfig(f"tau must be positive, got {self.tau!r}")
        if self.n_pulses < 1:
            raise InvalidConfig(f"n_pulses must be >= 1, got {self.n_pulses!r}")
        if not 0.0 < self.width <= self.tau + TIME_EPS:
            raise InvalidConfig(
                f"pulse duration {self.width!r} must lie in (0, tau={self.tau!r}]"
            )

    @property
    def width(self) -> float:
        return math.pi / self.omega if self.duration is None else self.duration

    def amplitude(self, t: float) -> float:
        k = math.floor(t / self.tau + TIME_EPS)
        if 1 <= k <= self.n_pulses and t < k * self.tau + self.width:
            return self.omega
        return 0.0

    def pulse_times(self) -> tuple[float, ...]:
        return ()

    def switch_times(self) -> tuple[float, ...]:
        edges = []
        for k in range(1, self.n_pulses + 1):
            edges.append(k * self.tau)
            if self.width < self.tau:
                edges.append(k * self.tau + self.width)
        return tuple(edges)


DriveProtocol = NoDrive | ContinuousDrive | PiXPulseTrain | SquarePulseTrain


@dataclass(frozen=True)
class TrajectorySample:
    """One recorded point; pre/post pulse pairs share the same t."""

    t: float
    state: QubitState
    tag: str  # "regular" | "pre_pulse" | "post_pulse"


@dataclass(frozen=True)
class TrajectoryRecord:
    """Sampled trajectory with per-sample energy and ergotropy split.

    The derived arrays are computed from the stored states by the ergotropy
    module, never re-derived elsewhere.
    """

    params: PhysicsParams
    protocol: DriveProtocol
    samples: tuple[TrajectorySample, ...]
    energy: np.ndarray = field(repr=False)
    total_ergotropy: np.ndarray = field(repr=False)
    incoherent_ergotropy: np.ndarray = field(repr=False)
    coherent_ergotropy: np.ndarray = field(repr=False)

    @property
    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.samples])

    @property
    def excited_population(self) -> np.ndarray:
        return np.array([s.state.rho_ee for s in self.samples])

    @property
    def coherence(self) -> np.ndarray:
        return np.array([s.state.rho_ge for s in self.samples])

    @property
    def tags(self) -> tuple[str, ...]:
        return tuple(s.tag for s in self.samples)

    def __len__(self) -> int:
        return len(self.samples)


def bloch_rhs(s: QubitState, omega_x: float, p: PhysicsParams) -> tuple[float, complex]:
    """Time derivative of (rho_ee, rho_ge) under drive amplitude omega_x."""
    return _rhs(s.rho_ee, s.rho_ge, omega_x, p.gamma, p.delta)


def _rhs(
    rho_ee: float, rho_ge: complex, omega_x: float, gamma: float, delta: float
) -> tuple[float, complex]:
    d_ee = omega_x * rho_ge.imag - gamma * rho_ee
    d_ge = (1j * delta - 0.5 * gamma) * rho_ge - 0.5j * omega_x * (2.0 * rho_ee - 1.0)
    return d_ee, d_ge


def _rk4(
    rho_ee: float,
    rho_ge: complex,
    dt: float,
    omega_x: float,
    gamma: float,
    delta: float,
) -> tuple[float, complex]:
    k1e, k1g = _rhs(rho_ee, rho_ge, omega_x, gamma, delta)
    k2e, k2g = _rhs(rho_ee + 0.5 * dt * k1e, rho_ge + 0.5 * dt * k1g, omega_x, gamma, delta)
    k3e, k3g = _rhs(rho_ee + 0.5 * dt * k2e, rho_ge + 0.5 * dt * k2g, omega_x, gamma, delta)
    k4e, k4g = _rhs(rho_ee + dt * k3e, rho_ge + dt * k3g, omega_x, gamma, delta)
    sixth = dt / 6.0
    return (
        rho_ee + sixth * (k1e + 2.0 * (k2e + k3e) + k4e),
        rho_ge + sixth * (k1g + 2.0 * (k2g + k3g) + k4g),
    )


def apply_pi_x(s: QubitState) -> QubitState:
    """Instantaneous pi_x pulse: swap populations, conjugate the coherence.

    Both pieces are bitwise reversible, so applying the pulse twice returns
    the original state exactly.
    """
    return QubitState(rho_ee=s.rho_gg, rho_ge=s.rho_ge.conjugate(), rho_gg=s.rho_ee)


def rk4_step(
    s: QubitState, t: float, dt: float, protocol: DriveProtocol, p: PhysicsParams
) -> QubitState:
    """Single RK4 update over an event-free interval [t, t + dt].

    The drive amplitude is sampled at the step midpoint; with event-aligned
    stepping every protocol here is constant across the step, so this is
    exact.  Raises StepOverPulseEvent if a pulse or square-pulse edge lies
    strictly inside the step.
    """
    if dt <= 0.0:
        raise InvalidConfig(f"dt must be positive, got {dt!r}")
    for ev in protocol.pulse_times() + protocol.switch_times():
        if t + TIME_EPS < ev < t + dt - TIME_EPS:
            raise StepOverPulseEvent(f"event at t={ev!r} inside step [{t!r}, {t + dt!r}]")
    omega_x = protocol.amplitude(t + 0.5 * dt)
    rho_ee, rho_ge = _rk4(s.rho_ee, s.rho_ge, dt, omega_x, p.gamma, p.delta)
    return QubitState(rho_ee, rho_ge)


def steady_state(protocol: ContinuousDrive, p: PhysicsParams) -> QubitState:
    """Fixed point of the continuously driven Bloch equations.

    rho_ee = (Omega^2/4) / (Delta^2 + Gamma^2/4 + Omega^2/2), and the
    coherence follows from the vanishing of its own derivative.  The
    returned state annihilates bloch_rhs to linear-solve precision.
    """
    if not isinstance(protocol, ContinuousDrive):
        raise InvalidConfig("steady state is defined for the continuous drive only")
    omega, gamma, delta = protocol.omega, p.gamma, p.delta
    lorentz = delta**2 + 0.25 * gamma**2
    rho_ee = 0.25 * omega**2 / (lorentz + 0.5 * omega**2)
    inversion = 2.0 * rho_ee - 1.0
    rho_ge = 0.5 * omega * (delta - 0.5j * gamma) * inversion / lorentz
    return QubitState(rho_ee, rho_ge)


def simulate(
    initial: QubitState,
    protocol: DriveProtocol,
    p: PhysicsParams,
    t_end: float,
    dt: float,
    sample_every: int = 1,
) -> TrajectoryRecord:
    """Integrate the driven-dissipative dynamics and record the trajectory.

    Steps land exactly on every control event (final substep before an
    event is shortened).  At each instantaneous pulse the state is recorded
    immediately before and after the kick; otherwise every sample_every-th
    step is recorded, plus the initial and final states.  Raises
    NonPhysicalState with the failure time if round-off ever pushes the
    state outside the Bloch ball beyond tolerance.
    """
    if dt <= 0.0:
        raise InvalidConfig(f"dt must be positive, got {dt!r}")
    if t_end <= 0.0:
        raise InvalidConfig(f"t_end must be positive, got {t_end!r}")
    if sample_every < 1:
        raise InvalidConfig(f"sample_every must be >= 1, got {sample_every!r}")
    if isinstance(protocol, (PiXPulseTrain, SquarePulseTrain)) and dt > protocol.tau / 10.0:
        raise InvalidConfig(
            f"dt={dt!r} too coarse for pulsed drive: need dt <= tau/10 = {protocol.tau / 10.0!r}"
        )

    pulse_at = {tp for tp in protocol.pulse_times() if tp <= t_end + TIME_EPS}
    align: list[float] = sorted(
        {ev for ev in (*pulse_at, *protocol.switch_times()) if TIME_EPS < ev <= t_end + TIME_EPS}
    )

    samples: list[TrajectorySample] = []
    rho_ee, rho_ge = initial.rho_ee, initial.rho_ge

    def record(t: float, tag: str) -> None:
        samples.append(TrajectorySample(t=t, state=QubitState(rho_ee, rho_ge), tag=tag))

    def fire_pulse(t: float) -> tuple[float, complex]:
        pre = QubitState(rho_ee, rho_ge)
        post = apply_pi_x(pre)
        samples.append(TrajectorySample(t=t, state=pre, tag="pre_pulse"))
        samples.append(TrajectorySample(t=t, state=post, tag="post_pulse"))
        return post.rho_ee, post.rho_ge

    if any(tp <= TIME_EPS for tp in pulse_at):
        rho_ee, rho_ge = fire_pulse(0.0)
    else:
        record(0.0, "regular")

    t = 0.0
    steps = 0
    next_align = 0
    while t < t_end - TIME_EPS:
        while next_align < len(align) and align[next_align] <= t + TIME_EPS:
            next_align += 1
        # align values may overshoot t_end by <= TIME_EPS; prefer them so the
        # pulse branch below sees the exact event float
        target = align[next_align] if next_align < len(align) else t_end
        if t + dt < target - TIME_EPS:
            t_new = t + dt
            h = dt
        else:
            t_new = target
            h = target - t
        omega_x = protocol.amplitude(t + 0.5 * h)
        rho_ee, rho_ge = _rk4(rho_ee, rho_ge, h, omega_x, p.gamma, p.delta)
        excess = positivity_excess(rho_ee, rho_ge)
        if excess > POSITIVITY_TOL:
            raise NonPhysicalState(f"at t={t_new!r}: positivity violated by {excess:.3e}")
        t = t_new
        steps += 1
        if t in pulse_at:
            rho_ee, rho_ge = fire_pulse(t)
        elif steps % sample_every == 0 or t >= t_end - TIME_EPS:
            record(t, "regular")

    battery = BatteryHamiltonian.qubit(p.omega0_battery)
    breakdowns = [ergotropy.ergotropy_breakdown(s.state, battery) for s in samples]
    energies = np.array([qstate_energy(s.state, battery) for s in samples])
    return TrajectoryRecord(
        params=p,
        protocol=protocol,
        samples=tuple(samples),
        energy=energies,
        total_ergotropy=np.array([b.total for b in breakdowns]),
        incoherent_ergotropy=np.array([b.incoherent for b in breakdowns]),
        coherent_ergotropy=np.array([b.coherent for b in breakdowns]),
    )
