"""Scenario configuration: the TOML file format and the bundled presets.

A scenario file is a flat document with ``[physics]``, ``[protocol]`` and
``[output]`` sections plus top-level grid fields; ``schema = 1`` is
required and unknown fields anywhere are rejected.  Presets expand to the
same validated structure the file loader produces.
"""

from __future__ import annotations

import dataclasses
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .dynamics import (
    ContinuousDrive,
    DriveProtocol,
    InvalidConfig,
    NoDrive,
    PhysicsParams,
    PiXPulseTrain,
    SquarePulseTrain,
)
from .qstate import (
    BlochVector,
    QubitState,
    excited_state,
    ground_state,
    max_coherent_state,
    state_from_bloch,
)

SCHEMA_VERSION = 1
INITIAL_STATES = ("excited", "ground", "max_coherent", "custom")
OUTPUT_FORMATS = ("csv", "json")
PRESETS = ("fig2", "fig3", "fig4", "fig5")

_SWEEP_DELTAS = (0.0, 3.0, 5.0, 8.0)


@dataclass(frozen=True)
class OutputSpec:
    directory: Path | None = None  # resolved by the CLI when absent
    format: str = "csv"

    def __post_init__(self):
        if self.format not in OUTPUT_FORMATS:
            raise InvalidConfig(f"output.format must be one of {OUTPUT_FORMATS}, got {self.format!r}")


@dataclass(frozen=True)
class ScenarioConfig:
    """One fully specified simulation run (a single detuning value)."""

    stem: str
    initial_state: str
    physics: PhysicsParams
    protocol: DriveProtocol
    t_end: float
    dt: float
    sample_every: int
    output: OutputSpec = OutputSpec()
    initial_bloch: tuple[float, float, float] | None = None
    sweep: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.initial_state not in INITIAL_STATES:
            raise InvalidConfig(
                f"initial_state must be one of {INITIAL_STATES}, got {self.initial_state!r}"
            )
        if self.initial_state == "custom" and self.initial_bloch is None:
            raise InvalidConfig("initial_state 'custom' requires initial_bloch = [r1, r2, r3]")
        if self.dt <= 0.0:
            raise InvalidConfig(f"dt must be positive, got {self.dt!r}")
        if self.t_end <= 0.0:
            raise InvalidConfig(f"t_end must be positive, got {self.t_end!r}")
        if self.sample_every < 1:
            raise InvalidConfig(f"sample_every must be >= 1, got {self.sample_every!r}")
        if isinstance(self.protocol, (PiXPulseTrain, SquarePulseTrain)):
            if self.dt > self.protocol.tau / 10.0:
                raise InvalidConfig(
                    f"dt={self.dt!r} too coarse for pulsed drive (need <= tau/10)"
                )
        if self.sweep is not None and len(self.sweep) == 0:
            raise InvalidConfig("sweep list must not be empty when present")

    def initial(self) -> QubitState:
        if self.initial_state == "excited":
            return excited_state()
        if self.initial_state == "ground":
            return ground_state()
        if self.initial_state == "max_coherent":
            return max_coherent_state()
        return state_from_bloch(BlochVector(*self.initial_bloch))

    def with_delta(self, delta: float) -> "ScenarioConfig":
        physics = dataclasses.replace(self.physics, delta=float(delta))
        return dataclasses.replace(self, physics=physics, sweep=None)

    def to_dict(self) -> dict[str, Any]:
        """Plain-data echo of the configuration (JSON output, logs)."""
        proto: dict[str, Any] = {"kind": _protocol_kind(self.protocol)}
        if isinstance(self.protocol, ContinuousDrive):
            proto["omega"] = self.protocol.omega
        elif isinstance(self.protocol, PiXPulseTrain):
            proto.update(
                tau=self.protocol.tau,
                n_pulses=self.protocol.n_pulses,
                first_pulse_at=self.protocol.start,
            )
        elif isinstance(self.protocol, SquarePulseTrain):
            proto.update(
                omega=self.protocol.omega,
                tau=self.protocol.tau,
                n_pulses=self.protocol.n_pulses,
                duration=self.protocol.width,
            )
        out: dict[str, Any] = {
            "schema": SCHEMA_VERSION,
            "stem": self.stem,
            "initial_state": self.initial_state,
            "physics": {
                "gamma": self.physics.gamma,
                "delta": self.physics.delta,
                "omega0_battery": self.physics.omega0_battery,
            },
            "protocol": proto,
            "t_end": self.t_end,
            "dt": self.dt,
            "sample_every": self.sample_every,
            "output": {"format": self.output.format},
        }
        if self.initial_bloch is not None:
            out["initial_bloch"] = list(self.initial_bloch)
        if self.sweep is not None:
            out["sweep"] = list(self.sweep)
        return out


def _protocol_kind(protocol: DriveProtocol) -> str:
    return {
        NoDrive: "none",
        ContinuousDrive: "continuous",
        PiXPulseTrain: "periodic_pi_x",
        SquarePulseTrain: "square_pulses",
    }[type(protocol)]


def _take(table: dict, field: str, where: str, required: bool = False, default: Any = None):
    if field in table:
        return table.pop(field)
    if required:
        raise InvalidConfig(f"missing required field '{field}' in {where}")
    return default


def _reject_unknown(table: dict, where: str) -> None:
    if table:
        raise InvalidConfig(f"unknown field '{next(iter(table))}' in {where}")


def _parse_protocol(table: dict) -> DriveProtocol:
    kind = _take(table, "kind", "[protocol]", required=True)
    try:
        if kind == "none":
            proto: DriveProtocol = NoDrive()
        elif kind == "continuous":
            proto = ContinuousDrive(omega=float(_take(table, "omega", "[protocol]", required=True)))
        elif kind == "periodic_pi_x":
            first = _take(table, "first_pulse_at", "[protocol]")
            proto = PiXPulseTrain(
                tau=float(_take(table, "tau", "[protocol]", required=True)),
                n_pulses=int(_take(table, "n_pulses", "[protocol]", required=True)),
                first_pulse_at=None if first is None else float(first),
            )
        elif kind == "square_pulses":
            duration = _take(table, "duration", "[protocol]")
            proto = SquarePulseTrain(
                omega=float(_take(table, "omega", "[protocol]", required=True)),
                tau=float(_take(table, "tau", "[protocol]", required=True)),
                n_pulses=int(_take(table, "n_pulses", "[protocol]", required=True)),
                duration=None if duration is None else float(duration),
            )
        else:
            raise InvalidConfig(f"unknown protocol kind {kind!r}")
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidConfig):
            raise
        raise InvalidConfig(f"bad protocol field: {exc}") from exc
    _reject_unknown(table, "[protocol]")
    return proto


def default_t_end(protocol: DriveProtocol) -> float:
    """Span that comfortably reaches steady state (continuous) or covers the
    whole pulse train plus free decay (pulsed)."""
    if isinstance(protocol, PiXPulseTrain):
        return protocol.start + (protocol.n_pulses - 1) * protocol.tau + 2.0
    if isinstance(protocol, SquarePulseTrain):
        return protocol.n_pulses * protocol.tau + 2.0
    return 5.0


def load_config(path: str | Path) -> ScenarioConfig:
    """Parse and validate a scenario file; all preconditions fail here, not
    mid-run."""
    path = Path(path)
    try:
        with open(path, "rb") as f:
            raw = tomllib.load(f)
    except tomllib.TOMLDecodeError as exc:
        raise InvalidConfig(f"{path}: not valid TOML: {exc}") from exc

    schema = _take(raw, "schema", "config", required=True)
    if schema != SCHEMA_VERSION:
        raise InvalidConfig(f"unsupported schema {schema!r}, expected {SCHEMA_VERSION}")

    physics_table = _take(raw, "physics", "config", default={})
    try:
        physics = PhysicsParams(
            gamma=float(_take(physics_table, "gamma", "[physics]", default=2.0)),
            delta=float(_take(physics_table, "delta", "[physics]", default=0.0)),
            omega0_battery=float(
                _take(physics_table, "omega0_battery", "[physics]", default=1.0)
            ),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidConfig):
            raise
        raise InvalidConfig(f"bad physics field: {exc}") from exc
    _reject_unknown(physics_table, "[physics]")

    protocol = _parse_protocol(_take(raw, "protocol", "config", required=True))

    output_table = _take(raw, "output", "config", default={})
    out_dir = _take(output_table, "dir", "[output]")
    output = OutputSpec(
        directory=None if out_dir is None else Path(out_dir),
        format=_take(output_table, "format", "[output]", default="csv"),
    )
    _reject_unknown(output_table, "[output]")

    initial_state = _take(raw, "initial_state", "config", required=True)
    initial_bloch = _take(raw, "initial_bloch", "config")
    if initial_bloch is not None:
        if len(initial_bloch) != 3:
            raise InvalidConfig("initial_bloch must have exactly three components")
        initial_bloch = tuple(float(x) for x in initial_bloch)

    sweep = _take(raw, "sweep", "config")
    if sweep is not None:
        sweep = tuple(float(d) for d in sweep)

    t_end = _take(raw, "t_end", "config")
    stem = _take(raw, "stem", "config", default=path.stem)
    config = ScenarioConfig(
        stem=str(stem),
        initial_state=initial_state,
        physics=physics,
        protocol=protocol,
        t_end=float(t_end) if t_end is not None else default_t_end(protocol),
        dt=float(_take(raw, "dt", "config", default=1e-4)),
        sample_every=int(_take(raw, "sample_every", "config", default=10)),
        output=output,
        initial_bloch=initial_bloch,
        sweep=sweep,
    )
    _reject_unknown(raw, "config")
    return config


def _delta_tag(delta: float) -> str:
    return f"delta{delta:g}"


def expand_sweep(config: ScenarioConfig) -> list[ScenarioConfig]:
    """One config per sweep value (delta ascending), stems tagged by delta."""
    if config.sweep is None:
        return [config]
    out = []
    for delta in sorted(config.sweep):
        single = config.with_delta(delta)
        out.append(dataclasses.replace(single, stem=f"{config.stem}_{_delta_tag(delta)}"))
    return out


def preset_runs(name: str, fmt: str = "csv") -> list[ScenarioConfig]:
    """Expand a bundled demo scenario into its individual runs.

    fig2: continuous resonant drive for both reference initial states, with
          matching undriven runs for the insets.
    fig3: continuous drive across the detuning grid.
    fig4: instantaneous pi_x pulse train at resonance.
    fig5: the pulse train across the detuning grid.
    """
    if name not in PRESETS:
        raise InvalidConfig(f"unknown preset {name!r}; choose from {PRESETS}")
    base = dict(t_end=5.0, dt=1e-4, sample_every=10, output=OutputSpec(format=fmt))
    states = ("excited", "max_coherent")
    runs: list[ScenarioConfig] = []
    if name == "fig2":
        for state in states:
            runs.append(
                ScenarioConfig(
                    stem=f"fig2_{state}",
                    initial_state=state,
                    physics=PhysicsParams(),
                    protocol=ContinuousDrive(30.0),
                    **base,
                )
            )
        for state in states:
            runs.append(
                ScenarioConfig(
                    stem=f"fig2_{state}_undriven",
                    initial_state=state,
                    physics=PhysicsParams(),
                    protocol=NoDrive(),
                    **base,
                )
            )
    elif name == "fig3":
        for state in states:
            for delta in _SWEEP_DELTAS:
                runs.append(
                    ScenarioConfig(
                        stem=f"fig3_{state}_{_delta_tag(delta)}",
                        initial_state=state,
                        physics=PhysicsParams(delta=delta),
                        protocol=ContinuousDrive(30.0),
                        **base,
                    )
                )
    elif name == "fig4":
        for state in states:
            runs.append(
                ScenarioConfig(
                    stem=f"fig4_{state}",
                    initial_state=state,
                    physics=PhysicsParams(),
                    protocol=PiXPulseTrain(tau=0.3, n_pulses=10),
                    **base,
                )
            )
    else:  # fig5
        for state in states:
            for delta in _SWEEP_DELTAS:
                runs.append(
                    ScenarioConfig(
                        stem=f"fig5_{state}_{_delta_tag(delta)}",
                        initial_state=state,
                        physics=PhysicsParams(delta=delta),
                        protocol=PiXPulseTrain(tau=0.3, n_pulses=10),
                        **base,
                    )
                )
    return runs
