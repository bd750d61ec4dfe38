"""Trajectory serialization: canonical CSV columns and the JSON envelope.

Floats are written with 17 significant digits so files round-trip float64
losslessly and identical runs produce byte-identical output.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable

from .dynamics import TrajectoryRecord

COLUMNS = (
    "t",
    "rho_ee",
    "re_rho_ge",
    "im_rho_ge",
    "energy",
    "W",
    "W_IC",
    "W_C",
    "pulse_tag",
    "delta",
)

_FLOAT_FIELDS = COLUMNS[:8] + ("delta",)


def output_rows(record: TrajectoryRecord, delta: float) -> list[dict[str, Any]]:
    """One dict per trajectory sample, keyed by the canonical column names."""
    rows = []
    for i, s in enumerate(record.samples):
        rows.append(
            {
                "t": s.t,
                "rho_ee": s.state.rho_ee,
                "re_rho_ge": s.state.rho_ge.real,
                "im_rho_ge": s.state.rho_ge.imag,
                "energy": float(record.energy[i]),
                "W": float(record.total_ergotropy[i]),
                "W_IC": float(record.incoherent_ergotropy[i]),
                "W_C": float(record.coherent_ergotropy[i]),
                "pulse_tag": s.tag,
                "delta": delta,
            }
        )
    return rows


def _format_cell(name: str, value: Any) -> str:
    return f"{value:.17g}" if name in _FLOAT_FIELDS else str(value)


def write_csv(path: Path, rows: Iterable[dict[str, Any]]) -> None:
    with open(path, "w", newline="") as f:
        f.write(",".join(COLUMNS) + "\n")
        for row in rows:
            f.write(",".join(_format_cell(c, row[c]) for c in COLUMNS) + "\n")


def write_json(path: Path, config_echo: dict[str, Any], rows: list[dict[str, Any]]) -> None:
    with open(path, "w") as f:
        json.dump({"config": config_echo, "samples": rows}, f, indent=1)
        f.write("\n")
