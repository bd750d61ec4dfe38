"""Read ergokit trajectory CSV files into per-detuning series.

The canonical column set is checked up front: a file missing (or adding)
columns is rejected with the offending names, and a file with no data rows
is rejected outright.  The plotting layer never recomputes any physics; it
draws exactly what the columns contain.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

CANONICAL_COLUMNS = (
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


class SchemaError(ValueError):
    """CSV header does not match the canonical trajectory schema."""


class EmptyInput(ValueError):
    """CSV contains a header but no samples."""


@dataclass(frozen=True)
class Series:
    """All samples of one trajectory (a single detuning value)."""

    path: Path
    delta: float
    t: np.ndarray
    rho_ee: np.ndarray
    total: np.ndarray
    incoherent: np.ndarray
    coherent: np.ndarray
    tags: tuple[str, ...]

    @property
    def pulse_times(self) -> tuple[float, ...]:
        return tuple(self.t[i] for i, tag in enumerate(self.tags) if tag == "pre_pulse")


def read_series(path: str | Path) -> list[Series]:
    """Parse one CSV into Series, grouped by the delta column (file order)."""
    path = Path(path)
    with open(path, newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyInput(f"{path}: no header row") from None
        if tuple(header) != CANONICAL_COLUMNS:
            missing = [c for c in CANONICAL_COLUMNS if c not in header]
            extra = [c for c in header if c not in CANONICAL_COLUMNS]
            problems = []
            if missing:
                problems.append(f"missing column(s) {missing}")
            if extra:
                problems.append(f"unexpected column(s) {extra}")
            if not problems:
                problems.append("columns out of canonical order")
            raise SchemaError(f"{path}: {'; '.join(problems)}")
        rows = list(reader)
    if not rows:
        raise EmptyInput(f"{path}: no samples")

    col = {name: i for i, name in enumerate(CANONICAL_COLUMNS)}
    groups: dict[float, list[list[str]]] = {}
    for row in rows:
        groups.setdefault(float(row[col["delta"]]), []).append(row)
    series = []
    for delta, block in groups.items():
        series.append(
            Series(
                path=path,
                delta=delta,
                t=np.array([float(r[col["t"]]) for r in block]),
                rho_ee=np.array([float(r[col["rho_ee"]]) for r in block]),
                total=np.array([float(r[col["W"]]) for r in block]),
                incoherent=np.array([float(r[col["W_IC"]]) for r in block]),
                coherent=np.array([float(r[col["W_C"]]) for r in block]),
                tags=tuple(r[col["pulse_tag"]] for r in block),
            )
        )
    return series
