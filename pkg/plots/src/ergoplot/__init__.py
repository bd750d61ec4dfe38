"""Multi-panel figures from ergokit trajectory CSV files."""

from .figures import (
    CURVE_GID,
    PULSE_MARKER_GID,
    FigureSpec,
    PanelSpec,
    preset_figure,
    render,
)
from .reading import CANONICAL_COLUMNS, EmptyInput, SchemaError, Series, read_series

__version__ = "0.1.0"

__all__ = [
    "CANONICAL_COLUMNS",
    "CURVE_GID",
    "EmptyInput",
    "FigureSpec",
    "PULSE_MARKER_GID",
    "PanelSpec",
    "SchemaError",
    "Series",
    "preset_figure",
    "read_series",
    "render",
]
