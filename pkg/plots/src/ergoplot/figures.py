"""Figure assembly: panel definitions, presets, and the renderer.

Time axes are in the normalized units of the simulator (emission rate
fixed at 2), work axes in units of the battery splitting.  Rendering is a
pure function of the input CSV contents; identical inputs give identical
curves and limits.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # batch tool: render to files, never to a display

import matplotlib.pyplot as plt

from .reading import Series, read_series

PANEL_KINDS = ("ergotropy_decomposition", "population", "ergotropy_vs_delta")

CURVE_GID = "curve"
PULSE_MARKER_GID = "pulse-marker"

_DECOMP_STYLE = (  # quantity, color, linestyle
    ("total", "tab:blue", "-", "W"),
    ("incoherent", "tab:orange", "--", "W_IC"),
    ("coherent", "tab:green", ":", "W_C"),
)


@dataclass(frozen=True)
class PanelSpec:
    kind: str
    csv_paths: tuple[Path, ...]
    inset_paths: tuple[Path, ...] = ()
    title: str = ""

    def __post_init__(self):
        if self.kind not in PANEL_KINDS:
            raise ValueError(f"panel kind must be one of {PANEL_KINDS}, got {self.kind!r}")
        object.__setattr__(self, "csv_paths", tuple(Path(p) for p in self.csv_paths))
        object.__setattr__(self, "inset_paths", tuple(Path(p) for p in self.inset_paths))


@dataclass(frozen=True)
class FigureSpec:
    panels: tuple[PanelSpec, ...]
    out_path: Path
    ncols: int = 2
    title: str = ""

    def __post_init__(self):
        object.__setattr__(self, "out_path", Path(self.out_path))

    def all_inputs(self) -> list[Path]:
        paths: list[Path] = []
        for panel in self.panels:
            paths.extend(panel.csv_paths)
            paths.extend(panel.inset_paths)
        return paths


def _plot_panel(ax, kind: str, series_list: list[Series], labeled: bool = True) -> None:
    for series in series_list:
        if kind == "ergotropy_decomposition":
            for quantity, color, style, label in _DECOMP_STYLE:
                ax.plot(
                    series.t,
                    getattr(series, quantity),
                    color=color,
                    linestyle=style,
                    label=label if labeled else None,
                    gid=CURVE_GID,
                )
        elif kind == "population":
            ax.plot(
                series.t,
                series.rho_ee,
                label=f"delta={series.delta:g}" if labeled and len(series_list) > 1 else None,
                gid=CURVE_GID,
            )
        else:  # ergotropy_vs_delta
            ax.plot(
                series.t,
                series.total,
                label=f"delta={series.delta:g}" if labeled else None,
                gid=CURVE_GID,
            )
    pulse_times = sorted({tp for s in series_list for tp in s.pulse_times})
    for tp in pulse_times:
        ax.axvline(tp, color="0.7", linewidth=0.6, zorder=0, gid=PULSE_MARKER_GID)


_YLABEL = {
    "ergotropy_decomposition": r"work / $\omega_0$",
    "population": r"$\rho_{ee}$",
    "ergotropy_vs_delta": r"$W / \omega_0$",
}


def render(spec: FigureSpec):
    """Draw every panel, write the image, return the matplotlib figure.

    Raises FileNotFoundError for absent inputs and the reading errors for
    schema problems; nothing is written in that case.
    """
    for path in spec.all_inputs():
        if not path.exists():
            raise FileNotFoundError(f"input CSV not found: {path}")
    loaded = {path: read_series(path) for path in spec.all_inputs()}

    n = len(spec.panels)
    ncols = min(spec.ncols, n)
    nrows = (n + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(5.0 * ncols, 3.2 * nrows), squeeze=False)
    flat_axes = axes.ravel()
    for ax in flat_axes[n:]:
        ax.set_visible(False)
    for ax, panel in zip(flat_axes, spec.panels):
        series_list = [s for p in panel.csv_paths for s in loaded[p]]
        _plot_panel(ax, panel.kind, series_list)
        ax.set_xlabel("t (emission rate = 2 units)")
        ax.set_ylabel(_YLABEL[panel.kind])
        if panel.title:
            ax.set_title(panel.title)
        if any(line.get_label() and not line.get_label().startswith("_") for line in ax.lines):
            ax.legend(loc="upper right", fontsize=8, frameon=False)
        if panel.inset_paths:
            inset = ax.inset_axes((0.58, 0.58, 0.38, 0.36))
            inset_series = [s for p in panel.inset_paths for s in loaded[p]]
            _plot_panel(inset, panel.kind, inset_series, labeled=False)
            inset.set_title("undriven", fontsize=7)
            inset.tick_params(labelsize=6)
    if spec.title:
        fig.suptitle(spec.title)
    fig.tight_layout()
    spec.out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.out_path)
    return fig


def _stems(in_dir: Path, pattern: str, deltas=(0, 3, 5, 8)) -> tuple[Path, ...]:
    return tuple(in_dir / pattern.format(delta=d) for d in deltas)


def preset_figure(name: str, in_dir: str | Path, out_path: str | Path) -> FigureSpec:
    """FigureSpec for the outputs of the matching simulator preset."""
    in_dir = Path(in_dir)
    if name == "fig2":
        panels = []
        for state, label in (("excited", "excited start"), ("max_coherent", "coherent start")):
            driven = (in_dir / f"fig2_{state}.csv",)
            inset = (in_dir / f"fig2_{state}_undriven.csv",)
            panels.append(
                PanelSpec("ergotropy_decomposition", driven, inset_paths=inset, title=label)
            )
            panels.append(PanelSpec("population", driven, inset_paths=inset, title=label))
        # column per initial state: (a, b) excited, (c, d) coherent
        order = (0, 2, 1, 3)
        return FigureSpec(tuple(panels[i] for i in order), Path(out_path))
    if name == "fig4":
        panels = []
        for state, label in (("excited", "excited start"), ("max_coherent", "coherent start")):
            paths = (in_dir / f"fig4_{state}.csv",)
            panels.append(PanelSpec("ergotropy_decomposition", paths, title=label))
            panels.append(PanelSpec("population", paths, title=label))
        order = (0, 2, 1, 3)
        return FigureSpec(tuple(panels[i] for i in order), Path(out_path))
    if name in ("fig3", "fig5"):
        panels = []
        for state, label in (("excited", "excited start"), ("max_coherent", "coherent start")):
            paths = _stems(in_dir, f"{name}_{state}_delta{{delta:g}}.csv")
            panels.append(PanelSpec("ergotropy_vs_delta", paths, title=label))
            panels.append(PanelSpec("population", paths, title=label))
        order = (0, 2, 1, 3)
        return FigureSpec(tuple(panels[i] for i in order), Path(out_path))
    raise ValueError(f"unknown preset {name!r}; choose from fig2, fig3, fig4, fig5")
