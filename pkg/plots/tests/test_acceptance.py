"""Acceptance: render each simulator preset's real output without schema
errors, with the documented panel, curve and pulse-marker counts.

Runs the actual `ergokit` CLI to produce the inputs, so this suite needs
the simulator package installed alongside.
"""

import subprocess
import sys

import pytest

from ergoplot import CURVE_GID, PULSE_MARKER_GID, preset_figure, render

PRESETS = ("fig2", "fig3", "fig4", "fig5")


def report(name, detail=""):
    suffix = f" ({detail})" if detail else ""
    print(f"\nACCEPTANCE {name}: PASS{suffix}")


@pytest.fixture(scope="session")
def preset_outputs(tmp_path_factory):
    out_dir = tmp_path_factory.mktemp("simulator-out")
    for preset in PRESETS:
        proc = subprocess.run(
            [sys.executable, "-m", "ergokit", "run", preset, "--out-dir", str(out_dir)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr
    return out_dir


def curves(ax):
    return [l for l in ax.lines if l.get_gid() == CURVE_GID]


def markers(ax):
    return [l for l in ax.lines if l.get_gid() == PULSE_MARKER_GID]


def visible_axes(fig):
    return [ax for ax in fig.axes if ax.get_visible()]


@pytest.mark.parametrize("preset", PRESETS)
def test_preset_renders_without_schema_errors(preset, preset_outputs, tmp_path):
    out = tmp_path / f"{preset}.png"
    fig = render(preset_figure(preset, preset_outputs, out))
    assert out.exists() and out.stat().st_size > 0
    axes = visible_axes(fig)
    assert len(axes) == 4, f"{preset}: expected 4 panels"

    if preset in ("fig2", "fig4"):
        decomp = [ax for ax in axes if len(curves(ax)) == 3]
        population = [ax for ax in axes if len(curves(ax)) == 1]
        assert len(decomp) == 2 and len(population) == 2
    else:
        assert all(len(curves(ax)) == 4 for ax in axes)

    if preset in ("fig4", "fig5"):
        assert all(len(markers(ax)) == 10 for ax in axes)
    else:
        assert all(len(markers(ax)) == 0 for ax in axes)

    if preset == "fig2":
        assert all(len(ax.child_axes) == 1 for ax in axes)  # undriven insets

    report(
        f"render {preset}",
        f"4 panels, curves {[len(curves(ax)) for ax in axes]}, "
        f"markers {[len(markers(ax)) for ax in axes]}",
    )
