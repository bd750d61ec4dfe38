import numpy as np
import pytest

from ergoplot.reading import CANONICAL_COLUMNS


def write_trajectory_csv(path, deltas=(0.0,), n=20, pulses=()):
    """Small synthetic trajectory file in the canonical schema.

    pulses: times at which a pre/post pulse pair is inserted (two rows
    sharing the same t, with the population flipped in the post row).
    """
    lines = [",".join(CANONICAL_COLUMNS)]
    for delta in deltas:
        pending = sorted(set(pulses))
        for t in np.linspace(0.0, 2.0, n):
            while pending and pending[0] <= t:
                tp = pending.pop(0)
                lines.append(_row(tp, "pre_pulse", delta))
                lines.append(_row(tp, "post_pulse", delta))
            lines.append(_row(float(t), "regular", delta))
    path.write_text("\n".join(lines) + "\n")
    return path


def _row(t, tag, delta):
    rho_ee = float(np.exp(-t) * 0.9)
    if tag == "post_pulse":
        rho_ee = 1.0 - rho_ee
    w_ic = max(0.0, 2 * rho_ee - 1.0)
    w = w_ic + 0.1 * rho_ee
    vals = [t, rho_ee, 0.1 * rho_ee, 0.0, rho_ee, w, w_ic, w - w_ic]
    return ",".join([f"{v:.17g}" for v in vals] + [tag, f"{delta:.17g}"])


@pytest.fixture
def make_csv(tmp_path):
    def build(name="traj.csv", **kwargs):
        return write_trajectory_csv(tmp_path / name, **kwargs)

    return build
