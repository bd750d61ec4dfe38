"""Acceptance suite: one test per release criterion, tolerances pinned.

Run with ``pytest -s tests/test_acceptance.py`` to see one PASS line per
criterion; a pytest failure on a test is the corresponding FAIL line.
"""

import time

import numpy as np
import pytest

from ergokit import (
    BatteryHamiltonian,
    ContinuousDrive,
    NLevelState,
    NoDrive,
    PhysicsParams,
    PiXPulseTrain,
    QubitState,
    apply_pi_x,
    bloch_from_state,
    bloch_rhs,
    ergotropy_breakdown,
    excited_state,
    ground_state,
    hermitian_eigensystem,
    max_coherent_state,
    passive_energy_oracle,
    passive_state_energy,
    qubit_ergotropy_closed_form,
    simulate,
    state_from_bloch,
    steady_state,
)
from ergokit.cli import main
from tests.conftest import random_bloch, random_density_matrix, random_states

BATTERY = BatteryHamiltonian.qubit(1.0)
PHYSICS = PhysicsParams()  # gamma=2, delta=0, omega0=1


def report(name, detail=""):
    suffix = f" ({detail})" if detail else ""
    print(f"\nACCEPTANCE {name}: PASS{suffix}")


def test_undriven_decay_matches_exponential():
    """rho_ee(t) = rho_ee(0) exp(-gamma t) to 1e-8 over [0, 5], under 1 s."""
    worst = 0.0
    tic = time.perf_counter()
    records = [
        simulate(s0, NoDrive(), PHYSICS, t_end=5.0, dt=1e-4, sample_every=10)
        for s0 in (excited_state(), max_coherent_state())
    ]
    elapsed = time.perf_counter() - tic
    for s0, rec in zip((excited_state(), max_coherent_state()), records):
        expected = s0.rho_ee * np.exp(-2.0 * rec.times)
        worst = max(worst, float(np.max(np.abs(rec.excited_population - expected))))
    assert worst < 1e-8
    assert elapsed < 1.0
    report("undriven decay", f"max err {worst:.2e}, {elapsed:.2f} s")


def test_generic_breakdown_equals_closed_form():
    """Eigen-decomposition route == Bloch closed form, 10,000 states, 1e-10."""
    rng = np.random.default_rng(1234)
    blochs = random_bloch(rng, 10_000)
    worst = 0.0
    tic = time.perf_counter()
    for b in blochs:
        gen = ergotropy_breakdown(state_from_bloch(b), BATTERY)
        ref = qubit_ergotropy_closed_form(b, 1.0)
        worst = max(
            worst,
            abs(gen.total - ref.total),
            abs(gen.incoherent - ref.incoherent),
            abs(gen.coherent - ref.coherent),
        )
    elapsed = time.perf_counter() - tic
    assert worst < 1e-10
    assert elapsed < 1.0
    report("closed-form equivalence", f"max err {worst:.2e}, {elapsed:.2f} s over 10k states")


def test_passive_energy_equals_permutation_minimum():
    """Sorted pairing equals the brute-force minimum, 1000 spectra, 1e-12."""
    rng = np.random.default_rng(77)
    worst = 0.0
    for _ in range(1000):
        dim = int(rng.integers(2, 6))
        levels = np.cumsum(rng.uniform(0.1, 1.0, size=dim))
        h = BatteryHamiltonian(tuple(levels))
        spec = hermitian_eigensystem(NLevelState(random_density_matrix(rng, dim)))
        worst = max(worst, abs(passive_state_energy(spec, h) - passive_energy_oracle(spec, h)))
    assert worst < 1e-12
    report("passive-state oracle", f"max gap {worst:.2e} over 1000 spectra")


def test_canonical_point_values():
    """(W, W_IC, W_C): excited (1,1,0); max coherent (.5,0,.5); mixed, ground (0,0,0)."""
    cases = {
        "excited": (excited_state(), (1.0, 1.0, 0.0)),
        "max_coherent": (max_coherent_state(), (0.5, 0.0, 0.5)),
        "maximally_mixed": (QubitState(0.5, 0.0), (0.0, 0.0, 0.0)),
        "ground": (ground_state(), (0.0, 0.0, 0.0)),
    }
    for name, (state, expected) in cases.items():
        b = ergotropy_breakdown(state, BATTERY)
        assert (b.total, b.incoherent, b.coherent) == pytest.approx(expected, abs=1e-12), name
    report("canonical point values")


def test_steady_state_value_and_long_time_limit():
    """rho_ee^ss = 225/451; t_end=20 integration within 1e-6; rhs norm < 1e-12."""
    drive = ContinuousDrive(30.0)
    fixed = steady_state(drive, PHYSICS)
    assert fixed.rho_ee == pytest.approx(225.0 / 451.0, abs=1e-14)
    d_ee, d_ge = bloch_rhs(fixed, 30.0, PHYSICS)
    rhs_norm = np.hypot(d_ee, abs(d_ge))
    assert rhs_norm < 1e-12
    rec = simulate(excited_state(), drive, PHYSICS, t_end=20.0, dt=1e-4, sample_every=10**9)
    final = rec.samples[-1].state
    dist = np.hypot(final.rho_ee - fixed.rho_ee, abs(final.rho_ge - fixed.rho_ge))
    assert dist < 1e-6
    report("steady state", f"rhs norm {rhs_norm:.1e}, t=20 distance {dist:.1e}")


def test_steady_state_work_increases_with_detuning():
    """W^ss strictly increasing over delta in {0, 3, 5, 8} at omega = 30."""
    works = []
    for delta in (0.0, 3.0, 5.0, 8.0):
        fixed = steady_state(ContinuousDrive(30.0), PhysicsParams(delta=delta))
        works.append(ergotropy_breakdown(fixed, BATTERY).total)
    assert all(b > a for a, b in zip(works, works[1:]))
    report("detuning ordering", " < ".join(f"{w:.5f}" for w in works))


def test_pulsed_drive_is_detuning_invariant():
    """max_t |W_delta(t) - W_0(t)| < 1e-8 for delta in {3, 5, 8}, both states."""
    protocol = PiXPulseTrain(tau=0.3, n_pulses=10)
    worst = 0.0
    for s0 in (excited_state(), max_coherent_state()):
        base = simulate(s0, protocol, PhysicsParams(delta=0.0), t_end=5.0, dt=1e-4, sample_every=10)
        for delta in (3.0, 5.0, 8.0):
            other = simulate(
                s0, protocol, PhysicsParams(delta=delta), t_end=5.0, dt=1e-4, sample_every=10
            )
            assert np.array_equal(other.times, base.times)
            worst = max(worst, float(np.max(np.abs(other.total_ergotropy - base.total_ergotropy))))
    assert worst < 1e-8
    report("pulsed detuning invariance", f"max |W_d - W_0| = {worst:.2e}")


def test_pulse_mechanics():
    """First post-pulse population = 1 - exp(-0.6); pi_x is an exact involution."""
    rec = simulate(
        excited_state(), PiXPulseTrain(tau=0.3, n_pulses=10), PHYSICS, t_end=5.0, dt=1e-4
    )
    first_post = next(s for s in rec.samples if s.tag == "post_pulse")
    assert first_post.t == pytest.approx(0.3, abs=1e-12)
    assert abs(first_post.state.rho_ee - (1.0 - np.exp(-0.6))) < 1e-8
    rng = np.random.default_rng(5)
    for s in random_states(rng, 200):
        twice = apply_pi_x(apply_pi_x(s))
        assert twice.rho_ee == s.rho_ee and twice.rho_gg == s.rho_gg
        assert twice.rho_ge == s.rho_ge
    report("pulse mechanics", f"post-pulse rho_ee = {first_post.state.rho_ee:.6f}")


def _dominant_period(times, values):
    """Period of the strongest spectral line after removing the slow trend."""
    dt = float(times[1] - times[0])
    window = int(round(0.5 / dt))
    trend = np.convolve(values, np.ones(window) / window, mode="same")
    resid = (values - trend) * np.hanning(len(values))
    amps = np.abs(np.fft.rfft(resid))
    freqs = np.fft.rfftfreq(len(resid), dt)
    return 1.0 / freqs[np.argmax(amps)]


def test_resonant_drive_work_oscillation_shape():
    """W(t) oscillates at the Rabi period (within 5%); W_IC dies and revives."""
    rec = simulate(
        excited_state(), ContinuousDrive(30.0), PHYSICS, t_end=5.0, dt=1e-4, sample_every=10
    )
    period = _dominant_period(rec.times, rec.total_ergotropy)
    expected = 2.0 * np.pi / 30.0
    assert abs(period - expected) / expected < 0.05
    w_ic = rec.incoherent_ergotropy
    zero_idx = np.flatnonzero(w_ic == 0.0)
    assert zero_idx.size > 0
    j = zero_idx[0]
    assert np.any(w_ic[:j] > 0.0) and np.any(w_ic[j + 1 :] > 0.0)
    report(
        "resonant work oscillation",
        f"period {period:.4f} vs {expected:.4f}; W_IC zero interval with revival",
    )


def test_fourth_order_convergence():
    """Halving dt from 1e-4 to 5e-5 moves final rho_ee by < 1e-11."""
    worst = 0.0
    for protocol in (NoDrive(), ContinuousDrive(30.0)):
        finals = []
        for dt in (1e-4, 5e-5):
            rec = simulate(excited_state(), protocol, PHYSICS, t_end=5.0, dt=dt, sample_every=10**9)
            finals.append(rec.samples[-1].state.rho_ee)
        worst = max(worst, abs(finals[0] - finals[1]))
    assert worst < 1e-11
    report("grid convergence", f"final rho_ee shift {worst:.2e}")


def test_preset_outputs_are_deterministic(tmp_path, capsys):
    """Two fig3 runs produce byte-identical files."""
    assert main(["run", "fig3", "--out-dir", str(tmp_path / "a")]) == 0
    assert main(["run", "fig3", "--out-dir", str(tmp_path / "b")]) == 0
    capsys.readouterr()  # drop the per-run summary lines
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert len(names) == 8
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    report("deterministic output", f"{len(names)} files byte-identical")
