import math

import numpy as np
import pytest

from nlq.bloch import BlochVector, bloch_from_statevector, statevector_from_bloch, theta_of_s
from nlq.integrator import (
    Trajectory,
    monotonicity_violation_demo,
    propagate,
    propagate_wavefunction,
)
from nlq.models import (
    LinearModel,
    MorseSmaleModel,
    PitchforkModel,
    TorsionModel,
    morse_smale_height,
    pitchfork_height,
    torsion_choose_B,
    torsion_gate_time,
)


def _from_height(z0: float) -> np.ndarray:
    return np.array([math.sqrt(1.0 - z0 * z0), 0.0, z0])


def test_morse_smale_endpoint_matches_closed_form():
    g = 1.0
    traj = propagate(MorseSmaleModel(g=g), _from_height(math.cos(0.4)), 2.0)
    assert traj.final[2] == pytest.approx(morse_smale_height(math.cos(0.4), 2.0, g), abs=1e-8)


def test_pitchfork_separatrix_is_invariant():
    traj = propagate(PitchforkModel(g=1.0), np.array([1.0, 0.0, 0.0]), 5.0)
    assert abs(traj.final[2]) < 1e-10
    assert traj.stopped_early  # the equator is a line of fixed points


def test_torsion_gate_reaches_pole():
    g, n = 1.0, 4
    theta1 = theta_of_s(1, n)
    model = TorsionModel(g=g, B=torsion_choose_B(theta1, g))
    t_gate = torsion_gate_time(theta1, g).exact
    traj = propagate(model, _from_height(math.sin(theta1 / 2)), t_gate, step_control=1e-8)
    assert traj.final[2] > 0.999999


def test_closed_form_grid():
    # both closed forms across heights and durations
    g = 1.0
    for z0 in (-0.99, -0.5, -0.1, 0.0, 0.1, 0.5, 0.99):
        r0 = _from_height(z0)
        for gt in (0.1, 1.0, 5.0):
            ms = propagate(MorseSmaleModel(g=g), r0, gt).final[2]
            assert ms == pytest.approx(morse_smale_height(z0, gt, g), abs=1e-8)
            pf = propagate(PitchforkModel(g=g), r0, gt).final[2]
            assert pf == pytest.approx(pitchfork_height(z0, gt, g), abs=1e-8)


def test_fourth_order_convergence():
    g, z0, duration = 1.0, 0.5, 1.0
    exact = morse_smale_height(z0, duration, g)
    errs = []
    for nsteps in (50, 100, 200):
        traj = propagate(MorseSmaleModel(g=g), _from_height(z0), duration, dt=duration / nsteps)
        errs.append(abs(traj.final[2] - exact))
    assert 14.0 < errs[0] / errs[1] < 18.0
    assert 14.0 < errs[1] / errs[2] < 18.0


def test_renormalization_drift():
    g = 1.0
    theta1 = theta_of_s(1, 6)
    model = TorsionModel(g=g, B=torsion_choose_B(theta1, g))
    traj = propagate(model, _from_height(math.sin(theta1 / 2)), 5.0)
    assert traj.max_step_norm_error < 1e-12


def test_trajectory_invariants():
    traj = propagate(PitchforkModel(g=1.0), _from_height(0.3), 3.0)
    assert np.all(np.diff(traj.times) > 0)
    assert np.max(np.abs(np.linalg.norm(traj.points, axis=1) - 1.0)) < 1e-9
    assert len(traj.times) == len(traj.points)
    assert isinstance(traj.final_bloch, BlochVector)


def test_propagate_validation():
    with pytest.raises(ValueError):
        propagate(PitchforkModel(g=1.0), np.array([1.0, 1.0, 0.0]), 1.0)
    with pytest.raises(ValueError):
        propagate(PitchforkModel(g=1.0), np.array([1.0, 0.0, 0.0]), -1.0)
    still = propagate(PitchforkModel(g=1.0), np.array([1.0, 0.0, 0.0]), 0.0)
    assert still.times.shape == (1,)


def test_fixed_points_stop_early():
    # source of the Morse-Smale flow and either pitchfork pole are pinned
    traj = propagate(MorseSmaleModel(g=1.0), np.array([0.0, 0.0, 1.0]), 2.0)
    assert traj.stopped_early and traj.final[2] == 1.0
    traj = propagate(PitchforkModel(g=1.0), np.array([0.0, 0.0, -1.0]), 2.0)
    assert traj.stopped_early and traj.final[2] == -1.0


def test_python_path_matches_kernel():
    # a model without a compiled kernel goes through the generic stepper
    g = 0.8
    uniform = LinearModel(0.0, 0.0, 2 * g)
    r0 = _from_height(0.2)
    traj = propagate(uniform, r0, 1.0)
    angle = 2 * g * 1.0
    expected = np.array(
        [r0[0] * math.cos(angle), r0[0] * math.sin(angle), 0.2]
    )
    assert np.allclose(traj.final, expected, atol=1e-9)


def test_wavefunction_matches_bloch_path():
    g = 1.0
    theta1 = theta_of_s(1, 4)
    cases = [
        (TorsionModel(g=g, B=torsion_choose_B(theta1, g)), _from_height(math.sin(theta1 / 2)),
         torsion_gate_time(theta1, g).exact),
        (MorseSmaleModel(g=g), _from_height(math.cos(0.4)), 2.0),
        (PitchforkModel(g=g), _from_height(0.3), 2.0),
    ]
    for model, r0, duration in cases:
        psi0 = statevector_from_bloch(BlochVector.from_array(r0))
        _, states = propagate_wavefunction(model, psi0, duration)
        r_wave = bloch_from_statevector(states[-1]).to_array()
        r_bloch = propagate(model, r0, duration).final
        assert np.max(np.abs(r_wave - r_bloch)) < 1e-7


def test_wavefunction_validation():
    with pytest.raises(ValueError):
        propagate_wavefunction(PitchforkModel(g=1.0), [1.0, 1.0], 1.0)


def test_torsion_branch_signs():
    # the upper straddling state rises with y > 0 until the pole; its mirror
    # descends with y < 0; both transit in the same time
    g, n = 1.0, 5
    theta1 = theta_of_s(1, n)
    model = TorsionModel(g=g, B=torsion_choose_B(theta1, g))
    t_gate = torsion_gate_time(theta1, g).exact
    c, s = math.cos(theta1 / 2), math.sin(theta1 / 2)
    up = propagate(model, np.array([c, 0.0, s]), t_gate)
    down = propagate(model, np.array([c, 0.0, -s]), t_gate)
    peak = int(np.argmax(up.points[:, 2]))
    assert np.all(up.points[1:peak, 1] > 0)
    assert np.all(np.diff(up.points[:peak, 2]) > 0)
    assert np.allclose(down.points, up.points * np.array([1.0, -1.0, -1.0]), atol=0.0)


def test_monotonicity_demo():
    initial, final = monotonicity_violation_demo(4)
    theta1 = theta_of_s(1, 4)
    assert initial == pytest.approx(2 * math.sin(theta1 / 2), abs=1e-14)
    assert final >= 1.99
    initial10, final10 = monotonicity_violation_demo(10)
    assert initial10 == pytest.approx(2 * math.sin(theta_of_s(1, 10) / 2), abs=1e-14)
    assert initial10 < initial
    assert final10 >= 1.99


def test_demo_is_g_invariant():
    # doubling g halves the gate time but not the endpoints
    d1 = monotonicity_violation_demo(5, g=1.0)
    d2 = monotonicity_violation_demo(5, g=2.0)
    assert d1[0] == d2[0]
    assert d1[1] == pytest.approx(d2[1], abs=1e-8)
    assert (torsion_gate_time(theta_of_s(1, 5), 2.0).exact
            == pytest.approx(torsion_gate_time(theta_of_s(1, 5), 1.0).exact / 2, rel=1e-15))


def test_trajectory_csv():
    g = 1.0
    model = TorsionModel(g=g, B=0.3)
    traj = propagate(model, _from_height(0.5), 0.01)
    text = traj.to_csv(energy=model.energy)
    lines = text.strip().split("\n")
    assert lines[0] == "t,x,y,z,E"
    assert len(lines) == len(traj.times) + 1
    row = lines[1].split(",")
    assert len(row) == 5 and float(row[0]) == 0.0
    plain = traj.to_csv()
    assert plain.startswith("t,x,y,z\n")
