"""Full interferometer sequence: split, imprint, recombine, read out."""
import dataclasses
import math

import numpy as np
import pytest

import ringsim as rs


def _linear_spec(trap, **kw):
    kw.setdefault("solver", "linear")
    kw.setdefault("imprint", rs.ImprintSpec(0.0))
    return rs.ProtocolSpec(trap=trap, **kw)


# --------------------------------------------------------------------------
# imprint settings

def test_imprint_profile_uniform_is_an_open_window():
    imp = rs.ImprintSpec(1.0, profile="uniform",
                         window=(0.5 * math.pi, 1.5 * math.pi))
    angles = np.array([0.0, 0.5 * math.pi, 0.6 * math.pi, math.pi,
                       1.5 * math.pi, 1.6 * math.pi])
    np.testing.assert_allclose(imp.profile_values(angles),
                               [0.0, 0.0, 1.0, 1.0, 0.0, 0.0])


def test_imprint_profile_cosine_peaks_at_window_center():
    imp = rs.ImprintSpec(1.0, window=(0.5 * math.pi, 1.5 * math.pi))
    angles = np.array([math.pi, math.pi + 0.25 * math.pi, 0.0])
    vals = imp.profile_values(angles)
    assert vals[0] == pytest.approx(1.0, abs=1e-14)
    assert vals[1] == pytest.approx(0.5, abs=1e-14)
    assert vals[2] == 0.0


def test_imprint_validation():
    with pytest.raises(rs.InvalidParameterError):
        rs.ImprintSpec(1.0, profile="boxcar")
    with pytest.raises(rs.InvalidParameterError):
        rs.ImprintSpec(1.0, window=(0.0, 2.0 * math.pi))
    with pytest.raises(rs.InvalidParameterError):
        rs.ImprintSpec(1.0, duration=-1e-6)
    with pytest.raises(rs.InvalidParameterError):
        rs.ImprintSpec(math.nan)
    with pytest.raises(rs.InvalidParameterError):
        rs.ImprintSpec(1.0, application_time=-1e-3)


def test_phase_imprint_leaves_density_untouched(trap):
    grid = rs.to_grid(rs.gaussian_packet(0.0, 0.2, 60), 256)
    imp = rs.ImprintSpec(0.9)
    phased = grid.values * np.exp(1j * 0.9 * imp.profile_values(grid.angles))
    np.testing.assert_allclose(np.abs(phased) ** 2,
                               np.abs(grid.values) ** 2, rtol=0, atol=1e-15)


# --------------------------------------------------------------------------
# protocol settings

def test_protocol_validation(trap):
    with pytest.raises(rs.ConfigError):
        _linear_spec(trap,
                     interaction=rs.InteractionSpec(1e-10, 100.0))
    with pytest.raises(rs.ConfigError):
        _linear_spec(trap, imprint=rs.ImprintSpec(1.0, duration=1e-5))
    with pytest.raises(rs.InvalidParameterError):
        _linear_spec(trap, solver="exact")
    with pytest.raises(rs.InvalidParameterError):
        _linear_spec(trap, cutoff=128, grid_n=128)
    with pytest.raises(rs.InvalidParameterError):
        _linear_spec(trap, grid_n=100)
    with pytest.raises(rs.InvalidParameterError):
        _linear_spec(trap, dt_factor=0.0)
    with pytest.raises(rs.InvalidParameterError):
        _linear_spec(trap, search_window=(1.02, 0.98))
    with pytest.raises(rs.InvalidParameterError):
        _linear_spec(trap, packet_width=1.5)
    with pytest.raises(rs.InvalidParameterError):
        _linear_spec(trap, readout_weight="boxcar")
    with pytest.raises(rs.InvalidParameterError):
        _linear_spec(trap, n_records=-1)


def test_default_packet_width_matches_transverse_ground_state(
        trap, default_packet_width):
    spec = _linear_spec(trap)
    assert spec.effective_packet_width == pytest.approx(default_packet_width,
                                                        rel=1e-12)
    wide = _linear_spec(trap, packet_width=0.3)
    assert wide.effective_packet_width == 0.3


def test_dispersion_model_reflects_toggles(trap):
    spec = _linear_spec(trap, include_centrifugal=True)
    model = spec.dispersion_model()
    assert model.includes_centrifugal and not model.includes_tilt


# --------------------------------------------------------------------------
# revival search

def test_search_finds_the_ideal_revival(trap, revival_s):
    spec = _linear_spec(trap)
    found = rs.find_revival_time(spec)
    assert abs(found - revival_s) < 2e-6 * revival_s


def test_search_reports_a_dead_window(trap):
    spec = _linear_spec(trap)
    with pytest.raises(rs.RevivalNotFoundError):
        rs.find_revival_time(spec, window=(2e-4, 2e-3))


def test_search_input_guards(trap):
    spec = _linear_spec(trap)
    with pytest.raises(rs.InvalidParameterError):
        rs.find_revival_time(spec, resolution=-1.0)
    with pytest.raises(rs.InvalidParameterError):
        rs.find_revival_time(spec, window=(0.2, 0.1))


def test_centrifugal_correction_retimes_the_revival(trap, revival_s):
    spec = _linear_spec(trap, include_centrifugal=True,
                        search_resolution_factor=1e-9)
    found = rs.find_revival_time(spec)
    assert found == pytest.approx(0.1350770439, rel=1e-7)
    shift = found / revival_s - 1.0
    assert shift == pytest.approx(6.61745e-3, rel=1e-4)


# --------------------------------------------------------------------------
# running the sequence

def test_plain_revival_run(trap, revival_s):
    result = rs.run_protocol(_linear_spec(trap))
    # the default search resolution leaves a ~1e-9 timing-limited defect
    assert result.revival_fidelity >= 1.0 - 1e-7
    assert result.imbalance == pytest.approx(-1.0, abs=1e-9)
    assert result.centroid_angle == pytest.approx(math.pi, abs=1e-8)
    assert abs(result.revival_time_s - revival_s) < 2e-6 * revival_s
    assert result.total_duration_s == result.revival_time_s


def test_explicit_revival_time_skips_the_search(trap, revival_s):
    spec = _linear_spec(trap, revival_time_s=revival_s)
    result = rs.run_protocol(spec)
    assert result.revival_time_s == revival_s
    assert result.revival_fidelity >= 1.0 - 1e-12


def test_uniform_imprint_reproduces_the_cosine_law(trap):
    for phase in (0.0, 0.7, 0.5 * math.pi, 2.3):
        spec = _linear_spec(
            trap, imprint=rs.ImprintSpec(phase, profile="uniform"),
            readout_weight="uniform")
        result = rs.run_protocol(spec)
        assert result.imbalance == pytest.approx(-math.cos(phase),
                                                 abs=1e-12)


def test_half_window_imprint_regression_values(trap):
    # pinned output of the default masked-cosine imprint at phase pi/3
    result = rs.run_protocol(_linear_spec(trap,
                                          imprint=rs.ImprintSpec(math.pi / 3)))
    assert result.revival_fidelity == pytest.approx(0.7516398, rel=2e-5)
    assert result.imbalance == pytest.approx(-0.50327056, abs=1e-7)


def test_imprint_window_follows_an_off_center_packet(trap):
    center = 1.0
    spec = rs.ProtocolSpec(
        trap=trap, solver="linear", packet_center=center,
        imprint=rs.ImprintSpec(0.7, profile="uniform",
                               window=(center + 0.5 * math.pi,
                                       center + 1.5 * math.pi)),
        readout_weight="uniform")
    result = rs.run_protocol(spec)
    assert result.imbalance == pytest.approx(-math.cos(0.7), abs=1e-12)
    assert result.centroid_angle == pytest.approx(math.pi + center, abs=1e-8)


def test_gauge_flux_rotates_the_readout(trap):
    theta = 0.3
    spec = _linear_spec(trap, flux=rs.FluxSpec(action=theta * rs.HBAR),
                        search_resolution_factor=1e-10)
    result = rs.run_protocol(spec)
    assert result.centroid_angle == pytest.approx(math.pi + theta, abs=1e-8)
    plain = rs.run_protocol(_linear_spec(trap,
                                         search_resolution_factor=1e-10))
    assert abs(result.revival_fidelity - plain.revival_fidelity) < 1e-10


def test_records_and_snapshots(trap):
    spec = _linear_spec(trap, imprint=rs.ImprintSpec(math.pi / 3),
                        n_records=7, n_snapshots=3)
    result = rs.run_protocol(spec)
    assert result.records.shape == (7, 4)
    times = result.records[:, 0]
    assert times[0] == 0.0
    assert times[-1] == pytest.approx(result.total_duration_s, rel=1e-12)
    assert np.all(np.diff(times) > 0)
    assert result.records[0, 1] < 1e-10       # nothing at the far side yet
    assert result.records[-1, 1] == pytest.approx(result.revival_fidelity,
                                                  abs=1e-9)
    assert len(result.snapshots) == 3
    assert len(result.snapshot_times) == 3
    for profile in result.snapshots:
        assert profile.total == pytest.approx(1.0, abs=1e-9)


def test_timing_offset_guard(trap):
    spec = _linear_spec(trap, imprint=rs.ImprintSpec(1.0),
                        timing_offset=-0.08)
    with pytest.raises(rs.InvalidParameterError):
        rs.run_protocol(spec)


def test_timing_sensitivity_degrades_monotonically(trap):
    spec = _linear_spec(trap, imprint=rs.ImprintSpec(math.pi / 3))
    offsets = (0.0, 50e-6, 150e-6, 500e-6)
    table = rs.timing_sensitivity(spec, offsets)
    assert table.shape == (4, 3)
    np.testing.assert_allclose(table[:, 0], offsets, rtol=1e-12)
    fids = table[:, 1]
    assert np.all(np.diff(fids) < 0)
    baseline = rs.run_protocol(spec)
    assert fids[0] == pytest.approx(baseline.revival_fidelity, abs=1e-12)
    assert fids[-1] < 0.45


def test_sweep_phase_shape_order_and_threads(trap):
    spec = _linear_spec(trap, imprint=rs.ImprintSpec(0.0, profile="uniform"),
                        readout_weight="uniform")
    phases = np.array([2.0, 0.0, 1.0, 5.5])
    table = rs.sweep_phase(spec, phases)
    assert table.shape == (4, 2)
    np.testing.assert_array_equal(table[:, 0], phases)   # input order kept
    np.testing.assert_allclose(table[:, 1], -np.cos(phases), atol=1e-12)
    threaded = rs.sweep_phase(spec, phases, threads=3)
    np.testing.assert_array_equal(table, threaded)


def test_sweep_phase_input_guards(trap):
    spec = _linear_spec(trap)
    with pytest.raises(rs.InvalidParameterError):
        rs.sweep_phase(spec, [])
    with pytest.raises(rs.InvalidParameterError):
        rs.sweep_phase(spec, [0.0, math.nan])


# --------------------------------------------------------------------------
# split-step pipeline

def test_split_step_reproduces_the_exact_solver_when_linear(trap):
    spec_lin = _linear_spec(trap, imprint=rs.ImprintSpec(math.pi / 3),
                            cutoff=100, grid_n=256)
    spec_ss = dataclasses.replace(spec_lin, solver="splitstep",
                                  dt_factor=2e-5)
    r_lin = rs.run_protocol(spec_lin)
    r_ss = rs.run_protocol(spec_ss)
    assert abs(r_ss.revival_fidelity - r_lin.revival_fidelity) < 1e-6
    assert abs(r_ss.imbalance - r_lin.imbalance) < 1e-6


def test_finite_duration_pulse_approaches_the_instant_imprint(trap):
    spec_inst = rs.ProtocolSpec(trap=trap, solver="splitstep",
                                imprint=rs.ImprintSpec(math.pi / 3),
                                cutoff=100, grid_n=256, dt_factor=2e-5)
    spec_dur = dataclasses.replace(
        spec_inst, imprint=rs.ImprintSpec(math.pi / 3, duration=100e-6))
    r_inst = rs.run_protocol(spec_inst)
    r_dur = rs.run_protocol(spec_dur)
    # the fringe position barely moves; fidelity pays a small dephasing cost
    assert abs(r_dur.imbalance - r_inst.imbalance) < 5e-3
    assert abs(r_dur.revival_fidelity - r_inst.revival_fidelity) < 0.1
    assert r_dur.revival_fidelity < r_inst.revival_fidelity


def test_too_sharp_a_pulse_trips_the_step_guard(trap):
    spec = rs.ProtocolSpec(trap=trap, solver="splitstep",
                           imprint=rs.ImprintSpec(math.pi / 3,
                                                  duration=20e-6),
                           cutoff=100, grid_n=256, dt_factor=2e-5)
    with pytest.raises(rs.StepSizeError):
        rs.run_protocol(spec)
