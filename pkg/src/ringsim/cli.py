"""Command-line front end for batch interference studies.

Subcommands
-----------
revival      run the configured protocol once, write the time series (and
             optional density snapshots), print the optimized revival time
sweep-phase  imbalance fringe against imprint phase, one CSV per variant
spectrum     per-mode energy ladder with one column per correction term
sense        signal-to-phase conversion table for the configured inputs
timing       fringe degradation against the configured timing offsets

Common flags: `--config PATH` (omit for the built-in reference scenario),
`--out DIR` for the CSV outputs, `--threads N` to parallelize sweeps,
`--snapshots K` to store K density profiles from the revival run.  Outputs
are plain CSV with a `#`-prefixed header carrying the config hash, the
resolved configuration, and the dimensionless trap parameters, so a file is
reproducible from its own header.  Runs are deterministic: identical
configs give byte-identical files.  Exit codes: 0 success, 1 runtime or
physics failure, 2 configuration problems.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

import numpy as np

from .config import (ScenarioConfig, build_protocol, build_trap,
                     from_defaults, from_file)
from .constants import (BOHR_MAGNETON, BOHR_RADIUS, DEBYE,
                        ELEMENTARY_CHARGE, HBAR)
from .errors import ConfigError, RingError
from .propagator import InteractionSpec
from .protocol import ProtocolSpec, run_protocol, sweep_phase, \
    timing_sensitivity
from .sensing import (GaugeScenario, flux_action, gravitational_phase,
                      mean_density, min_detectable_field,
                      min_detectable_scattering_length, peak_density,
                      rotation_per_revival, scattering_phase)
from .spectrum import (centrifugal_shift, ellipticity_shift,
                       ideal_dispersion, revival_time, tilt_shift)

TWO_PI = 2.0 * np.pi


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return "%d" % value
    if isinstance(value, (float, np.floating)):
        return "%.17g" % value
    return str(value)


def _header_lines(config: ScenarioConfig, command: str, extra=()) -> list:
    trap = build_trap(config)
    units = trap.units
    g_int = 0.0
    if config.atom_number > 0:
        g_int = InteractionSpec(config.scattering_length_a0 * BOHR_RADIUS,
                                config.atom_number).coupling_internal(trap)
    lines = ["# ringsim %s" % command,
             "# config_sha256 = %s" % config.sha256()]
    for line in config.canonical_text().splitlines():
        lines.append("# config %s" % line)
    lines.append("# internal omega_perp = %s" % _fmt(trap.omega_internal))
    lines.append("# internal sigma_u_over_radius = %s"
                 % _fmt(trap.sigma_u / trap.radius))
    lines.append("# internal coupling = %s" % _fmt(g_int))
    lines.append("# time_unit_s = %s" % _fmt(units.time_unit))
    lines.append("# ideal_revival_s = %s" % _fmt(revival_time(trap)))
    for key, value in extra:
        lines.append("# %s = %s" % (key, _fmt(value)))
    return lines


def _write_csv(path, header_lines, columns, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for line in header_lines:
            handle.write(line + "\n")
        handle.write(",".join(columns) + "\n")
        for row in rows:
            handle.write(",".join(_fmt(v) for v in row) + "\n")


def _cmd_revival(config: ScenarioConfig, args, out_dir: str) -> int:
    spec = build_protocol(config, n_snapshots=args.snapshots)
    result = run_protocol(spec)
    ideal = revival_time(spec.trap)
    shift = 100.0 * (result.revival_time_s / ideal - 1.0)
    print("optimized revival time: %.17g s" % result.revival_time_s)
    print("ideal revival time:     %.17g s" % ideal)
    print("relative shift:         %+.6g %%" % shift)
    print("revival fidelity:       %.17g" % result.revival_fidelity)
    print("readout imbalance:      %.17g" % result.imbalance)
    header = _header_lines(config, "revival", [
        ("optimized_revival_s", result.revival_time_s),
        ("total_duration_s", result.total_duration_s),
        ("revival_fidelity", result.revival_fidelity),
        ("readout_imbalance", result.imbalance)])
    series = os.path.join(out_dir, "revival.csv")
    _write_csv(series, header,
               ["t_s", "fidelity", "imbalance", "centroid_rad"],
               result.records)
    written = [series]
    if args.snapshots > 0:
        rows = []
        for t, profile in zip(result.snapshot_times, result.snapshots):
            for alpha, dens in zip(profile.angles, profile.density):
                rows.append((t, alpha, dens))
        snap = os.path.join(out_dir, "revival_snapshots.csv")
        _write_csv(snap, header,
                   ["t_s", "alpha_rad", "density_per_rad"], rows)
        written.append(snap)
    print("wrote %s" % ", ".join(written))
    return 0


def _variant_spec(base: ProtocolSpec, name: str) -> ProtocolSpec:
    """Sweep variants: full config, coupling zeroed, or textbook-ideal."""
    if name == "interacting":
        return base
    linear = replace(
        base, solver="linear",
        interaction=replace(base.interaction, scattering_length=0.0))
    if name == "noninteracting":
        return linear
    return replace(linear, flux=None,
                   imprint=replace(linear.imprint, profile="uniform"),
                   include_tilt=False, include_centrifugal=False,
                   include_ellipticity=False)


def _cmd_sweep_phase(config: ScenarioConfig, args, out_dir: str) -> int:
    base = build_protocol(config)
    phases = np.linspace(0.0, TWO_PI, config.sweep_phi_count)
    written = []
    for name in config.sweep_variants:
        spec = _variant_spec(base, name)
        rows = sweep_phase(spec, phases, threads=args.threads)
        rows = rows[np.argsort(rows[:, 0], kind="stable")]
        header = _header_lines(config, "sweep-phase", [("variant", name)])
        path = os.path.join(out_dir, "sweep_phase_%s.csv" % name)
        _write_csv(path, header, ["phi_rad", "imbalance"], rows)
        written.append(path)
    print("wrote %s" % ", ".join(written))
    return 0


def _cmd_spectrum(config: ScenarioConfig, args, out_dir: str) -> int:
    trap = build_trap(config)
    units = trap.units
    cutoff = config.cutoff
    ells = np.arange(-cutoff, cutoff + 1)
    ideal_si = units.energy_from_internal(
        ideal_dispersion(trap, cutoff).energies)
    tilt_si = tilt_shift(trap, ells)
    # report the mode-dependent part only: the transverse zero point is a
    # constant offset that never moves a revival
    centrifugal_si = centrifugal_shift(trap, ells) - \
        0.5 * HBAR * trap.omega_perp
    ellipticity_si = ellipticity_shift(trap, ells)
    total_si = ideal_si + tilt_si + centrifugal_si + ellipticity_si
    columns = ["ell", "e_ideal_j", "de_tilt_j", "de_centrifugal_j",
               "de_ellipticity_j", "e_total_j", "e_ideal", "de_tilt",
               "de_centrifugal", "de_ellipticity", "e_total"]
    to_int = units.energy_to_internal
    rows = np.column_stack([
        ells, ideal_si, tilt_si, centrifugal_si, ellipticity_si, total_si,
        to_int(ideal_si), to_int(tilt_si), to_int(centrifugal_si),
        to_int(ellipticity_si), to_int(total_si)])
    header = _header_lines(config, "spectrum")
    path = os.path.join(out_dir, "spectrum.csv")
    _write_csv(path, header, columns,
               [[int(r[0])] + list(r[1:]) for r in rows])
    print("wrote %s (%d modes)" % (path, len(ells)))
    return 0


def _cmd_sense(config: ScenarioConfig, args, out_dir: str) -> int:
    trap = build_trap(config)
    charge = config.sense_charge_e * ELEMENTARY_CHARGE
    moment = config.sense_magnetic_moment_bohr * BOHR_MAGNETON
    dipole = config.sense_electric_dipole_debye * DEBYE
    field_b = config.sense_magnetic_field_t
    field_e = config.sense_electric_field_vm
    rate = config.sense_rotation_rate_rad_s
    scenarios = (
        GaugeScenario.charged(charge, field_b),
        GaugeScenario.aharonov_casher(moment, field_e),
        GaugeScenario.dipole_in_magnetic_field(dipole, field_b),
        GaugeScenario.rotating_frame(rate),
    )
    resolution = config.sense_resolution_rad
    if resolution is None:
        resolution = trap.sigma_u / trap.radius
    n_peak = peak_density(trap, config.atom_number)
    n_mean = mean_density(trap, config.atom_number)
    phi_g = gravitational_phase(config.sense_tilt_angle_rad, trap)
    phi_a = scattering_phase(config.scattering_length_a0 * BOHR_RADIUS,
                             n_peak, trap)
    b_min = min_detectable_field(resolution, charge, trap)
    da_min = min_detectable_scattering_length(
        config.sense_phase_resolution_rad, n_peak, trap)

    rows = []
    print("inputs: B = %g T, E0 = %g V/m, q = %g C, m0 = %g J/T, "
          "p = %g C m, omega = %g rad/s"
          % (field_b, field_e, charge, moment, dipole, rate))
    print("%-28s %16s %16s %16s" % ("scenario", "flux_action_J_s",
                                    "rotation_rad", "displacement_m"))
    for scenario in scenarios:
        action = flux_action(scenario, trap)
        rot = rotation_per_revival(scenario, trap)
        disp = rot * trap.radius
        print("%-28s %16.6g %16.6g %16.6g"
              % (scenario.kind, action, rot, disp))
        rows.append((scenario.kind + "_flux_action", action, "J*s"))
        rows.append((scenario.kind + "_rotation_per_revival", rot, "rad"))
        rows.append((scenario.kind + "_displacement", disp, "m"))
    print("gravitational phase (tilt %g rad): %.6g rad"
          % (config.sense_tilt_angle_rad, phi_g))
    print("scattering phase (a = %g a0, peak density): %.6g rad"
          % (config.scattering_length_a0, phi_a))
    print("min detectable field at %.6g rad resolution: %.6g T"
          % (resolution, b_min))
    print("min detectable scattering-length change at %.6g rad phase "
          "resolution: %.6g a0" % (config.sense_phase_resolution_rad,
                                   da_min / BOHR_RADIUS))
    rows += [
        ("angular_resolution", resolution, "rad"),
        ("min_detectable_field", b_min, "T"),
        ("peak_density", n_peak, "1/m^3"),
        ("mean_density", n_mean, "1/m^3"),
        ("gravitational_phase", phi_g, "rad"),
        ("scattering_phase", phi_a, "rad"),
        ("min_detectable_scattering_length", da_min, "m"),
        ("min_detectable_scattering_length_a0", da_min / BOHR_RADIUS, "a0"),
    ]
    header = _header_lines(config, "sense")
    path = os.path.join(out_dir, "sense.csv")
    _write_csv(path, header, ["name", "value", "unit"], rows)
    print("wrote %s" % path)
    return 0


def _cmd_timing(config: ScenarioConfig, args, out_dir: str) -> int:
    spec = build_protocol(config)
    offsets = [u * 1e-6 for u in config.timing_offsets_us]
    rows = timing_sensitivity(spec, offsets, threads=args.threads)
    header = _header_lines(config, "timing")
    path = os.path.join(out_dir, "timing.csv")
    _write_csv(path, header, ["offset_s", "fidelity", "imbalance"], rows)
    for row in rows:
        print("offset %10.4g s  fidelity %.6f  imbalance %+.6f"
              % (row[0], row[1], row[2]))
    print("wrote %s" % path)
    return 0


_COMMANDS = (
    ("revival", _cmd_revival,
     "run the interference protocol and write its time series"),
    ("sweep-phase", _cmd_sweep_phase,
     "scan the imprint phase and write the imbalance fringe per variant"),
    ("spectrum", _cmd_spectrum,
     "write the mode energies with each correction term"),
    ("sense", _cmd_sense,
     "print and write the signal-to-phase conversion table"),
    ("timing", _cmd_timing,
     "scan imprint timing offsets and write fidelity degradation"),
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringsim",
        description="ring-trap matter-wave interference simulations")
    subparsers = parser.add_subparsers(dest="command", required=True,
                                       metavar="SUBCOMMAND")
    for name, func, help_text in _COMMANDS:
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("--config", metavar="PATH", default=None,
                         help="key = value config file (default: built-in "
                              "reference scenario)")
        sub.add_argument("--out", metavar="DIR", default=".",
                         help="directory for CSV outputs (default: .)")
        sub.add_argument("--threads", metavar="N", type=int, default=1,
                         help="worker threads for sweeps (default: 1)")
        sub.add_argument("--snapshots", metavar="K", type=int, default=0,
                         help="density snapshots to store (revival only)")
        sub.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.threads < 1:
            raise ConfigError("--threads must be >= 1")
        if args.snapshots < 0:
            raise ConfigError("--snapshots must be >= 0")
        config = from_file(args.config) if args.config else from_defaults()
        os.makedirs(args.out, exist_ok=True)
        return args.func(config, args, args.out)
    except ConfigError as exc:
        print("ringsim: config error: %s" % exc, file=sys.stderr)
        return 2
    except RingError as exc:
        print("ringsim: error: %s" % exc, file=sys.stderr)
        return 1
    except OSError as exc:
        print("ringsim: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
