"""Command-line front end.

Every subcommand reads one TOML configuration (``--config``) and emits a
deterministic report. Without ``--out`` the main payload goes to stdout;
with ``--out DIR`` the files are written there together with a
``manifest.json`` recording the command, a hash of the configuration,
the tool version and the file list.

Subcommands
-----------
analyze
    Coupling, exchange time, signal and noise budget, heating and both
    feasibility ratios at the configured operating point.
optimize
    Optimal disk radius at the configured distance and the curve
    ``gamma(r)``.
feasibility
    Both criteria over a log grid in (f, d) and their contour lines.
compare
    Coupling constants of the comparison systems at the configured
    distance.
simulate
    Classical or rotating-wave quantum simulation of the state exchange.
extract-heating
    ``A_tilde`` per measurement row and per-material means.

Configuration schema
--------------------
Sections ``[ion]``, ``[trap]``, ``[coupler]``, ``[heating]`` and
``[criteria]``; every key is optional and defaults to the standard
parameter set::

    [ion]
    mass = 1.5e-26            # kg
    charge = 1.6e-19          # C
    label = "9Be+"

    [trap]
    secular_frequency = 5e6   # Hz
    ion_distance = 50e-6      # m
    electrode_temperature = 10.0   # K
    motional_bandwidth = 500.0     # Hz
    # coupler_temperature = 10.0   # K, defaults to electrode_temperature

    [coupler]
    # disk1_radius, disk2_radius default to ion_distance/sqrt(2)
    wire_length = 0.01        # m
    wire_radius = 10e-6       # m
    disk_thickness = 1e-6     # m
    conductivity = 6.0e7      # S/m
    # explicit_resistance = 1e-5   # ohm, overrides conductivity

    [heating]
    A_tilde = 0.012
    alpha_tilde = 2.4
    delta = 4.0
    beta = 1.51
    T_p = 10.0
    # reference_mass, reference_charge: the ion A_tilde was quoted for

    [criteria]
    ratio_threshold = 10.0
    snr_threshold = 10.0

Exit codes: 0 success, 1 configuration or input error, 2 computation
error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
import warnings
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .capnet import wire_capacitance
from .coupling import (
    RectElectrodeGeometry,
    SuspendedWireGeometry,
    exchange_time,
    full_exchange_gamma,
    gamma_mass_spring_parallel_plate,
    gamma_mass_spring_pickup_disk,
    gamma_mass_spring_suspended_wire,
    gamma_pickup_disk,
    gamma_rect_electrodes,
    gamma_suspended_wire,
    gamma_symmetric,
    gamma_transmission_line,
    optimal_disk_radius,
    rect_side_matching_disk,
    rwa_parameter,
)
from .electrostatics import (
    ChargeAbovePlane,
    average_induced_current,
    induced_charge_linear,
    zero_point_amplitude,
)
from .exchange_sim import (
    CoupledOscillatorSystem,
    SimulationError,
    simulate_classical,
    simulate_quantum_rwa,
)
from .feasibility import (
    FeasibilityMap,
    GridSpec,
    feasibility_map,
    ratio_deco_ex,
    resonance_inductance,
    transmission_line_needed,
)
from .heating import (
    extract_batch,
    heating_report,
    load_reference_heating,
    read_measurements,
    reference_heating_means,
)
from .model import SCHEMA_VERSION, Config, ConfigError, CouplerGeometry, dump_config, load_config
from .noise import shot_noise_monte_carlo, signal_noise_budget, signal_voltage

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_COMPUTE = 2

#: Wire parameters assumed for the suspended-wire comparison rows.
SUSPENDED_WIRE_RADIUS = 15.5e-6


class InputError(Exception):
    """Bad user input other than the configuration document."""


# ---------------------------------------------------------------------------
# Formatting
# ---------------------------------------------------------------------------


def fmt(value: float) -> str:
    """Scientific notation with 6 significant digits, locale independent."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    v = float(value)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.5e}"


def _jsonable(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if not math.isfinite(v):
            return fmt(v)
        return float(fmt(v))
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    return value


def to_json(command: str, results: Dict[str, Any]) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "command": command, "results": _jsonable(results)}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def rows_to_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    return buf.getvalue()


def mapping_to_csv(results: Dict[str, Any]) -> str:
    rows = []
    for key, value in results.items():
        if isinstance(value, dict):
            for k2, v2 in value.items():
                rows.append((f"{key}.{k2}", v2 if isinstance(v2, str) else fmt(v2)))
        else:
            rows.append((key, value if isinstance(value, str) else fmt(value)))
    return rows_to_csv(["quantity", "value"], rows)


# ---------------------------------------------------------------------------
# Commands. Each returns {filename: text} plus the text for stdout.
# ---------------------------------------------------------------------------

Outputs = Tuple[Dict[str, str], str]


def _pickup_gamma(cfg: Config) -> float:
    ion, trap, geom = cfg.ion, cfg.trap, cfg.coupler
    d = trap.ion_distance
    return gamma_pickup_disk(ion.charge, d, d, geom.disk1_radius, geom.disk2_radius,
                             geom.capacitances())


def cmd_analyze(cfg: Config, fmt_: str, seed: int) -> Outputs:
    """Coupling, signal/noise budget, heating and both criteria."""
    ion, trap, geom, heat, crit = cfg
    f, d = trap.secular_frequency, trap.ion_distance
    caps = geom.capacitances()
    gamma = _pickup_gamma(cfg)
    b_o = zero_point_amplitude(ion, f)
    Q = induced_charge_linear(ChargeAbovePlane(ion.charge, d), geom.disk1_radius, b_o)
    I_av, I_max = average_induced_current(Q, f)
    R = geom.resistance(f)
    budget = signal_noise_budget(ion, geom, f, d, trap.coupler_temperature,
                                 trap.motional_bandwidth, R=R)
    max_transfer = CouplerGeometry.symmetric(math.sqrt(2) * d, geom.wire_length, geom.wire_radius,
                                             conductivity=geom.conductivity,
                                             explicit_resistance=geom.explicit_resistance)
    heating = heating_report(heat, ion, f, d, trap.electrode_temperature)
    t_ex = exchange_time(gamma, ion, f)
    rwa = rwa_parameter(gamma, ion, f)
    ratio = ratio_deco_ex(heat, geom, f, d, trap.electrode_temperature, r=geom.disk1_radius)
    results: Dict[str, Any] = {
        "gamma": gamma,
        "t_ex": t_ex,
        "rwa_parameter": rwa,
        "zeta": caps.zeta,
        "eta": caps.eta,
        "C_total": caps.total,
        "zero_point_amplitude": b_o,
        "Q_transf": Q,
        "I_av": I_av,
        "I_max": I_max,
        "wire_resistance": R,
        "v_sig": budget.v_sig,
        "v_sig_max_transfer": signal_voltage(ion, max_transfer, f, d),
        "v_jn": budget.v_jn,
        "i_sig": budget.i_sig,
        "i_shot_poisson": budget.i_shot_poisson,
        "i_shot_perfect_transmission": budget.i_shot_perfect_transmission,
        "i_shot_monte_carlo": shot_noise_monte_carlo(budget.i_sig, trap.motional_bandwidth, rng=seed)
        if budget.i_sig > 0 else 0.0,
        "heating_rate": heating.rate,
        "t_deco": heating.t_deco,
        "S_E": heating.S_E,
        "ratio_deco_ex": ratio,
        "snr_voltage": budget.snr_voltage,
        "resonance_inductance": resonance_inductance(f, caps.total),
        "flags": {
            "rwa_valid": rwa < 0.1,
            "wire_radius_in_model_range": geom.wire_radius_in_model_range,
            "snr_infinite": budget.snr_infinite,
            "transmission_line_needed": transmission_line_needed(geom.wire_length, f),
            "heating_f_in_range": heating.validity_flags["frequency"],
            "heating_d_in_range": heating.validity_flags["distance"],
            "heating_T_in_range": heating.validity_flags["temperature"],
            "ratio_criterion_met": bool(ratio >= crit.ratio_threshold),
            "snr_criterion_met": bool(budget.snr_voltage >= crit.snr_threshold),
        },
        "shot_noise_note": budget.shot_noise_note,
    }
    if fmt_ == "json":
        text = to_json("analyze", results)
        return {"analyze.json": text}, text
    text = mapping_to_csv(results)
    return {"analyze.csv": text}, text


def cmd_optimize(cfg: Config, fmt_: str, n_curve: int = 200) -> Outputs:
    """Optimal disk radius and ``gamma(r)`` samples at the configured distance."""
    ion, trap, geom = cfg.ion, cfg.trap, cfg.coupler
    d = trap.ion_distance
    C_b = wire_capacitance(geom.wire_length, geom.wire_radius)
    r_opt = optimal_disk_radius(d, C_b)
    g_max = gamma_symmetric(ion.charge, d, r_opt, C_b)
    radii = np.geomspace(0.05 * d, 10 * d, n_curve)
    curve = gamma_symmetric(ion.charge, d, radii, C_b)
    summary = {
        "d": d,
        "C_b": C_b,
        "r_opt": r_opt,
        "gamma_max": g_max,
        "t_ex_at_r_opt": exchange_time(float(g_max), ion, trap.secular_frequency),
        "gamma_at_d_over_sqrt2": gamma_symmetric(ion.charge, d, d / math.sqrt(2), C_b),
    }
    if fmt_ == "json":
        text = to_json("optimize", {**summary, "curve": {"r": radii, "gamma": curve}})
        return {"optimize.json": text}, text
    text = mapping_to_csv(summary)
    return {"optimize.csv": text,
            "optimize_curve.csv": rows_to_csv(["r_m", "gamma_N_per_m"], list(zip(radii, curve)))}, text


def cmd_feasibility(cfg: Config, fmt_: str, grid: GridSpec, radius_mode: str) -> Outputs:
    """Feasibility map and the two contour lines."""
    fmap = feasibility_map(cfg, grid, radius_mode=radius_mode)
    summary = {
        "any_feasible": fmap.any_feasible,
        "n_feasible": int(fmap.feasible.sum()),
        "n_points": int(fmap.feasible.size),
        "n_extrapolated": int(fmap.extrapolated.sum()),
        "radius_mode": radius_mode,
    }
    summary_text = to_json("feasibility", summary)
    if fmt_ == "json":
        return {"feasibility.json": to_json("feasibility", {**summary, "map": fmap.to_dict()})}, summary_text
    return {
        "feasibility_map.csv": fmap.to_csv(),
        "contour_ratio.csv": FeasibilityMap.contour_csv(fmap.contour_ratio),
        "contour_snr.csv": FeasibilityMap.contour_csv(fmap.contour_snr),
    }, summary_text


def compare_rows(cfg: Config) -> List[Tuple[str, float, str]]:
    """Comparison-system couplings at the configured distance.

    The status column says how the parameters were obtained:
    ``configured`` (the pickup-disk coupler itself), ``reconstructed``
    (unstated literature parameters replaced by a documented choice that
    reproduces the published value) or ``parameters not stated`` (an
    illustrative choice that is not expected to match).
    """
    ion, trap, geom = cfg.ion, cfg.trap, cfg.coupler
    q, d = ion.charge, trap.ion_distance
    caps = geom.capacitances()
    r = geom.disk1_radius
    H, h = 2 * d, d
    wire = SuspendedWireGeometry(H, (h, h), SUSPENDED_WIRE_RADIUS, geom.wire_length)
    return [
        ("pickup-disk", _pickup_gamma(cfg), "configured"),
        ("transmission-line (r = d)", float(gamma_transmission_line(d, d, caps.total, q)), "reconstructed"),
        ("mass-spring parallel-plate (d_win = 2d)",
         gamma_mass_spring_parallel_plate(q, 2 * d, caps.total), "reconstructed"),
        ("rectangular electrodes (area-matched)",
         gamma_rect_electrodes(RectElectrodeGeometry(rect_side_matching_disk(r), d, caps.total), q),
         "parameters not stated"),
        ("suspended wire (H = 2d, h = d)", gamma_suspended_wire(wire, q), "parameters not stated"),
        ("mass-spring pickup-disk", gamma_mass_spring_pickup_disk(q, d, r, caps.eta, caps.total),
         "parameters not stated"),
        ("mass-spring suspended wire (H = 2d, h = d)",
         gamma_mass_spring_suspended_wire(H, h, SUSPENDED_WIRE_RADIUS, caps.total, q),
         "parameters not stated"),
    ]


def cmd_compare(cfg: Config, fmt_: str) -> Outputs:
    rows = compare_rows(cfg)
    f = cfg.trap.secular_frequency
    table = [(name, g, exchange_time(g, cfg.ion, f), status) for name, g, status in rows]
    if fmt_ == "json":
        text = to_json("compare", {"d": cfg.trap.ion_distance, "systems": [
            {"system": n, "gamma": g, "t_ex": t, "status": s} for n, g, t, s in table]})
        return {"compare.json": text}, text
    text = rows_to_csv(["system", "gamma_N_per_m", "t_ex_s", "status"], table)
    return {"compare.csv": text}, text


def cmd_simulate(cfg: Config, fmt_: str, kind: str, n: int, rwa: Optional[float]) -> Outputs:
    """Exchange dynamics for the configured coupler.

    The classical run uses the configured coupling (scaled internally).
    The quantum run needs a coupling that is resolvable in double
    precision; it uses ``rwa`` (``gamma/(m omega^2)``) when given and the
    ``j = 1000`` full-exchange coupling for ``n`` otherwise.
    """
    ion, trap = cfg.ion, cfg.trap
    f = trap.secular_frequency
    if kind == "classical":
        gamma = _pickup_gamma(cfg)
        system = CoupledOscillatorSystem.identical(ion.mass, f, gamma)
        trace = simulate_classical(system)
    else:
        mw2 = ion.mass * (2 * math.pi * f) ** 2
        gamma = rwa * mw2 if rwa is not None else full_exchange_gamma(max(n, 1), 1000, ion, f)
        system = CoupledOscillatorSystem.identical(ion.mass, f, gamma)
        trace = simulate_quantum_rwa(system, n)
    summary = {
        "kind": kind,
        "gamma": gamma,
        "rwa_parameter": system.rwa_parameter,
        "t_ex_closed_form": system.exchange_time,
        "swap_time_measured": trace.swap_time,
        "swap_fidelity": trace.swap_fidelity,
        "metadata": {k: v for k, v in trace.metadata.items()},
    }
    summary_text = to_json("simulate", summary)
    if fmt_ == "json":
        return {"simulate.json": to_json("simulate", {**summary, "trace": {
            "t": trace.t, "e1": trace.e1, "e2": trace.e2}})}, summary_text
    return {"simulate_summary.json": summary_text, "trace.csv": trace.to_csv()}, summary_text


def cmd_extract_heating(cfg: Config, fmt_: str, path: Optional[str]) -> Outputs:
    """``A_tilde`` per row and per-material means.

    Accepts either a measurement CSV (``f_Hz, d_m, T_K,
    rate_quanta_per_s, material``) or a table of published ``A_tilde``
    values in the format of the bundled reference data.
    """
    heat = cfg.heating
    try:
        if path is None:
            rows = load_reference_heating()
        else:
            header = Path(path).read_text().splitlines()[:1]
            if header and "A_tilde" in header[0].split(","):
                rows = load_reference_heating(path)
            else:
                meas = read_measurements(path)
                values = extract_batch(meas, alpha_tilde=heat.alpha_tilde, delta=heat.delta,
                                       beta=heat.beta, T_p=heat.T_p)
                rows = [{"material": m.trap_material, "f_Hz": m.frequency, "d_m": m.distance,
                         "T_K": m.temperature, "rate": m.rate, "A_tilde": float(a)}
                        for m, a in zip(meas, values)]
    except (OSError, KeyError, ValueError) as exc:
        raise InputError(f"cannot read heating data: {exc}") from None
    means = reference_heating_means(rows)
    table = [(str(r["material"]), r.get("f_Hz", math.nan), r.get("d_m", math.nan),
              r.get("T_K", math.nan), r["A_tilde"]) for r in rows]
    if fmt_ == "json":
        text = to_json("extract-heating", {
            "rows": [{"material": m, "f_Hz": f, "d_m": d, "T_K": T, "A_tilde": a}
                     for m, f, d, T, a in table],
            "means": {m: {"mean": v[0], "std": v[1], "n": v[2]} for m, v in means.items()},
        })
        return {"extract_heating.json": text}, text
    text = rows_to_csv(["material", "f_Hz", "d_m", "T_K", "A_tilde"], table)
    mean_text = rows_to_csv(["material", "mean", "std", "n"],
                            [(m, v[0], v[1], str(v[2])) for m, v in means.items()])
    return {"extract_heating.csv": text, "extract_heating_means.csv": mean_text}, text + "\n" + mean_text


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ioncoupling",
        description="Design and feasibility analysis of wire-coupled trapped ions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="TOML configuration file")
    common.add_argument("--out", help="directory for output files (stdout if omitted)")
    common.add_argument("--format", choices=("csv", "json"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for the Monte-Carlo shot-noise oracle")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="full report at the configured point")
    sub.add_parser("optimize", parents=[common], help="optimal disk radius and gamma(r)")
    p = sub.add_parser("feasibility", parents=[common], help="feasibility map and contours")
    p.add_argument("--grid", default=None, help="f_min,f_max,d_min,d_max,nf,nd (Hz, m)")
    p.add_argument("--radius", choices=("d/sqrt2", "optimal"), default="d/sqrt2",
                   help="disk radius rule at each distance")
    sub.add_parser("compare", parents=[common], help="comparison-system coupling table")
    p = sub.add_parser("simulate", parents=[common], help="exchange dynamics")
    p.add_argument("--kind", choices=("classical", "quantum"), default="classical")
    p.add_argument("--n", type=int, default=1, help="Fock level of the superposition (quantum)")
    p.add_argument("--rwa-parameter", type=float, default=None,
                   help="gamma/(m omega^2) for the quantum run")
    p = sub.add_parser("extract-heating", parents=[common], help="A_tilde from heating data")
    p.add_argument("data", nargs="?", default=None,
                   help="measurement CSV (defaults to the bundled reference table)")
    return parser


def config_hash(cfg: Config) -> str:
    return hashlib.sha256(dump_config(cfg).encode()).hexdigest()


def write_outputs(out_dir: Path, command: str, cfg: Config, files: Dict[str, str]) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (out_dir / name).write_text(text)
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config_sha256": config_hash(cfg),
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "outputs": sorted(files),
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(Path(args.config)) if Path(args.config).exists() else None
        if cfg is None:
            raise InputError(f"config file not found: {args.config}")
        grid = None
        if args.command == "feasibility":
            try:
                grid = GridSpec.parse(args.grid) if args.grid else GridSpec()
            except ValueError as exc:
                raise InputError(str(exc)) from None
    except (ConfigError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            if args.command == "analyze":
                files, text = cmd_analyze(cfg, args.format, args.seed)
            elif args.command == "optimize":
                files, text = cmd_optimize(cfg, args.format)
            elif args.command == "feasibility":
                files, text = cmd_feasibility(cfg, args.format, grid, args.radius)
            elif args.command == "compare":
                files, text = cmd_compare(cfg, args.format)
            elif args.command == "simulate":
                files, text = cmd_simulate(cfg, args.format, args.kind, args.n, args.rwa_parameter)
            else:
                files, text = cmd_extract_heating(cfg, args.format, args.data)
    except (ConfigError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, ArithmeticError, SimulationError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    seen = set()
    for w in caught:
        msg = f"warning: {w.message}"
        if msg not in seen:
            seen.add(msg)
            print(msg, file=sys.stderr)
    if args.out:
        write_outputs(Path(args.out), args.command, cfg, files)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
