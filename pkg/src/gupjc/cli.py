"""Command-line front end.

Subcommands reproduce the headline quantities as CSV/JSON artifacts:

- ``rabi``: corrected Rabi frequency table and inversion time series
- ``dispersive``: exact dispersive state, photon-added decomposition,
  decomposition fidelity over time
- ``wigner-diff``: Wigner-difference map against the rotated coherent
  reference, with the measurement-precision summary
- ``zeta-maps``: rotating-wave validity ratio maps over (omega, detuning)
- ``verify``: the built-in consistency suite; exit code 0 iff all pass

Every run resolves its configuration (defaults <- preset <- config file <-
--set overrides), writes it back as ``run_config.json``, and records a
manifest.  Replaying a saved run_config.json reproduces every data artifact
byte for byte; the manifest is metadata (it carries wall time) and is not
part of that contract.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import platform
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
import scipy

from . import __version__
from .constants import C_LIGHT, GAMMA_SI_DIVISOR, HBAR, PLANCK_LENGTH, PLANCK_MASS
from .dispersive import (
    DispersiveConfig,
    commutator_check,
    decomposition_field_state,
    dyson_consistency_check,
    evolve_dispersive_exact,
    photon_added_decomposition,
)
from .dynamics import (
    rabi_shift,
    resonant_frame_hamiltonian,
    amplitude_angular_frequency,
    validate_against_numeric,
)
from .errors import GupJcError
from .fock import (
    build_annihilation,
    coherent_state,
    evolve_on_grid,
    fock_state,
    laguerre,
    photon_added_coherent_state,
)
from .gup import GupCoefficients, GupParams, InteractionConfig, derive_coefficients
from .rwa_validity import ZetaMapSpec, perturbation_cross_check, zeta_lq, zeta_map, zeta_rq
from .wigner import (
    GridSpec,
    grid_to_csv,
    grid_to_json,
    wigner_difference,
    wigner_of_state,
    wigner_precision_ratio,
)

PRESETS: dict[str, dict] = {
    # electroweak-scale GUP, coherent |alpha|=1, dispersive rate 1e5 rad/s
    "fig1": {
        "gamma": 1e3,
        "delta": 1.0,
        "epsilon": 1.0,
        "omega": 1e15,
        "mu": 1e5,
        "alpha_re": 1.0,
        "alpha_im": 0.0,
        "t": 1e3,
        "ncut": 40,
        "initial_atom": "g",
    },
    # linear-vs-quadratic channel map
    "fig2": {"n": 50, "gamma": 0.5, "delta": 1.0, "epsilon": 1.0},
    # counter-rotating-vs-quadratic channel map
    "fig3": {"n": 50, "gamma": 5e3, "delta": 1.0, "epsilon": 1.0},
}

DEFAULTS: dict[str, dict] = {
    "rabi": {
        "gamma": 1e3,
        "delta": 1.0,
        "epsilon": 1.0,
        "omega": 1e16,
        "omega0": None,
        "coupling": 1.0,
        "n": 1,
        "n_table_max": 10,
        "periods": 10.0,
        "points": 600,
        "ncut": None,
    },
    "dispersive": dict(PRESETS["fig1"], fidelity_points=20),
    "wigner-diff": dict(
        PRESETS["fig1"],
        grid_extent=4.0,
        grid_points=201,
        pad_levels=None,
    ),
    "zeta-maps": dict(
        PRESETS["fig2"],
        omega_min=1e9,
        omega_max=1e17,
        n_omega=33,
        delta_min=1e3,
        delta_max=1e5,
        n_delta=17,
    ),
    "verify": {"draws": 10000, "grid_points": 61},
}


# ---------------------------------------------------------------------------
# configuration plumbing
# ---------------------------------------------------------------------------

def _parse_set_value(raw: str):
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def resolve_config(command: str, args) -> dict:
    """defaults <- preset <- config file <- --set overrides."""
    params = dict(DEFAULTS[command])
    seed = 1234
    threads = 1
    file_cfg = {}
    if args.config:
        with open(args.config) as fh:
            file_cfg = json.load(fh)
        if file_cfg.get("command") not in (None, command):
            raise ValueError(
                f"config file is for command {file_cfg.get('command')!r}, not {command!r}"
            )
    preset = args.preset or file_cfg.get("preset")
    if preset:
        if preset not in PRESETS:
            raise ValueError(f"unknown preset {preset!r}; available: {sorted(PRESETS)}")
        for key, value in PRESETS[preset].items():
            if key in params:
                params[key] = value
    for key, value in file_cfg.get("params", {}).items():
        if key not in params:
            raise ValueError(f"unknown parameter {key!r} for command {command!r}")
        params[key] = value
    seed = file_cfg.get("seed", seed)
    threads = file_cfg.get("threads", threads)
    for item in args.set or []:
        key, _, raw = item.partition("=")
        if not _ or key not in params:
            raise ValueError(f"cannot override unknown parameter {key!r}")
        params[key] = _parse_set_value(raw)
    if args.seed is not None:
        seed = args.seed
    if args.threads is not None:
        threads = args.threads
    return {"command": command, "params": params, "seed": seed, "threads": threads}


def _fmt(value) -> str:
    """Shortest round-trip decimal form for floats."""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def write_json(path: Path, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def write_manifest(out_dir: Path, config: dict, outputs: list[Path], wall_time: float) -> Path:
    manifest = {
        "manifest_schema": 1,
        "command": config["command"],
        "config": config,
        "constants": {
            "hbar_J_s": HBAR,
            "c_m_per_s": C_LIGHT,
            "planck_mass_kg": PLANCK_MASS,
            "planck_length_m": PLANCK_LENGTH,
            "gamma_si_divisor": GAMMA_SI_DIVISOR,
        },
        "versions": {
            "gupjc": __version__,
            "python": platform.python_version(),
            "numpy": np.__version__,
            "scipy": scipy.__version__,
        },
        "outputs": {p.name: _sha256(p) for p in outputs},
        "wall_time_s": wall_time,
        "written_utc": datetime.now(timezone.utc).isoformat(),
    }
    path = out_dir / "manifest.json"
    write_json(path, manifest)
    return path


def _alpha(params: dict) -> complex:
    return complex(params["alpha_re"], params["alpha_im"])


def _dispersive_inputs(params: dict):
    p = GupParams.from_gamma(params["gamma"], params["delta"], params["epsilon"])
    c = derive_coefficients(p, params["omega"])
    d = DispersiveConfig(
        mu=params["mu"],
        phi=c.phi,
        alpha=_alpha(params),
        t=params["t"],
        ncut=int(params["ncut"]),
    )
    return p, c, d


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_rabi(params: dict, out_dir: Path, seed: int, threads: int) -> list[Path]:
    omega = params["omega"]
    omega0 = params["omega0"] if params["omega0"] is not None else omega
    cfg = InteractionConfig(omega=omega, omega0=omega0, coupling=params["coupling"])
    p = GupParams.from_gamma(params["gamma"], params["delta"], params["epsilon"])
    c = derive_coefficients(p, omega)

    table_rows = []
    for n in range(int(params["n_table_max"]) + 1):
        sol = rabi_shift(n, cfg, c)
        table_rows.append([n, sol.omega_std, sol.omega_qg, sol.delta_omega])
    table_path = out_dir / "rabi_table.csv"
    write_csv(table_path, ["n", "omega_std", "omega_qg", "delta_omega"], table_rows)

    n = int(params["n"])
    ncut = int(params["ncut"]) if params["ncut"] is not None else n + 2
    w_half = amplitude_angular_frequency(n, cfg, c)
    t_max = params["periods"] * 2.0 * math.pi / (2.0 * w_half)
    t_grid = np.linspace(0.0, t_max, int(params["points"]))
    entries, _ = resonant_frame_hamiltonian(cfg, c, ncut)
    dim = ncut + 1
    psi0 = np.zeros(2 * dim, dtype=complex)
    psi0[dim + n] = 1.0
    states = evolve_on_grid(entries, t_grid, psi0)
    w_numeric = np.sum(np.abs(states[:, dim:]) ** 2, axis=1) - np.sum(
        np.abs(states[:, :dim]) ** 2, axis=1
    )
    w_analytic = np.cos(2.0 * w_half * t_grid)
    series_path = out_dir / "inversion.csv"
    write_csv(
        series_path,
        ["t", "w_analytic", "w_numeric"],
        zip(t_grid.tolist(), w_analytic.tolist(), w_numeric.tolist()),
    )
    return [table_path, series_path]


def cmd_dispersive(params: dict, out_dir: Path, seed: int, threads: int) -> list[Path]:
    _, c, d = _dispersive_inputs(params)
    atom = params["initial_atom"]

    exact = evolve_dispersive_exact(d, atom)
    state_path = out_dir / "exact_state.csv"
    write_csv(
        state_path,
        ["n", "g_re", "g_im", "e_re", "e_im"],
        (
            [n, amp_g.real, amp_g.imag, amp_e.real, amp_e.imag]
            for n, (amp_g, amp_e) in enumerate(zip(exact.amps_g, exact.amps_e))
        ),
    )

    dec = photon_added_decomposition(d, atom)
    a2 = abs(d.alpha) ** 2
    dec_path = out_dir / "decomposition.json"
    write_json(
        dec_path,
        {
            "base_amp": [dec.base_amp.real, dec.base_amp.imag],
            "pacs1_amp": [dec.pacs1_amp.real, dec.pacs1_amp.imag],
            "pacs2_amp": [dec.pacs2_amp.real, dec.pacs2_amp.imag],
            "normalization": dec.normalization,
            "k_alpha_1": math.sqrt(laguerre(1, -a2)),
            "k_alpha_2": math.sqrt(laguerre(2, -a2) * 2.0),
            "phi": d.phi,
            "mu": d.mu,
            "t": d.t,
            "expansion_parameter": d.linear_expansion_parameter,
            "linear_time_bound_s": d.linear_time_bound(),
        },
    )

    ts = np.linspace(0.0, d.t, int(params["fidelity_points"]) + 1)[1:]
    fid_rows = []
    for t in ts:
        dt = DispersiveConfig(mu=d.mu, phi=d.phi, alpha=d.alpha, t=float(t), ncut=d.ncut)
        ex = evolve_dispersive_exact(dt, atom)
        field = ex.amps_g if atom == "g" else ex.amps_e
        dec_t = photon_added_decomposition(dt, atom)
        approx = decomposition_field_state(dt, dec_t, atom)
        overlap = abs(np.vdot(field, approx.amps)) ** 2
        fid_rows.append([float(t), float(overlap)])
    fid_path = out_dir / "fidelity_vs_t.csv"
    write_csv(fid_path, ["t", "overlap_sq"], fid_rows)
    return [state_path, dec_path, fid_path]


def cmd_wigner_diff(params: dict, out_dir: Path, seed: int, threads: int) -> list[Path]:
    _, c, d = _dispersive_inputs(params)
    atom = params["initial_atom"]
    dec = photon_added_decomposition(d, atom)
    field = decomposition_field_state(d, dec, atom)
    rot = np.exp(1j * d.mu * d.t)
    reference = complex(d.alpha) * (rot if atom == "g" else np.conj(rot))

    extent = params["grid_extent"]
    grid = GridSpec(-extent, extent, -extent, extent, int(params["grid_points"]),
                    int(params["grid_points"]))
    pad = params["pad_levels"]
    diff = wigner_difference(field, reference, grid,
                             pad_levels=int(pad) if pad is not None else None,
                             threads=threads)

    csv_path = out_dir / "delta_w.csv"
    grid_to_csv(diff.grid, csv_path)
    json_path = out_dir / "delta_w.json"
    grid_to_json(diff.grid, json_path)
    summary_path = out_dir / "wigner_summary.json"
    write_json(
        summary_path,
        {
            "max_abs_delta_w": diff.max_abs,
            "location": [diff.location.real, diff.location.imag],
            "ref_peak": diff.ref_peak,
            "precision_ratio": wigner_precision_ratio(diff.max_abs, diff.ref_peak),
            "phi": d.phi,
            "mu": d.mu,
            "t": d.t,
            "expansion_parameter": d.linear_expansion_parameter,
        },
    )
    return [csv_path, json_path, summary_path]


def cmd_zeta_maps(params: dict, out_dir: Path, seed: int, threads: int) -> list[Path]:
    p = GupParams.from_gamma(params["gamma"], params["delta"], params["epsilon"])
    spec = ZetaMapSpec(
        n=int(params["n"]),
        params=p,
        omega_min=params["omega_min"],
        omega_max=params["omega_max"],
        n_omega=int(params["n_omega"]),
        delta_min=params["delta_min"],
        delta_max=params["delta_max"],
        n_delta=int(params["n_delta"]),
    )
    zmap = zeta_map(spec)

    rows = []
    for i, delta in enumerate(zmap.delta_axis):
        for j, omega in enumerate(zmap.omega_axis):
            rows.append([float(omega), float(delta),
                         float(zmap.zeta_lq[i, j]), float(zmap.zeta_rq[i, j])])
    csv_path = out_dir / "zeta_map.csv"
    write_csv(csv_path, ["omega", "delta", "zeta_lq", "zeta_rq"], rows)
    json_path = out_dir / "zeta_map.json"
    write_json(
        json_path,
        {
            "omega_axis": [float(v) for v in zmap.omega_axis],
            "delta_axis": [float(v) for v in zmap.delta_axis],
            "zeta_lq_row_major": [float(v) for v in zmap.zeta_lq.ravel()],
            "zeta_rq_row_major": [float(v) for v in zmap.zeta_rq.ravel()],
            "n": zmap.n,
            "gamma": zmap.gamma,
            "delta": zmap.delta,
            "epsilon": zmap.epsilon,
        },
    )
    return [csv_path, json_path]


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _slope(xs: list[float], ys: list[float]) -> float:
    lx, ly = np.log(xs), np.log(ys)
    return float(np.polyfit(lx, ly, 1)[0])


def run_verify_checks(draws: int, grid_points: int, seed: int, threads: int) -> list[dict]:
    checks = []

    def record(name: str, ok: bool, detail: str) -> None:
        checks.append({"name": name, "ok": bool(ok), "detail": detail})

    rng = np.random.default_rng(seed)

    # coefficient identity 8*chi = phi + 2*beta
    worst = 0.0
    for _ in range(draws):
        p = GupParams(
            gamma0=float(rng.uniform(0.0, 1e8)),
            delta=float(rng.uniform(-2.0, 2.0)),
            epsilon=float(rng.uniform(-2.0, 2.0)),
        )
        c = derive_coefficients(p, float(rng.uniform(1e9, 1e17)))
        scale = abs(c.phi) + 2.0 * abs(c.beta) + 8.0 * abs(c.chi)
        if scale > 0.0:
            worst = max(worst, abs(8.0 * c.chi - (c.phi + 2.0 * c.beta)) / scale)
    record("coefficient-identity", worst < 1e-14, f"worst rel residual {worst:.2e}")

    # ladder algebra on the interior block
    ncut = 12
    a = build_annihilation(ncut).entries
    comm = a @ a.conj().T - a.conj().T @ a - np.eye(ncut + 1)
    interior = float(np.max(np.abs(comm[: ncut - 1, : ncut - 1])))
    record("ladder-commutator", interior < 1e-12, f"interior residual {interior:.2e}")

    # standard-model oracle: gamma = 0 reproduces cos/sin amplitudes
    p0 = GupParams(gamma0=0.0, delta=1.0, epsilon=1.0)
    worst = 0.0
    for n in (0, 1, 5):
        cfg = InteractionConfig(omega=10.0, omega0=10.0, coupling=1.0)
        c0 = derive_coefficients(p0, cfg.omega)
        period = 2.0 * math.pi / (2.0 * cfg.coupling * math.sqrt(n + 1))
        t_grid = np.linspace(0.0, 10.0 * period, 400)
        report = validate_against_numeric(n, cfg, c0, t_grid, ncut=n + 2)
        worst = max(worst, report.max_amp_err)
    record("standard-jcm-oracle", worst < 1e-9, f"max amplitude error {worst:.2e}")

    # corrected Rabi frequency at the electroweak benchmark
    cfg = InteractionConfig(omega=1e16, omega0=1e16, coupling=1.0)
    pew = GupParams.from_gamma(1e3, 1.0, 1.0)
    cew = derive_coefficients(pew, cfg.omega)
    sol = rabi_shift(1, cfg, cew)
    closed = sol.omega_std * 2.0 * cew.phi
    ok = (
        abs(sol.delta_omega - closed) <= 1e-12 * closed
        and 1e-13 < sol.delta_omega < 1e-11
    )
    record("rabi-shift", ok, f"delta_omega = {sol.delta_omega:.3e} rad/s")

    # commutator residual scales as phi^2
    cfg_disp = InteractionConfig(omega=1e6, omega0=1e6 + 1e4, coupling=1.0)
    phis = [1e-5, 5e-6, 2.5e-6]
    residuals = []
    for phi in phis:
        c_syn = GupCoefficients(phi=phi, chi=0.0, beta=-phi / 2.0, omega=cfg_disp.omega)
        residuals.append(commutator_check(cfg_disp, c_syn, ncut=20))
    slope = _slope(phis, residuals)
    record("commutator-scaling", abs(slope - 2.0) < 0.1, f"log-log slope {slope:.3f}")

    # dispersive re-summation at phi = 0
    d0 = DispersiveConfig(mu=1e5, phi=0.0, alpha=1.0, t=1e3, ncut=30)
    ev = evolve_dispersive_exact(d0, "g")
    target = coherent_state(1.0 * np.exp(1j * d0.mu * d0.t), 30)
    infid = 1.0 - abs(np.vdot(ev.amps_g, target.amps)) ** 2
    record("dispersive-resummation", infid < 1e-10, f"infidelity {infid:.2e}")

    # photon-added normalizers and the benchmark amplitude scale
    k1 = math.sqrt(laguerre(1, -1.0))
    k2 = math.sqrt(laguerre(2, -1.0) * 2.0)
    _, c_fig, d_fig = _dispersive_inputs(PRESETS["fig1"])
    dec = photon_added_decomposition(d_fig, "g")
    pacs1_raw = abs(dec.pacs1_amp) * dec.normalization
    expected = 2.0 * c_fig.phi * d_fig.mu * d_fig.t * k1
    ok = (
        abs(k1 - math.sqrt(2.0)) < 1e-10
        and abs(k2 - math.sqrt(7.0)) < 1e-10
        and abs(pacs1_raw - expected) < 1e-8 * expected + 1e-12
    )
    record("photon-added-decomposition", ok, f"|pacs1|*N = {pacs1_raw:.3e}")

    # Wigner closed forms and photon-added negativity
    grid = GridSpec(-3.0, 3.0, -3.0, 3.0, grid_points, grid_points)
    coh = coherent_state(1.0, 25)
    w_coh = wigner_of_state(coh, grid, threads=threads)
    zz = w_coh.re_axis[None, :] + 1j * w_coh.im_axis[:, None]
    exact = (2.0 / math.pi) * np.exp(-2.0 * np.abs(zz - 1.0) ** 2)
    err_coh = float(np.max(np.abs(w_coh.values - exact)))
    w_f1 = wigner_of_state(fock_state(1, 10), grid, threads=threads)
    exact_f1 = (2.0 / math.pi) * (-(1.0 - 4.0 * np.abs(zz) ** 2)) * np.exp(-2.0 * np.abs(zz) ** 2)
    err_f1 = float(np.max(np.abs(w_f1.values - exact_f1)))
    pacs = photon_added_coherent_state(1.0, 1, 30)
    w_pacs = wigner_of_state(pacs, grid, threads=threads)
    record(
        "wigner-closed-forms",
        err_coh < 1e-8 and err_f1 < 1e-8 and float(np.min(w_pacs.values)) < 0.0,
        f"coherent err {err_coh:.2e}, fock1 err {err_f1:.2e}, "
        f"pacs min {float(np.min(w_pacs.values)):.3f}",
    )

    # validity-ratio spot values and high-frequency slices
    cfg_z = InteractionConfig(omega=1e16, omega0=1e16 + 1e4, coupling=1.0)
    p2 = GupParams.from_gamma(0.5, 1.0, 1.0)
    p3 = GupParams.from_gamma(5e3, 1.0, 1.0)
    lq = zeta_lq(50, cfg_z, p2)
    rq = zeta_rq(50, cfg_z, p3)
    slice_ok = True
    for delta in np.logspace(3, 5, 9):
        cfg_s = InteractionConfig(omega=1e16, omega0=1e16 + delta, coupling=1.0)
        slice_ok = slice_ok and zeta_lq(50, cfg_s, p2) < 1.0 and zeta_rq(50, cfg_s, p3) < 1.0
    ok = abs(lq - 4e-4) < 0.2 * 4e-4 and abs(rq - 4e-4) < 0.2 * 4e-4 and slice_ok
    record("zeta-ratios", ok, f"zeta_lq = {lq:.3e}, zeta_rq = {rq:.3e}")

    # perturbative amplitudes agree with exact evolution at O(coupling^2) relative
    c_p = GupCoefficients(phi=1e-3, chi=0.0, beta=-5e-4, omega=50.0, xi_mag=2e-3)
    errs, lams = [], []
    for lam in (1e-3, 5e-4, 2.5e-4):
        cfg_l = InteractionConfig(omega=50.0, omega0=30.0, coupling=lam)
        rep = perturbation_cross_check(2, cfg_l, c_p, t=0.35, ncut=10)
        errs.append(rep.max_rel_err)
        lams.append(lam)
    slope = _slope(lams, errs)
    record("perturbation-scaling", abs(slope - 2.0) < 0.1, f"log-log slope {slope:.3f}")

    # effective-Hamiltonian evolution against two independent integrators
    cfg_d = InteractionConfig(omega=200.0, omega0=280.0, coupling=1.5)
    c_d = GupCoefficients(phi=1e-4, chi=0.0, beta=-5e-5, omega=200.0)
    t_check = 0.05 / cfg_d.mu
    exact = dyson_consistency_check(cfg_d, c_d, ncut=18, t=t_check, method="exact")
    stepped = dyson_consistency_check(cfg_d, c_d, ncut=18, t=t_check, method="rk4")
    agree = abs(exact.fidelity - stepped.fidelity)
    ok = agree < 1e-8 and exact.fidelity > 1.0 - 10.0 * exact.dropped_term_mag**2
    record(
        "dyson-consistency",
        ok,
        f"fidelity {exact.fidelity:.10f}, integrator gap {agree:.2e}",
    )
    return checks


def cmd_verify(params: dict, out_dir: Path, seed: int, threads: int) -> tuple[list[Path], int]:
    checks = run_verify_checks(
        draws=int(params["draws"]),
        grid_points=int(params["grid_points"]),
        seed=seed,
        threads=threads,
    )
    width = max(len(c["name"]) for c in checks)
    for c in checks:
        status = "PASS" if c["ok"] else "FAIL"
        print(f"{c['name']:<{width}}  {status}  {c['detail']}")
    all_passed = all(c["ok"] for c in checks)
    report_path = out_dir / "verify_report.json"
    write_json(report_path, {"checks": checks, "all_passed": all_passed})
    return [report_path], 0 if all_passed else 1


COMMANDS = {
    "rabi": cmd_rabi,
    "dispersive": cmd_dispersive,
    "wigner-diff": cmd_wigner_diff,
    "zeta-maps": cmd_zeta_maps,
    "verify": cmd_verify,
}


def run_command(command: str, args) -> int:
    config = resolve_config(command, args)
    out_dir = Path(args.out) if args.out else Path("runs") / command
    out_dir.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    config_path = out_dir / "run_config.json"
    write_json(config_path, config)
    result = COMMANDS[command](config["params"], out_dir, config["seed"], config["threads"])
    outputs, code = result if isinstance(result, tuple) else (result, 0)
    wall = time.perf_counter() - start
    write_manifest(out_dir, config, [config_path, *outputs], wall)
    for path in outputs:
        print(path)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gupjc",
        description="GUP-corrected Jaynes-Cummings simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", help="JSON run configuration to replay")
        cmd.add_argument("--preset", help=f"named parameter set: {sorted(PRESETS)}")
        cmd.add_argument("--out", help="output directory (default runs/<command>)")
        cmd.add_argument("--seed", type=int, help="seed for randomized checks")
        cmd.add_argument("--threads", type=int, help="worker threads for grid sweeps")
        cmd.add_argument(
            "--set",
            action="append",
            metavar="KEY=VALUE",
            help="override a single parameter (JSON-typed value)",
        )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run_command(args.command, args)
    except GupJcError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
