"""Command-line interface: every headline number from one entry point.

Subcommands:
    scaling    site/qubit budgets and the scaling-law intermediates
    structure  hyperfine tables, register map, selectivity curves
    trap       trap depth / scattering spectrum from a level table
    register   run a register-operation script, emit a replay trace
    loading    Monte Carlo ensemble-loading statistics

All commands run with zero flags using the built-in defaults; a YAML
config overrides them. Outputs are deterministic for a given (config,
seed): rerunning a command reproduces its files byte for byte.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import re
import sys
from pathlib import Path

import click

from . import hyperfine, loading, register, scaling, trap
from .config import ConfigError, RunConfig, default_config, load_config
from .transitions import catalog_to_csv


def _load(config_path: str | None) -> RunConfig:
    if config_path is None:
        return default_config()
    return load_config(config_path)


def _out_dir(cfg: RunConfig, out_flag: str | None) -> Path:
    path = Path(out_flag) if out_flag else Path(cfg.output_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8")
    click.echo(f"wrote {path}")


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


CONFIG_OPT = click.option("--config", "config_path", type=str, default=None, help="YAML config file")
OUT_OPT = click.option("--out", "out_flag", type=str, default=None, help="output directory")


@click.group()
def main() -> None:
    """Architecture calculator and simulator for collectively encoded Rydberg arrays."""


@main.command("scaling")
@CONFIG_OPT
@OUT_OPT
@click.option("--dim", type=click.Choice(["2", "3"]), default=None, help="lattice dimensionality")
def cmd_scaling(config_path: str | None, out_flag: str | None, dim: str | None) -> None:
    """Site and qubit budgets from the closed-form scaling laws."""
    try:
        cfg = _load(config_path)
        sp = cfg.scaling
        if dim is not None:
            sp = dataclasses.replace(sp, dim=int(dim))
        report = scaling.architecture_report(sp, cfg.ensemble)
        single_2d = scaling.n_max_closed_form(dataclasses.replace(sp, dim=2))
        single_3d = scaling.n_max_closed_form(dataclasses.replace(sp, dim=3))
        diameter = scaling.ensemble_diameter(cfg.ensemble.K, cfg.ensemble.f, cfg.ensemble.d_min)
        k1_tight = scaling.solve_k1(sp.n, 100.0)
        payload = {
            "params": {
                "n": sp.n,
                "k_delta": sp.k_delta,
                "k1": sp.k1,
                "tau0_s": sp.tau0,
                "error_target": sp.error_target,
                "dim": sp.dim,
                "site_pitch_m": cfg.ensemble.site_pitch,
                "register_size": cfg.ensemble.register_size,
            },
            "single_site": {
                "n_max_2d": single_2d,
                "n_max_3d": single_3d,
                "d_min_m": scaling.d_min(sp.n, sp.k1).value,
                "d_min_tight_m": scaling.d_min(sp.n, k1_tight).value,
                "k1_tight": k1_tight,
            },
            "ensemble": {
                **report.to_dict(),
                "ensemble_diameter_m": diameter.value,
                "logical_qubits_7_per": scaling.logical_budget(cfg.ensemble.register_size, 7),
            },
        }
    except (ConfigError, ValueError) as exc:
        _fail(str(exc))
        return
    out = _out_dir(cfg, out_flag)
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    _write(out / "scaling_report.json", text)
    e = payload["ensemble"]
    s = payload["single_site"]
    click.echo(f"C6                  {e['c6_J_m6']:.4e} J m^6")
    click.echo(f"lifetime            {e['tau_s']:.4e} s")
    click.echo(f"R_max               {e['r_max_m'] * 1e6:.3f} um")
    click.echo(f"D_min               {s['d_min_m'] * 1e6:.3f} um")
    click.echo(f"single-atom sites   {s['n_max_2d']} (2D)  {s['n_max_3d']} (3D)")
    click.echo(f"ensemble sites      {e['n_sites']}")
    click.echo(f"total qubits        {e['qubits_total']}")


@main.command("structure")
@CONFIG_OPT
@OUT_OPT
def cmd_structure(config_path: str | None, out_flag: str | None) -> None:
    """Hyperfine, Zeeman and selectivity tables."""
    try:
        cfg = _load(config_path)
        hf = cfg.hyperfine
        reg_map = hyperfine.build_register_map()

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["bit", "zero_F", "zero_m", "one_F", "one_m", "splitting_GHz"])
        for a in reg_map.assignments:
            split = hyperfine.qubit_splitting(a.index, hf).value
            w.writerow([a.index, a.zero.f, a.zero.m, a.one.f, a.one.m, f"{split:.10g}"])
        map_csv = buf.getvalue()

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["F", "g_F", "energy_MHz"])
        for f in hf.f_values():
            w.writerow(
                [f, f"{hyperfine.g_factor(hf, f):.10g}", f"{hyperfine.hyperfine_energy(hf, f).value:.10g}"]
            )
        g_csv = buf.getvalue()

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["b_gauss", "quantity", "F", "value"])
        for b in range(5, 55, 5):
            for f in hyperfine.QUBIT_UPPER_F:
                v = hyperfine.rotation_selectivity(f, float(b), hf).value
                w.writerow([b, "rotation_kHz_per_unit_m", f, f"{v:.10g}"])
            for f in hf.f_values():
                v = hyperfine.shelving_selectivity(f, float(b), hf).value
                w.writerow([b, "shelving_MHz_per_unit_m", f, f"{v:.10g}"])
        sel_csv = buf.getvalue()
    except (ConfigError, ValueError) as exc:
        _fail(str(exc))
        return
    out = _out_dir(cfg, out_flag)
    _write(out / "register_map.csv", map_csv)
    _write(out / "g_factors.csv", g_csv)
    _write(out / "selectivity_vs_b.csv", sel_csv)
    _write(out / "transitions.csv", catalog_to_csv())
    click.echo(
        f"register: {len(reg_map.assignments)} qubits, reservoir "
        f"({reg_map.reservoir.f},{reg_map.reservoir.m}), {len(reg_map.excluded)} unassigned states"
    )


@main.command("trap")
@CONFIG_OPT
@OUT_OPT
def cmd_trap(config_path: str | None, out_flag: str | None) -> None:
    """Trap depth and scattering-rate spectrum over the laser-energy grid."""
    try:
        cfg = _load(config_path)
        table = (
            trap.load_levels(cfg.level_table_path)
            if cfg.level_table_path
            else trap.default_level_table()
        )
        spectrum = trap.trap_spectrum(table, cfg.trap.beam(), cfg.trap.energy_grid())
    except (ConfigError, ValueError, OSError) as exc:
        _fail(str(exc))
        return
    out = _out_dir(cfg, out_flag)
    _write(out / "trap_spectrum.csv", spectrum.to_csv())
    flagged = sum(1 for p in spectrum.points if not p.ok)
    click.echo(f"{len(spectrum.points)} grid points ({flagged} flagged near resonance)")
    if spectrum.skipped_levels:
        labels = ", ".join(f"{r.energy_cm1:g}" for r in spectrum.skipped_levels)
        click.echo(f"coverage: levels without usable rates were excluded: {labels} cm^-1")


_ANGLE_RE = re.compile(r"([+-]?\d*\.?\d*)\s*\*?\s*pi(?:/(\d*\.?\d+))?$")


def _parse_angle(token: str) -> float:
    try:
        return float(token)
    except ValueError:
        pass
    m = _ANGLE_RE.fullmatch(token.strip())
    if not m:
        raise ValueError(f"cannot parse angle {token!r}")
    coeff_raw = m.group(1)
    if coeff_raw in ("", "+"):
        coeff = 1.0
    elif coeff_raw == "-":
        coeff = -1.0
    else:
        coeff = float(coeff_raw)
    divisor = float(m.group(2)) if m.group(2) else 1.0
    return coeff * math.pi / divisor


def _statements(text: str) -> list[tuple[int, str]]:
    out = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        for stmt in body.split(";"):
            stmt = stmt.strip()
            if stmt:
                out.append((line_no, stmt))
    return out


class ScriptError(ValueError):
    pass


def run_register_script(text: str, default_seed: int = 0) -> list[dict]:
    """Execute a register script and return one trace record per statement.

    Statements (newline or ';' separated, '#' comments):
        init N [K]            fresh register, K defaults to 100
        rot BIT THETA PHI     angles accept floats or pi forms (pi, -pi, pi/2, 0.5pi)
        measure BIT seed=S    projective readout; seed falls back to --seed
        swap_down BIT         reset by shifting higher slots down
        shelf_restore BIT     reset in place through the metastable shelf
    """
    state: register.RegisterState | None = None
    records: list[dict] = []
    for line_no, stmt in _statements(text):
        tokens = stmt.split()
        op, args = tokens[0], tokens[1:]
        try:
            if op == "init":
                if not 1 <= len(args) <= 2:
                    raise ScriptError("init takes N and optional atom budget")
                n = int(args[0])
                budget = int(args[1]) if len(args) == 2 else 100
                state = register.new_register(n, budget)
                extra = {}
            elif state is None:
                raise ScriptError("script must start with init")
            elif op == "rot":
                if len(args) != 3:
                    raise ScriptError("rot takes BIT THETA PHI")
                state = register.apply_rotation(
                    state, int(args[0]), _parse_angle(args[1]), _parse_angle(args[2])
                )
                extra = {}
            elif op == "measure":
                if not args:
                    raise ScriptError("measure takes BIT [seed=N]")
                seed = default_seed
                for a in args[1:]:
                    if a.startswith("seed="):
                        seed = int(a[5:])
                    else:
                        raise ScriptError(f"unknown measure argument {a!r}")
                outcome, state = register.measure(state, int(args[0]), seed)
                extra = {"outcome": outcome}
            elif op == "swap_down":
                if len(args) != 1:
                    raise ScriptError("swap_down takes BIT")
                state = register.reset_swap_down(state, int(args[0]))
                extra = {}
            elif op == "shelf_restore":
                if len(args) != 1:
                    raise ScriptError("shelf_restore takes BIT")
                state = register.reset_shelf_restore(state, int(args[0]))
                extra = {}
            else:
                raise ScriptError(f"unknown operation {op!r}")
        except (ScriptError, ValueError) as exc:
            raise ScriptError(f"line {line_no}: {stmt!r}: {exc}") from exc
        record = {
            "line": line_no,
            "statement": stmt,
            **state.trace[-1],
            **extra,
            "atom_budget": state.atom_budget,
            "relabel": list(state.relabel),
            "prob_one": [
                round(state.probability_one(b), 12) for b in range(1, state.n_qubits + 1)
            ],
        }
        if state.n_qubits <= 6:
            logical = state.logical_amplitudes()
            record["logical_state_re"] = [round(float(x), 12) for x in logical.real]
            record["logical_state_im"] = [round(float(x), 12) for x in logical.imag]
        records.append(record)
    return records


@main.command("register")
@click.argument("script_path", type=str)
@CONFIG_OPT
@OUT_OPT
@click.option("--seed", type=int, default=0, help="default seed for measure statements")
def cmd_register(script_path: str, config_path: str | None, out_flag: str | None, seed: int) -> None:
    """Execute a register script and write a line-delimited replay trace."""
    try:
        cfg = _load(config_path)
        text = Path(script_path).read_text(encoding="utf-8")
    except (ConfigError, OSError) as exc:
        _fail(str(exc))
        return
    try:
        records = run_register_script(text, default_seed=seed)
    except ScriptError as exc:
        _fail(str(exc))
        return
    out = _out_dir(cfg, out_flag)
    lines = "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
    _write(out / "register_trace.jsonl", lines)
    click.echo(lines, nl=False)


@main.command("loading")
@CONFIG_OPT
@OUT_OPT
@click.option("--seed", type=int, default=None, help="override the configured RNG seed")
@click.option("--threads", type=int, default=1, help="worker threads for the trials")
def cmd_loading(config_path: str | None, out_flag: str | None, seed: int | None, threads: int) -> None:
    """Monte Carlo ensemble-loading statistics."""
    try:
        cfg = _load(config_path)
        lc = cfg.loading
        if seed is not None:
            lc = dataclasses.replace(lc, seed=seed)
        stats = loading.simulate_loading(lc, threads=max(1, threads))
    except (ConfigError, ValueError) as exc:
        _fail(str(exc))
        return
    out = _out_dir(cfg, out_flag)
    _write(out / "loading_stats.json", json.dumps(stats.to_dict(), indent=2, sort_keys=True) + "\n")
    _write(out / "k_histogram.csv", loading.histogram_csv(stats))
    click.echo(
        f"K = {stats.mean_K:.2f} +- {stats.std_K:.2f} over {lc.trials} trials "
        f"({stats.sites_in_sphere} sites in the bottle, "
        f"{stats.multi_occupancy_fraction:.4f} multi-occupancy fraction)"
    )


if __name__ == "__main__":
    main()
