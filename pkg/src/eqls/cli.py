"""Command-line front end.

Subcommands reproduce the bundled reference tables and the phase diagram
as machine-readable artifacts (csv/json) or human-readable markdown, run
single computations, and expose the cQED estimators.

Exit status: 0 success, 2 argument/data errors, 3 numerical
non-convergence.  Machine formats use 6 significant digits in scientific
notation; csv and json carry identical numeric payloads.  Progress and
warnings go to stderr, keeping stdout parseable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import cqed, phases, zstates
from .matter import RegistryError, de_boer, load_registry
from .phases import ConvergenceError
from .units import UnitError
from .zstates import RegularizedImage, SolverError

ENV_SUBSTANCES = "EQLS_SUBSTANCES"

_FORMATS = ("csv", "json", "md")


def _sci(x: float) -> str:
    return f"{x:.6e}"


def _json_num(x: float) -> float:
    return float(_sci(x))


def _render_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if row[c] is None else
                         _sci(row[c]) if isinstance(row[c], float) else str(row[c])
                         for c in columns])
    return buf.getvalue()


def _render_json(columns, rows, extra=None) -> str:
    doc = {"columns": list(columns),
           "rows": [{c: (_json_num(r[c]) if isinstance(r[c], float) else r[c])
                     for c in columns} for r in rows]}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2) + "\n"


def _render_md(columns, rows, formats=None) -> str:
    formats = formats or {}

    def cell(c, v):
        if v is None:
            return ""
        if isinstance(v, float):
            return format(v, formats.get(c, ".6g"))
        return str(v)

    table = [[cell(c, r[c]) for c in columns] for r in rows]
    widths = [max(len(c), *(len(t[i]) for t in table)) if table else len(c)
              for i, c in enumerate(columns)]
    lines = ["| " + " | ".join(c.ljust(w) for c, w in zip(columns, widths)) + " |",
             "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    for t in table:
        lines.append("| " + " | ".join(v.ljust(w) for v, w in zip(t, widths)) + " |")
    return "\n".join(lines) + "\n"


def _emit(args, text: str) -> None:
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise RegistryError(f"cannot write output path {args.output}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _emit_table(args, columns, rows, md_formats=None, extra_json=None) -> None:
    if args.format == "csv":
        _emit(args, _render_csv(columns, rows))
    elif args.format == "json":
        _emit(args, _render_json(columns, rows, extra_json))
    else:
        _emit(args, _render_md(columns, rows, md_formats))


def _registry(args):
    path = args.substances or os.environ.get(ENV_SUBSTANCES) or None
    return load_registry(path)


def _add_common(p, substances=True):
    p.add_argument("--format", choices=_FORMATS, default="md",
                   help="output format (default md)")
    p.add_argument("--output", metavar="PATH", help="write to a file instead of stdout")
    p.add_argument("--verbose", action="store_true", help="progress to stderr")
    if substances:
        p.add_argument("--substances", metavar="FILE",
                       help=f"substance data file (default ${ENV_SUBSTANCES} or bundled)")


def _cmd_table1(args) -> int:
    reg = _registry(args)
    rows = [{"species": sp.name, "mass_amu": sp.mass_amu, "sigma_A": sp.sigma_A,
             "epsilon_K": sp.epsilon_K, "de_boer": de_boer(sp)}
            for sp in reg.species]
    _emit_table(args, ["species", "mass_amu", "sigma_A", "epsilon_K", "de_boer"], rows,
                md_formats={"mass_amu": ".4f", "sigma_A": ".3f",
                            "epsilon_K": ".1f", "de_boer": ".2f"})
    return 0


_TABLE2_MD = {"n_A3": ".4f", "a_s_A": ".2f", "eps_r": ".3f", "V0_eV": ".2f",
              "E1_meV": ".4g", "E2_meV": ".4g", "dE_K": ".4g", "f_THz": ".3g",
              "z1_nm": ".3g", "z2_nm": ".3g"}


def _solve_surface(surface, b_override, v0_override):
    spec = RegularizedImage(
        v0_ev=v0_override if v0_override is not None else surface.barrier_v0_ev,
        eps_r=surface.dielectric_constant,
        b_A=b_override if b_override is not None else surface.scattering_length_A,
    )
    result = zstates.solve_bound_states(zstates.build_potential(spec), 2)
    if result.shortfall:
        raise SolverError(
            f"{surface.name}: found only {len(result.states)} of 2 bound states"
        )
    return result


def _cmd_table2(args) -> int:
    reg = _registry(args)
    surfaces = [reg.get_surface(args.substance)] if args.substance else reg.surfaces
    rows = []
    for sf in surfaces:
        if args.verbose:
            print(f"solving {sf.name} ...", file=sys.stderr)
        result = _solve_surface(sf, args.b, args.v0)
        s1, s2 = result.states
        tr = zstates.transition(result.states, 0, 1)
        row = {"substance": sf.name, "n_A3": sf.number_density_A3,
               "a_s_A": sf.scattering_length_A, "eps_r": sf.dielectric_constant,
               "V0_eV": args.v0 if args.v0 is not None else sf.barrier_v0_ev,
               "E1_meV": s1.energy_mev, "E2_meV": s2.energy_mev,
               "dE_K": tr.de_k, "f_THz": tr.f_thz,
               "z1_nm": s1.mean_z_nm, "z2_nm": s2.mean_z_nm}
        if args.residuals:
            ref = sf.reference
            pairs = (("E1_meV", "e1_mev"), ("E2_meV", "e2_mev"), ("dE_K", "de_k"),
                     ("f_THz", "f_thz"), ("z1_nm", "z1_nm"), ("z2_nm", "z2_nm"))
            for col, attr in pairs:
                refval = getattr(ref, attr) if ref else None
                row[f"ref_{col}"] = refval
                row[f"res_{col}"] = (None if refval is None
                                     else (row[col] - refval) / abs(refval))
        rows.append(row)
    columns = list(rows[0].keys())
    md = dict(_TABLE2_MD)
    for c in columns:
        if c.startswith("ref_"):
            md[c] = _TABLE2_MD.get(c[4:], ".4g")
        elif c.startswith("res_"):
            md[c] = ".2%"
    _emit_table(args, columns, rows, md_formats=md)
    return 0


def _cmd_states(args) -> int:
    reg = _registry(args)
    sf = reg.get_surface(args.substance)
    spec = RegularizedImage(
        v0_ev=args.v0 if args.v0 is not None else sf.barrier_v0_ev,
        eps_r=sf.dielectric_constant,
        b_A=args.b if args.b is not None else sf.scattering_length_A,
        pressing_field_v_per_m=args.field,
    )
    grid = zstates.default_grid(spec, levels=args.levels)
    if args.grid_h or args.grid_zmax:
        grid = zstates.surface_grid(-20.0, args.grid_zmax or grid.z_max_A,
                                    args.grid_h or grid.h_A)
    result = zstates.solve_bound_states(zstates.build_potential(spec, grid), args.levels)
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if result.shortfall:
        print(f"note: only {len(result.states)} of {args.levels} requested states "
              f"are bound on this grid", file=sys.stderr)
    rows = []
    for k, st in enumerate(result.states):
        change = (result.convergence.energy_change_mev[k]
                  if result.convergence and k < len(result.convergence.energy_change_mev)
                  else None)
        rows.append({"state": k + 1, "energy_meV": st.energy_mev,
                     "nodes": st.node_count, "mean_z_nm": st.mean_z_nm,
                     "dE_half_grid_meV": change})
    if args.dump_psi:
        outdir = Path(args.dump_psi)
        outdir.mkdir(parents=True, exist_ok=True)
        stem = sf.name.replace(" ", "_")
        for k, st in enumerate(result.states):
            with open(outdir / f"{stem}_state{k + 1}.dat", "w", encoding="utf-8") as fh:
                zstates.write_wavefunction(st, fh, k + 1)
    _emit_table(args, ["state", "energy_meV", "nodes", "mean_z_nm", "dE_half_grid_meV"],
                rows, md_formats={"energy_meV": ".4g", "mean_z_nm": ".3g",
                                  "dE_half_grid_meV": ".2e"})
    return 0


def _cmd_phase_diagram(args) -> int:
    if args.points < 2:
        raise ValueError("--points must be >= 2")
    if not 0 < args.t_min < args.t_max:
        raise ValueError("need 0 < --t-min < --t-max")
    step = (args.t_max - args.t_min) / (args.points - 1)
    temps = [args.t_min + i * step for i in range(args.points)]
    if args.verbose:
        print(f"tracing melting curve at {args.points} temperatures ...", file=sys.stderr)
    curve = phases.melting_curve(args.gamma0, temps)
    if args.format == "csv":
        _emit(args, phases.render_curve_csv(curve))
    elif args.format == "json":
        _emit(args, json.dumps(phases.curve_as_dict(curve), indent=2) + "\n")
    else:
        rows = [{"T_K": t, "n_c1_cm2": a, "n_c2_cm2": b}
                for t, a, b in zip(curve.temperatures_k, curve.n_c1_cm2, curve.n_c2_cm2)]
        c = curve.critical
        text = _render_md(["T_K", "n_c1_cm2", "n_c2_cm2"], rows,
                          {"T_K": ".3f", "n_c1_cm2": ".4g", "n_c2_cm2": ".4g"})
        text += (f"\ncritical point: T_c = {c.t_c_k:.3g} K, "
                 f"n_c = {c.n_c_cm2:.3g} cm^-2, n* = {c.n_star_cm2:.3g} cm^-2\n")
        _emit(args, text)
    return 0


def _cmd_classify(args) -> int:
    label = phases.classify(args.density, args.temperature, args.gamma0)
    if args.format == "md":
        _emit(args, label.value + "\n")
    else:
        point = phases.electron_gas_point(args.density, args.temperature)
        rows = [{"density_cm2": args.density, "temperature_K": args.temperature,
                 "gamma0": args.gamma0, "gamma": point.gamma, "phase": label.value}]
        _emit_table(args, list(rows[0].keys()), rows)
    return 0


def _cmd_couple_gs(args) -> int:
    inp = cqed.SpinCouplingInput(
        g_charge_mhz=args.g, f_charge_ghz=args.f_charge,
        f_larmor_ghz=args.f_larmor, grad_bz_t_per_m=args.grad_bz,
        mass_ratio=args.mass_ratio)
    gs = cqed.spin_coupling(inp)
    if args.format == "md":
        _emit(args, f"g_s = {gs:.4g} MHz\n")
    else:
        _emit_table(args, ["g_s_MHz"], [{"g_s_MHz": gs}])
    return 0


def _cmd_couple_imagecharge(args) -> int:
    d_nm = args.d_nm if args.d_nm is not None else args.d_mm * 1e6
    delta = cqed.image_charge_delta(args.dz_nm, d_nm)
    if args.format == "md":
        _emit(args, f"delta q / e = {delta:.4g}\n")
    else:
        _emit_table(args, ["delta_q_over_e"], [{"delta_q_over_e": delta}])
    return 0


def _cmd_couple_larmor(args) -> int:
    f = cqed.larmor(args.b_field)
    if args.format == "md":
        _emit(args, f"f_L = {f:.4g} GHz\n")
    else:
        _emit_table(args, ["f_L_GHz"], [{"f_L_GHz": f}])
    return 0


def _cmd_couple_strong(args) -> int:
    res = cqed.strong_coupling(cqed.CouplingBudget(args.g, args.kappa, args.gamma_rate))
    if args.format == "md":
        verdict = "strong coupling" if res.strong else "NOT strong coupling"
        _emit(args, f"{verdict}: margin = {res.margin_mhz:.4g} MHz\n")
    else:
        _emit_table(args, ["strong", "margin_MHz"],
                    [{"strong": str(res.strong).lower(), "margin_MHz": res.margin_mhz}])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqls",
        description="Electrons on quantum liquids and solids: surface states, "
                    "2D phase diagram, and cQED estimates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="de Boer quantumness table for all species")
    _add_common(p)
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("table2", help="surface-state spectra for all (or one) surface")
    _add_common(p)
    p.add_argument("--substance", help="restrict to one surface (name or substring)")
    p.add_argument("--b", type=float, help="override the image cutoff b in A")
    p.add_argument("--v0", type=float, help="override the barrier height V0 in eV")
    p.add_argument("--residuals", action="store_true",
                   help="append stored reference values and relative residuals")
    p.set_defaults(func=_cmd_table2)

    p = sub.add_parser("states", help="bound states for one surface")
    _add_common(p)
    p.add_argument("--substance", required=True)
    p.add_argument("--levels", type=int, default=2, help="number of states (default 2)")
    p.add_argument("--field", type=float, default=0.0,
                   help="vertical pressing field in V/m (positive presses)")
    p.add_argument("--b", type=float, help="override the image cutoff b in A")
    p.add_argument("--v0", type=float, help="override the barrier height V0 in eV")
    p.add_argument("--grid-h", type=float, help="grid spacing in A")
    p.add_argument("--grid-zmax", type=float, help="grid extent above the surface in A")
    p.add_argument("--dump-psi", metavar="DIR",
                   help="write one two-column wavefunction file per state")
    p.set_defaults(func=_cmd_states)

    p = sub.add_parser("phase-diagram", help="melting curve and critical point")
    _add_common(p, substances=False)
    p.add_argument("--gamma0", type=float, required=True,
                   help="melting threshold of the plasma parameter")
    p.add_argument("--t-min", type=float, default=0.5)
    p.add_argument("--t-max", type=float, default=20.0)
    p.add_argument("--points", type=int, default=40)
    p.set_defaults(func=_cmd_phase_diagram)

    p = sub.add_parser("classify", help="phase label at one (density, temperature)")
    _add_common(p, substances=False)
    p.add_argument("--density", type=float, required=True, help="electron density in cm^-2")
    p.add_argument("--temperature", type=float, required=True, help="temperature in K")
    p.add_argument("--gamma0", type=float, default=phases.DEFAULT_GAMMA0)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("couple", help="cQED estimators")
    csub = p.add_subparsers(dest="estimator", required=True)

    q = csub.add_parser("gs", help="gradient-mediated spin-photon coupling")
    _add_common(q, substances=False)
    q.add_argument("--g", type=float, required=True, help="charge-photon coupling in MHz")
    q.add_argument("--f-charge", type=float, required=True, help="charge frequency in GHz")
    q.add_argument("--f-larmor", type=float, required=True, help="Larmor frequency in GHz")
    q.add_argument("--grad-bz", type=float, required=True,
                   help="field gradient in T/m (1 mG/nm = 100 T/m)")
    q.add_argument("--mass-ratio", type=float, default=1.0)
    q.set_defaults(func=_cmd_couple_gs)

    q = csub.add_parser("imagecharge", help="image-charge change from a level shift")
    _add_common(q, substances=False)
    q.add_argument("--dz-nm", type=float, required=True, help="vertical shift in nm")
    group = q.add_mutually_exclusive_group(required=True)
    group.add_argument("--d-nm", type=float, help="electrode distance in nm")
    group.add_argument("--d-mm", type=float, help="electrode distance in mm")
    q.set_defaults(func=_cmd_couple_imagecharge)

    q = csub.add_parser("larmor", help="electron Larmor frequency")
    _add_common(q, substances=False)
    q.add_argument("--b-field", type=float, required=True, help="magnetic field in T")
    q.set_defaults(func=_cmd_couple_larmor)

    q = csub.add_parser("strong", help="strong-coupling test g > kappa, gamma")
    _add_common(q, substances=False)
    q.add_argument("--g", type=float, required=True, help="coupling in MHz")
    q.add_argument("--kappa", type=float, required=True, help="resonator decay in MHz")
    q.add_argument("--gamma-rate", type=float, required=True, help="qubit linewidth in MHz")
    q.set_defaults(func=_cmd_couple_strong)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (RegistryError, UnitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SolverError, ConvergenceError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())
