"""Command-line interface and bit-stable output serialization.

Subcommands: coeffs, evolve, events, sweep, validate, presets.  A run is
configured by a JSON document (strict schema: unknown keys are rejected by
name) with CLI flags overriding file values.  Every output file carries a
metadata header recording the fully resolved configuration, the code
version and the tolerance choices, so a figure run can be reproduced from
its own output.

Exit status: 0 success, 1 configuration/validation error, 2 numerical
failure (oracle non-convergence or frozen-dynamics signals where a value
was required).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from . import coefficients as co
from . import correlations as fc
from . import dynamics as dy
from . import entanglement as en
from . import sweeps as sw

OUTDIR_ENV = "MIRRORATOMS_OUTDIR"

_STATE_PRESETS = ("G", "E", "A", "S")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Validated inputs of one CLI run (physical config + run controls)."""

    a_over_omega: float = 0.5
    omega_L: float = 1.0
    y_over_L: float = 0.5
    alignment: str = "parallel"
    d1: tuple = (1.0, 0.0, 0.0)
    d2: tuple = (1.0, 0.0, 0.0)
    gamma0: float = 1.0
    initial_state: object = "S"
    horizon: float = 20.0
    sample_step: float = 1e-2
    output_path: str = ""
    output_format: str = "csv"
    include_free_space_companion: bool = False
    oracle_validation: bool = False

    def __post_init__(self):
        if self.output_format not in ("csv", "json"):
            raise ConfigError("output_format must be 'csv' or 'json'")
        if isinstance(self.initial_state, str):
            if self.initial_state not in _STATE_PRESETS:
                raise ConfigError(
                    f"initial_state must be one of {_STATE_PRESETS} "
                    "or an inline 4x4 matrix")
        if self.horizon <= 0:
            raise ConfigError("horizon must be positive")
        if self.sample_step <= 0:
            raise ConfigError("sample_step must be positive")
        # delegate the physical-range checks
        self.physical()

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(
                f"unknown config key(s): {', '.join(sorted(unknown))}")
        clean = dict(data)
        for key in ("d1", "d2"):
            if key in clean:
                clean[key] = tuple(float(x) for x in clean[key])
        if "initial_state" in clean and not isinstance(
                clean["initial_state"], str):
            clean["initial_state"] = _parse_matrix(clean["initial_state"])
        try:
            return cls(**clean)
        except (ValueError, TypeError) as exc:
            raise ConfigError(str(exc)) from exc

    def to_dict(self):
        d = dataclasses.asdict(self)
        d["d1"] = list(self.d1)
        d["d2"] = list(self.d2)
        if not isinstance(self.initial_state, str):
            m = np.asarray(self.initial_state)
            d["initial_state"] = [[[float(z.real), float(z.imag)]
                                   for z in row] for row in m]
        return d

    def physical(self):
        try:
            return co.PhysicalConfig.from_ratios(
                self.a_over_omega, self.omega_L, self.y_over_L,
                self.alignment, d1=self.d1, d2=self.d2, gamma0=self.gamma0)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def initial(self):
        if isinstance(self.initial_state, str):
            return dy.XState.preset(self.initial_state)
        return dy.XState.from_density_matrix(self.initial_state)


def _parse_matrix(obj):
    """Inline 4x4 matrix: entries are numbers or [re, im] pairs."""
    rows = []
    for row in obj:
        out = []
        for z in row:
            if isinstance(z, (list, tuple)):
                out.append(complex(z[0], z[1]))
            else:
                out.append(complex(z))
        rows.append(out)
    m = np.array(rows, dtype=complex)
    if m.shape != (4, 4):
        raise ConfigError("inline initial_state must be a 4x4 matrix")
    return m


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _metadata(config, extra=None):
    meta = {"tool": "mirroratoms", "version": __version__}
    meta.update(config.to_dict() if isinstance(config, RunConfig) else config)
    meta.update(extra or {})
    return meta


def write_csv(path, meta, header, rows):
    with open(path, "w", newline="") as fh:
        for key, value in meta.items():
            fh.write(f"# {key} = {json.dumps(value) if isinstance(value, (list, dict)) else _fmt(value)}\n")
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def write_json(path, meta, data):
    with open(path, "w") as fh:
        json.dump({"metadata": meta, "data": data}, fh, indent=2,
                  default=_json_default)
        fh.write("\n")


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _out_path(config, default_name):
    if config.output_path:
        return Path(config.output_path)
    outdir = Path(os.environ.get(OUTDIR_ENV, "."))
    outdir.mkdir(parents=True, exist_ok=True)
    return outdir / f"{default_name}.{config.output_format}"


def _load_config(args):
    data = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
    overrides = {
        "a_over_omega": args.a, "omega_L": args.omega_l,
        "y_over_L": args.y_over_l, "alignment": args.alignment,
        "gamma0": args.gamma0, "initial_state": args.initial_state,
        "horizon": args.horizon, "sample_step": args.sample_step,
        "output_path": args.output, "output_format": args.format,
    }
    if getattr(args, "free_space_companion", False):
        overrides["include_free_space_companion"] = True
    if getattr(args, "oracle", False):
        overrides["oracle_validation"] = True
    if args.d1:
        overrides["d1"] = tuple(float(x) for x in args.d1.split(","))
    if args.d2:
        overrides["d2"] = tuple(float(x) for x in args.d2.split(","))
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    return RunConfig.from_dict(data)


def _add_physics_flags(p):
    p.add_argument("--config", help="JSON configuration file")
    p.add_argument("--a", type=float, help="a/omega")
    p.add_argument("--omega-l", type=float, help="omega * L")
    p.add_argument("--y-over-l", type=float, help="y / L")
    p.add_argument("--alignment", choices=("parallel", "vertical"))
    p.add_argument("--d1", help="dipole 1 components, e.g. 1,0,0")
    p.add_argument("--d2", help="dipole 2 components")
    p.add_argument("--gamma0", type=float)
    p.add_argument("--initial-state", choices=_STATE_PRESETS)
    p.add_argument("--horizon", type=float, help="scan horizon in Gamma0*tau")
    p.add_argument("--sample-step", type=float)
    p.add_argument("--output", help="output file path")
    p.add_argument("--format", choices=("csv", "json"), dest="format")


def cmd_coeffs(args):
    config = _load_config(args)
    cfg = config.physical()
    cs = co.assemble(cfg)
    lines = {"A1": cs.A1, "A2": cs.A2, "A3": cs.A3,
             "B1": cs.B1, "B2": cs.B2, "B3": cs.B3}
    print("coefficients (units of Gamma_0):")
    for k, v in lines.items():
        print(f"  {k} = {_fmt(v)}")
    extra = {}
    if args.expansion:
        nb = co.near_boundary_expansion(cfg)
        extra["expansion"] = {"A1": nb.A1, "A2": nb.A2, "A3": nb.A3,
                              "B1": nb.B1, "B2": nb.B2, "B3": nb.B3}
        print("near-boundary expansion:")
        for k, v in extra["expansion"].items():
            print(f"  {k} = {_fmt(v)}")
    if config.oracle_validation or args.oracle:
        status, report = _oracle_report(cfg)
        extra["oracle"] = report
        print(f"oracle max relative error: {_fmt(report['max_rel_error'])}")
        if status != 0:
            return status
    if config.output_path:
        meta = _metadata(config)
        if config.output_format == "json":
            write_json(_out_path(config, "coeffs"), meta,
                       {"coefficients": lines, **extra})
        else:
            write_csv(_out_path(config, "coeffs"), meta,
                      ["coefficient", "value"],
                      [[k, v] for k, v in lines.items()])
    return 0


def _trajectory_rows(config):
    cfg = config.physical()
    cs = co.assemble(cfg)
    gen = dy.build_generator(cs)
    n = max(int(np.ceil(config.horizon / config.sample_step)), 2)
    times = np.linspace(0.0, config.horizon, n + 1)
    traj = dy.propagate(gen, config.initial(), times)
    curve = en.concurrence_curve(traj)
    rows = []
    for t, s, c in zip(times, traj.states, curve):
        rows.append([t, s.pG, s.pE, s.pA, s.pS, s.rho_as.real,
                     s.rho_as.imag, s.rho_ge.real, s.rho_ge.imag, c])
    companions = {}
    if config.include_free_space_companion:
        gen_f = dy.build_generator(co.assemble(cfg, include_boundary=False))
        traj_f = dy.propagate(gen_f, config.initial(), times)
        companions["free_concurrence"] = en.concurrence_curve(traj_f)
        for row, cf in zip(rows, companions["free_concurrence"]):
            row.append(cf)
    return traj, rows, companions


_TRAJ_HEADER = ["gamma0_tau", "pG", "pE", "pA", "pS", "re_rhoAS", "im_rhoAS",
                "re_rhoGE", "im_rhoGE", "concurrence"]


def cmd_evolve(args):
    config = _load_config(args)
    traj, rows, companions = _trajectory_rows(config)
    header = list(_TRAJ_HEADER)
    if companions:
        header.append("free_concurrence")
    path = _out_path(config, "trajectory")
    meta = _metadata(config, {"sample_step": config.sample_step,
                              "propagation": traj.method})
    if config.output_format == "json":
        write_json(path, meta, {"columns": header,
                                "rows": [[float(v) for v in r] for r in rows]})
    else:
        write_csv(path, meta, header, rows)
    print(f"wrote {path}")
    return 0


def cmd_events(args):
    config = _load_config(args)
    cfg = config.physical()
    gen = dy.build_generator(co.assemble(cfg))
    traj = en.scan_trajectory(gen, config.initial(), config.horizon,
                              config.sample_step)
    ev = en.analyze_events(traj, horizon=config.horizon)
    report = {
        "death_times": list(ev.death_times),
        "birth_times": list(ev.birth_times),
        "revival_intervals": [list(p) for p in ev.revival_intervals],
        "max_c": ev.max_c,
        "max_c_time": ev.max_c_time,
        "truncated": ev.truncated,
        "horizon": ev.horizon,
    }
    path = _out_path(config, "events")
    meta = _metadata(config, {"refine_tol": 1e-6})
    if config.output_format == "csv":
        rows = ([["death", t] for t in ev.death_times]
                + [["birth", t] for t in ev.birth_times]
                + [["max_c", ev.max_c], ["max_c_time", ev.max_c_time],
                   ["truncated", ev.truncated]])
        write_csv(path, meta, ["event", "value"], rows)
    else:
        write_json(path, meta, report)
    print(json.dumps(report, indent=2))
    print(f"wrote {path}")
    return 0


def cmd_sweep(args):
    presets = sw.figure_presets()
    if args.preset:
        if args.preset not in presets:
            print(f"unknown preset {args.preset!r}; see 'presets'",
                  file=sys.stderr)
            return 1
        preset = presets[args.preset]
        specs = preset.specs
        name = args.preset
    else:
        if not args.spec:
            print("either --preset or --spec is required", file=sys.stderr)
            return 1
        with open(args.spec) as fh:
            raw = json.load(fh)
        specs = [_spec_from_dict(raw)]
        name = specs[0].label or "sweep"

    outdir = Path(args.output or os.environ.get(OUTDIR_ENV, "."))
    outdir.mkdir(parents=True, exist_ok=True)
    fmt = args.format or "csv"

    all_rows = []
    curve_rows = []
    failures = 0
    for spec in specs:
        result = sw.run_sweep(spec)
        for row in result.rows:
            failures += bool(row["error"])
        all_rows.extend(result.rows)
        for idx, curve in result.curves.items():
            base = result.rows[idx]
            free = curve.get("free_concurrence")
            for j, (t, c) in enumerate(zip(curve["times"],
                                           curve["concurrence"])):
                crow = [spec.label, base["axis_value"], t, c]
                if free is not None:
                    crow.append(free[j])
                curve_rows.append(crow)

    header = sorted({k for row in all_rows for k in row})
    meta = {"tool": "mirroratoms", "version": __version__, "preset": name,
            "horizon": specs[0].horizon, "sample_step": specs[0].sample_step}
    summary_path = outdir / f"{name}_summary.{fmt}"
    if fmt == "json":
        write_json(summary_path, meta, {"rows": all_rows})
    else:
        write_csv(summary_path, meta, header,
                  [[row.get(k, "") for k in header] for row in all_rows])
    print(f"wrote {summary_path}")
    if curve_rows:
        cheader = ["label", "axis_value", "gamma0_tau", "concurrence"]
        if any(len(r) == 5 for r in curve_rows):
            cheader.append("free_concurrence")
        curve_path = outdir / f"{name}_curves.{fmt}"
        if fmt == "json":
            write_json(curve_path, meta, {"columns": cheader,
                                          "rows": curve_rows})
        else:
            write_csv(curve_path, meta, cheader, curve_rows)
        print(f"wrote {curve_path}")
    return 2 if failures else 0


def _spec_from_dict(raw):
    known = {"label", "axis", "values", "initial_state", "horizon",
             "sample_step", "outputs", "include_free_space", "base"}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown sweep key(s): {', '.join(sorted(unknown))}")
    base_raw = raw.get("base", {})
    base_keys = {"a_over_omega", "omega_L", "y_over_L", "alignment",
                 "d1", "d2", "gamma0"}
    unknown = set(base_raw) - base_keys
    if unknown:
        raise ConfigError(f"unknown base key(s): {', '.join(sorted(unknown))}")
    base = co.PhysicalConfig.from_ratios(
        base_raw.get("a_over_omega", 0.5), base_raw.get("omega_L", 1.0),
        base_raw.get("y_over_L", 0.5), base_raw.get("alignment", "parallel"),
        d1=tuple(base_raw.get("d1", (1, 0, 0))),
        d2=tuple(base_raw.get("d2", (1, 0, 0))),
        gamma0=base_raw.get("gamma0", 1.0))
    return sw.SweepSpec(
        label=raw.get("label", "sweep"), base=base, axis=raw["axis"],
        values=tuple(raw["values"]),
        initial_state=raw.get("initial_state", "S"),
        horizon=raw.get("horizon", 40.0),
        sample_step=raw.get("sample_step", 1e-2),
        outputs=tuple(raw.get("outputs", ("maxc", "events"))),
        include_free_space=raw.get("include_free_space", False))


def _oracle_report(cfg, omega0=1.0, settings=None):
    """Compare closed-form spectral tensors against the quadrature oracle."""
    settings = settings or fc.QuadratureSettings()
    pref = co.spectral_prefactor(omega0, cfg.a)
    pairs = [(1, 1), (1, 2)] if cfg.alignment == "parallel" \
        else [(1, 1), (2, 2), (1, 2)]
    worst = 0.0
    worst_tag = ""
    checks = 0
    failures = []
    for part, sign in (("free", 1.0), ("boundary", -1.0)):
        for pair in pairs:
            tens = co.spectral_tensor(cfg, pair, part).entries
            for m in range(1, 4):
                for n in range(1, 4):
                    closed = sign * pref * tens[m - 1, n - 1]
                    if closed == 0.0 and (m, n) not in ((1, 1), (2, 2)):
                        continue
                    res = fc.fourier_oracle(part, m, n, pair, cfg, omega0,
                                            settings)
                    scale = max(abs(closed), 1e-5)
                    rel = abs(res.value - closed) / scale
                    checks += 1
                    if not res.converged:
                        failures.append(
                            f"{part} {pair} [{m}{n}]: {res.message}")
                    if rel > worst:
                        worst = rel
                        worst_tag = f"{part} {pair} [{m}{n}]"
    return (2 if failures or worst > 0.01 else 0,
            {"max_rel_error": worst, "worst_component": worst_tag,
             "checks": checks, "failures": failures})


def cmd_validate(args):
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    report_rows = []
    status = 0
    for i in range(args.samples):
        alignment = "parallel" if i % 2 == 0 else "vertical"
        cfg = co.PhysicalConfig.from_ratios(
            float(rng.uniform(0.1, 1.5)), float(rng.uniform(0.5, 2.0)),
            float(rng.uniform(0.1, 3.0)), alignment)
        st, rep = _oracle_report(cfg)
        status = max(status, st)
        worst = max(worst, rep["max_rel_error"])
        report_rows.append([i, alignment, cfg.a, cfg.L, cfg.y_over_L,
                            rep["max_rel_error"], rep["worst_component"],
                            "; ".join(rep["failures"])])
        print(f"config {i:2d} {alignment:8s} a={cfg.a:.3f} wL={cfg.L:.3f} "
              f"y/L={cfg.y_over_L:.3f}: max rel {rep['max_rel_error']:.3e}"
              + (f"  FAILED: {rep['failures']}" if rep["failures"] else ""))
    print(f"overall max relative error: {worst:.3e}")
    if args.output:
        write_csv(Path(args.output),
                  {"tool": "mirroratoms", "version": __version__,
                   "samples": args.samples, "seed": args.seed,
                   "epsilons": list(fc.QuadratureSettings().epsilons)},
                  ["index", "alignment", "a_over_omega", "omega_L",
                   "y_over_L", "max_rel_error", "worst_component",
                   "failures"],
                  report_rows)
    if status:
        print("oracle validation FAILED", file=sys.stderr)
    return status


def cmd_presets(args):
    presets = sw.figure_presets()
    for name in sorted(presets, key=lambda s: int(s.removeprefix("fig"))):
        p = presets[name]
        print(f"{name:7s} {p.description}  [{len(p.specs)} sweep(s)]")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mirroratoms",
        description="Entanglement dynamics of two accelerated atoms near "
                    "a reflecting boundary")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="print the six master-equation rates")
    _add_physics_flags(p)
    p.add_argument("--expansion", action="store_true",
                   help="also print the near-boundary expansion")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against the quadrature oracle")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("evolve", help="write a concurrence/state trajectory")
    _add_physics_flags(p)
    p.add_argument("--free-space-companion", action="store_true")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("events", help="extract death/birth/revival events")
    _add_physics_flags(p)
    p.set_defaults(func=cmd_events)

    p = sub.add_parser("sweep", help="run a parameter sweep or preset")
    p.add_argument("--preset", help="figure preset name (see 'presets')")
    p.add_argument("--spec", help="JSON sweep specification file")
    p.add_argument("--output", help="output directory")
    p.add_argument("--format", choices=("csv", "json"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate",
                       help="oracle cross-check of the closed forms")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=20180801)
    p.add_argument("--output", help="CSV report path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("presets", help="list figure presets")
    p.set_defaults(func=cmd_presets)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except (dy.DynamicsFrozenError, fc.OracleConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
