"""Command-line front end.

One JSON config document drives every subcommand; artifacts are written
atomically with deterministic field order and shortest round-trip float
formatting, so identical configs give byte-identical outputs.

Exit codes: 0 success, 1 config/parse error, 2 tolerance failure,
3 physics precondition violation.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import evolution, linear, susy
from . import oracle as oracle_mod
from .errors import (
    BrokenSusyError,
    ConfigError,
    MajoranaSolverError,
    PotentialSyntaxError,
)
from .model import (
    CouplingSet,
    CustomPotential,
    GridFunction,
    GridSpec,
    LinearPotential,
    PhysicalParams,
    PoschlTellerPotential,
    RosenMorsePotential,
    ScalarPotential,
    ScarfPotential,
    majorana_compatible,
    superpotential,
    zero_potential,
)
from .oracle import Sector

DEFAULT_TOL = 1e-3

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_TOLERANCE = 2
EXIT_PHYSICS = 3


# ---------------------------------------------------------------- config


def _need(section: dict, key: str, where: str):
    if key not in section:
        raise ConfigError(f"missing {key!r} in {where}")
    return section[key]


def build_potential(section) -> ScalarPotential:
    if not isinstance(section, dict):
        raise ConfigError("'potential' must be an object with a 'kind'")
    kind = _need(section, "kind", "potential")
    try:
        if kind == "linear":
            return LinearPotential(float(_need(section, "k", "potential")))
        if kind == "poschl_teller":
            return PoschlTellerPotential(
                float(_need(section, "depth", "potential")),
                float(section.get("width", 1.0)),
            )
        if kind == "rosen_morse":
            return RosenMorsePotential(
                float(_need(section, "a", "potential")),
                float(_need(section, "b", "potential")),
                float(section.get("alpha", 1.0)),
            )
        if kind == "scarf":
            return ScarfPotential(
                float(_need(section, "a", "potential")),
                float(_need(section, "b", "potential")),
                float(section.get("alpha", 1.0)),
            )
        if kind == "custom":
            return CustomPotential(
                str(_need(section, "expression", "potential")),
                {k: float(v) for k, v in section.get("parameters", {}).items()},
            )
    except (TypeError, ValueError) as err:
        if isinstance(err, PotentialSyntaxError):
            raise
        raise ConfigError(f"bad potential parameters: {err}") from err
    raise ConfigError(f"unknown potential kind {kind!r}")


def build_params(section) -> PhysicalParams:
    section = section or {}
    try:
        return PhysicalParams(
            mass=float(section.get("mass", 1.0)),
            c=float(section.get("c", 1.0)),
            hbar=float(section.get("hbar", 1.0)),
        )
    except (TypeError, ValueError) as err:
        raise ConfigError(f"bad physical parameters: {err}") from err


def build_grid(section) -> GridSpec:
    if not isinstance(section, dict):
        raise ConfigError("config needs a 'grid' object")
    try:
        return GridSpec(
            float(_need(section, "x_min", "grid")),
            float(_need(section, "x_max", "grid")),
            int(_need(section, "n_points", "grid")),
        )
    except (TypeError, ValueError) as err:
        raise ConfigError(f"bad grid: {err}") from err


@dataclass
class RunConfig:
    potential: ScalarPotential
    params: PhysicalParams
    grid: GridSpec
    tol: float
    raw: dict


def load_config(path: str) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"cannot read config {path!r}: {err}") from err
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(f"config is not valid JSON: {err}") from err
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    tol = float(raw.get("tol", DEFAULT_TOL))
    if tol <= 0:
        raise ConfigError("'tol' must be positive")
    return RunConfig(
        potential=build_potential(_need(raw, "potential", "config")),
        params=build_params(raw.get("physical")),
        grid=build_grid(_need(raw, "grid", "config")),
        tol=tol,
        raw=raw,
    )


# ------------------------------------------------------------- artifacts


def _jsonable(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def write_text_atomic(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def write_json(path: Path, payload: dict):
    write_text_atomic(path, json.dumps(_jsonable(payload), indent=2) + "\n")


def write_density_csv(path: Path, grid: GridSpec, rows):
    """rows: iterable of (t, density ndarray), already sorted by t."""
    x = grid.points()
    lines = ["t,x,rho"]
    for t, rho in rows:
        tf = repr(float(t))
        for xi, ri in zip(x, rho):
            lines.append(f"{tf},{float(xi)!r},{float(ri)!r}")
    write_text_atomic(path, "\n".join(lines) + "\n")


def _describe_common(cfg: RunConfig) -> dict:
    return {
        "potential": cfg.potential.describe(),
        "params": {
            "mass": cfg.params.mass,
            "c": cfg.params.c,
            "hbar": cfg.params.hbar,
        },
        "grid": {
            "x_min": cfg.grid.x_min,
            "x_max": cfg.grid.x_max,
            "n_points": cfg.grid.n_points,
        },
    }


def _sup_norm(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)))


def _l2_norm(grid: GridSpec, values: np.ndarray) -> float:
    squared = values**2
    return math.sqrt(
        max(grid.h * (squared.sum() - 0.5 * (squared[0] + squared[-1])), 0.0)
    )


# -------------------------------------------------------------- families


def derive_family(cfg: RunConfig) -> susy.ShapeInvariantFamily:
    """Built-in shape-invariant family matching the configured potential,
    mirrored onto the zero-mode-hosting sector when needed."""
    pot = cfg.potential
    if isinstance(pot, LinearPotential) and pot.k != 0:
        return susy.linear_family(abs(pot.k), cfg.params)
    if isinstance(pot, PoschlTellerPotential) and cfg.params.mass == 0 and pot.depth != 0:
        return susy.poschl_teller_family(abs(pot.depth), pot.width, cfg.params)
    raise ConfigError(
        f"no built-in shape-invariant family for potential kind {pot.kind!r} "
        "with these physical parameters; set spectrum.algebraic to false"
    )


# -------------------------------------------------------------- commands


def cmd_spectrum(cfg: RunConfig, out_dir: Path) -> int:
    section = cfg.raw.get("spectrum")
    if not isinstance(section, dict):
        raise ConfigError("config needs a 'spectrum' object with 'n_max'")
    n_max = int(_need(section, "n_max", "spectrum"))
    if n_max < 0:
        raise ConfigError("spectrum.n_max must be non-negative")
    algebraic = bool(section.get("algebraic", True))

    classification = susy.zero_mode(cfg.params, cfg.potential, cfg.grid)
    invariance = None
    energies_algebraic = None
    if algebraic:
        if not classification.unbroken:
            print(
                "spectrum: SUSY is broken for this configuration (no normalizable "
                "zero mode); the algebraic shape-invariance spectrum does not exist. "
                "Set spectrum.algebraic to false for an oracle-only run.",
                file=sys.stderr,
            )
            return EXIT_PHYSICS
        family = derive_family(cfg)
        result = susy.check_shape_invariance(family, cfg.params, cfg.grid)
        invariance = {
            "family": family.label,
            "r_declared": family.remainder(family.a1),
            "r_measured": result.r_measured,
            "spread": result.spread,
            "is_invariant": result.is_invariant,
        }
        if not result.is_invariant:
            print(
                f"spectrum: shape-invariance check failed (spread {result.spread:.3e})",
                file=sys.stderr,
            )
            return EXIT_TOLERANCE
        energies_algebraic = susy.algebraic_spectrum(family, n_max)

    pair = susy.partner_potentials(cfg.params, cfg.potential, cfg.grid)
    sector = classification.sector or Sector.MINUS
    v = pair.v_minus if sector is Sector.MINUS else pair.v_plus
    op = oracle_mod.discretize(cfg.params, v, sector)
    pairs = oracle_mod.eigensolve(op, n_max + 1)
    energies_oracle = [
        oracle_mod.energy_from_lambda(ep.energy_squared, cfg.tol) for ep in pairs
    ]

    levels = []
    worst = 0.0
    for n in range(n_max + 1):
        e_alg = float(energies_algebraic[n]) if energies_algebraic is not None else None
        e_orc = energies_oracle[n]
        diff = abs(e_alg - e_orc) if e_alg is not None else None
        if diff is not None:
            worst = max(worst, diff)
        levels.append(
            {
                "n": n,
                "energy_algebraic": e_alg,
                "energy_oracle": e_orc,
                "abs_diff": diff,
            }
        )

    payload = _describe_common(cfg)
    payload.update(
        {
            "sector": sector.value,
            "tolerance": cfg.tol,
            "shape_invariance": invariance,
            "levels": levels,
        }
    )
    write_json(out_dir / "spectrum.json", payload)
    if energies_algebraic is not None and worst > cfg.tol:
        print(
            f"spectrum: algebraic/oracle mismatch {worst:.3e} exceeds tol {cfg.tol:.1e}",
            file=sys.stderr,
        )
        return EXIT_TOLERANCE
    return EXIT_OK


def _frame_steps(n_steps: int, stride: int) -> list[int]:
    steps = list(range(0, n_steps + 1, stride))
    if steps[-1] != n_steps:
        steps.append(n_steps)
    return steps


def cmd_evolve(cfg: RunConfig, out_dir: Path, use_pde: bool) -> int:
    section = cfg.raw.get("evolve")
    if not isinstance(section, dict):
        raise ConfigError("config needs an 'evolve' object with 'n'")
    if not isinstance(cfg.potential, LinearPotential) or cfg.potential.k == 0:
        raise ConfigError(
            "evolve uses the closed-form linear-potential states; "
            "configure a linear potential with k != 0"
        )
    n = int(_need(section, "n", "evolve"))
    if n < 0:
        raise ConfigError("evolve.n must be non-negative")
    delta = float(section.get("delta", math.pi / 2.0))
    stride = int(section.get("stride", evolution.DEFAULT_STRIDE))
    if stride < 1:
        raise ConfigError("evolve.stride must be at least 1")

    model = linear.LinearModel(cfg.potential.k, cfg.params)
    period = evolution.density_period(model, n) if n >= 1 else None
    t_final = section.get("t_final")
    if t_final is None:
        periods = float(section.get("periods", 1.0))
        if period is None:
            t_final = 5.0
            print(
                "evolve: the ground state is stationary and has no period; "
                f"falling back to t_final={t_final}",
                file=sys.stderr,
            )
        else:
            t_final = periods * period
    t_final = float(t_final)
    if t_final <= 0:
        raise ConfigError("evolve horizon must be positive")
    dt = section.get("dt")
    if dt is None:
        if period is not None:
            dt = period / 2000.0
        else:
            w_max = float(
                np.max(np.abs(superpotential(cfg.params, cfg.potential, cfg.grid.points())))
            )
            dt = evolution.default_time_step(cfg.params, cfg.grid, w_max)
    dt = float(dt)
    if dt <= 0:
        raise ConfigError("evolve.dt must be positive")
    n_steps = max(1, round(t_final / dt))
    dt = t_final / n_steps

    y = model.y_of_x(cfg.grid.points())

    def analytic_components(t: float):
        return linear.spinor(model, n, t, y, delta)

    frames = _frame_steps(n_steps, stride)
    rows = []
    for step in frames:
        psi1, psi2 = analytic_components(step * dt)
        rows.append((step * dt, psi1**2 + psi2**2))
    write_density_csv(out_dir / "density.csv", cfg.grid, rows)

    summary = _describe_common(cfg)
    summary.update(
        {
            "n": n,
            "delta": delta,
            "period": period,
            "t_final": t_final,
            "dt": dt,
            "steps": n_steps,
            "stride": stride,
            "pde": bool(use_pde),
        }
    )

    status = EXIT_OK
    if use_pde:
        psi1_0, psi2_0 = analytic_components(0.0)
        initial = evolution.MajoranaSpinorState(
            GridFunction(cfg.grid, psi1_0), GridFunction(cfg.grid, psi2_0)
        )
        trace, final = evolution.evolve_pde(
            initial, cfg.params, cfg.potential, t_final, dt=dt, stride=stride
        )
        write_density_csv(
            out_dir / "density_pde.csv",
            cfg.grid,
            [(t, d.values) for t, d in zip(trace.times, trace.densities)],
        )
        ref1, ref2 = analytic_components(final.t)
        max_err = max(_sup_norm(final.psi1.values, ref1), _sup_norm(final.psi2.values, ref2))
        summary.update(
            {"max_component_error": max_err, "norm_drift": trace.norm_drift}
        )
        if max_err > cfg.tol:
            status = EXIT_TOLERANCE
            print(
                f"evolve: PDE/analytic mismatch {max_err:.3e} exceeds tol {cfg.tol:.1e}",
                file=sys.stderr,
            )
    write_json(out_dir / "evolve_summary.json", summary)
    return status


def _coupling_from(section: dict, key: str) -> ScalarPotential:
    entry = section.get(key)
    if entry is None:
        return zero_potential()
    return build_potential(entry)


def _audit_couplings(cfg: RunConfig) -> CouplingSet:
    section = cfg.raw.get("audit")
    if isinstance(section, dict):
        f2 = section.get("f2")
        return CouplingSet(
            f1=_coupling_from(section, "f1"),
            f2=build_potential(f2) if f2 is not None else cfg.potential,
            f3=_coupling_from(section, "f3"),
            f4=_coupling_from(section, "f4"),
        )
    return CouplingSet(zero_potential(), cfg.potential, zero_potential(), zero_potential())


def cmd_audit(cfg: RunConfig, out_dir: Path, tol_override: float | None) -> int:
    audit_tol = (
        tol_override
        if tol_override is not None
        else float(cfg.raw.get("audit_tol", 1e-9))
    )
    report = majorana_compatible(_audit_couplings(cfg), cfg.grid, audit_tol)
    payload = _describe_common(cfg)
    payload.update(
        {
            "tolerance": audit_tol,
            "compatible": report.compatible,
            "offending": [
                {"coupling": name, "max_abs": value} for name, value in report.offending
            ],
            "max_abs": report.max_abs,
        }
    )
    write_json(out_dir / "audit.json", payload)
    if not report.compatible:
        names = ", ".join(name for name, _ in report.offending)
        print(
            f"audit: couplings [{names}] violate the reality constraint "
            "(a Majorana fermion admits only a scalar potential)",
            file=sys.stderr,
        )
        return EXIT_PHYSICS
    return EXIT_OK


def cmd_classify(cfg: RunConfig, out_dir: Path) -> int:
    cls = susy.zero_mode(cfg.params, cfg.potential, cfg.grid)
    payload = _describe_common(cfg)
    payload.update(
        {
            "status": cls.status,
            "sector": cls.sector.value if cls.sector else None,
            "boundary_amplitude": {
                "minus": cls.boundary_minus,
                "plus": cls.boundary_plus,
            },
            "boundary_tol": susy.BOUNDARY_TOL,
        }
    )
    write_json(out_dir / "classify.json", payload)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out_dir: Path) -> int:
    section = cfg.raw.get("verify") if isinstance(cfg.raw.get("verify"), dict) else {}
    n_max = int(section.get("n_max", 8))
    ladder_levels = int(section.get("ladder_levels", 5))
    run_pde = bool(section.get("pde", True))
    checks: list[dict] = []

    def record(name: str, residual: float, tol: float, passed=None):
        checks.append(
            {
                "name": name,
                "residual": float(residual),
                "tol": float(tol),
                "passed": bool(residual <= tol) if passed is None else bool(passed),
            }
        )

    audit = majorana_compatible(_audit_couplings(cfg), cfg.grid, 1e-9)
    worst_coupling = max((v for k, v in audit.max_abs.items() if k != "f2"), default=0.0)
    record("coupling_reality_audit", worst_coupling, 1e-9, passed=audit.compatible)

    cls = susy.zero_mode(cfg.params, cfg.potential, cfg.grid)
    record("unbroken_susy", 0.0 if cls.unbroken else 1.0, 0.5, passed=cls.unbroken)

    if cls.unbroken:
        annihilate = susy.apply_a if cls.sector is Sector.MINUS else susy.apply_a_dagger
        residual = _l2_norm(
            cfg.grid, annihilate(cfg.params, cfg.potential, cls.zero_mode).values
        )
        record("zero_mode_annihilation", residual, 1e-4)

    family = None
    try:
        family = derive_family(cfg)
    except ConfigError:
        pass

    if family is not None and cls.unbroken:
        inv = susy.check_shape_invariance(family, cfg.params, cfg.grid)
        record("shape_invariance_spread", inv.spread, 1e-8)
        record(
            "shape_invariance_remainder",
            abs(inv.r_measured - family.remainder(family.a1)),
            1e-10,
        )
        energies = susy.algebraic_spectrum(family, n_max)
        pair = susy.partner_potentials(cfg.params, cfg.potential, cfg.grid)
        sector = cls.sector or Sector.MINUS
        host_v, partner_v = (
            (pair.v_minus, pair.v_plus)
            if sector is Sector.MINUS
            else (pair.v_plus, pair.v_minus)
        )
        partner_sector = Sector.PLUS if sector is Sector.MINUS else Sector.MINUS
        host = oracle_mod.eigensolve(
            oracle_mod.discretize(cfg.params, host_v, sector), n_max + 1
        )
        worst_energy = max(
            abs(energies[n] ** 2 - host[n].energy_squared) for n in range(n_max + 1)
        )
        record("algebraic_vs_oracle_energy_sq", worst_energy, cfg.tol)

        partner = oracle_mod.eigensolve(
            oracle_mod.discretize(cfg.params, partner_v, partner_sector), max(n_max, 1)
        )
        # interlacing: partner level n pairs with host level n+1
        iso = oracle_mod.verify_isospectral(host, partner, 5e-3, cfg.tol)
        record("partner_isospectrality", iso.max_diff, iso.tol, passed=iso.passed)

    is_linear = isinstance(cfg.potential, LinearPotential) and cfg.potential.k != 0
    if is_linear and cls.unbroken:
        model = linear.LinearModel(cfg.potential.k, cfg.params)
        y = model.y_of_x(cfg.grid.points())
        if model.k > 0:
            record(
                "zero_mode_matches_gaussian",
                _sup_norm(cls.zero_mode.values, linear.eigenstate_minus(model, 0, y)),
                1e-6,
            )
            worst_ladder = 0.0
            for level in range(1, ladder_levels + 1):
                minus_n = GridFunction(cfg.grid, linear.eigenstate_minus(model, level, y))
                target = linear.energy(model, level) * linear.eigenstate_plus(
                    model, level, y
                )
                image = susy.apply_a(cfg.params, cfg.potential, minus_n).values
                if float(np.dot(image, target)) < 0:
                    target = -target
                worst_ladder = max(worst_ladder, _l2_norm(cfg.grid, image - target))
            record("ladder_mapping_residual", worst_ladder, 1e-3)

        if run_pde:
            period = evolution.density_period(model, 1)
            psi1, psi2 = linear.spinor(model, 1, 0.0, y, math.pi / 2.0)
            initial = evolution.MajoranaSpinorState(
                GridFunction(cfg.grid, psi1), GridFunction(cfg.grid, psi2)
            )
            trace, final = evolution.evolve_pde(
                initial, cfg.params, cfg.potential, period, dt=period / 2000.0
            )
            ref1, ref2 = linear.spinor(model, 1, final.t, y, math.pi / 2.0)
            err = max(
                _sup_norm(final.psi1.values, ref1), _sup_norm(final.psi2.values, ref2)
            )
            record("pde_one_period_return", err, 1e-3)
            record("pde_norm_drift", trace.norm_drift, 1e-6)

    payload = _describe_common(cfg)
    passed = all(entry["passed"] for entry in checks)
    payload.update({"tolerance": cfg.tol, "checks": checks, "passed": passed})
    write_json(out_dir / "verify.json", payload)
    if not passed:
        failed = ", ".join(e["name"] for e in checks if not e["passed"])
        print(f"verify: failed checks: {failed}", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


# ------------------------------------------------------------------ main


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep usage errors in the config-error exit class
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="majorana1d",
        description="Majorana fermion dynamics in 1+1 dimensions under "
        "static scalar potentials",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("spectrum", "algebraic + finite-difference spectra with deltas"),
        ("evolve", "density traces of the linear-potential states"),
        ("verify", "run the invariant suite and report residuals"),
        ("classify", "zero-mode SUSY classification"),
        ("audit", "reality audit of an external coupling set"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to the JSON run config")
        p.add_argument("--out", default="out", help="output directory (default: out)")
        p.add_argument("--tol", type=float, default=None, help="tolerance override")
        if name == "evolve":
            p.add_argument(
                "--pde",
                action="store_true",
                help="also integrate the first-order system and compare",
            )
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    out_dir = Path(args.out)
    try:
        cfg = load_config(args.config)
        if args.tol is not None:
            if args.tol <= 0:
                raise ConfigError("--tol must be positive")
            cfg.tol = args.tol
        if args.command == "spectrum":
            return cmd_spectrum(cfg, out_dir)
        if args.command == "evolve":
            return cmd_evolve(cfg, out_dir, args.pde)
        if args.command == "verify":
            return cmd_verify(cfg, out_dir)
        if args.command == "classify":
            return cmd_classify(cfg, out_dir)
        return cmd_audit(cfg, out_dir, args.tol)
    except (ConfigError, PotentialSyntaxError) as err:
        print(f"majorana1d: config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except BrokenSusyError as err:
        print(f"majorana1d: {err}", file=sys.stderr)
        return EXIT_PHYSICS
    except MajoranaSolverError as err:
        print(f"majorana1d: {err}", file=sys.stderr)
        return EXIT_TOLERANCE


if __name__ == "__main__":
    raise SystemExit(main())
