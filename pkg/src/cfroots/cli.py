"""Command-line front end.

Subcommands wire config ingestion, construction, verification, exploration,
sampling, and plot-data emission into reproducible runs: identical configs
and seeds give byte-identical outputs.

Exit codes: 0 success, 1 a requested check failed, 2 invalid input or config,
3 an internal tolerance could not be met.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import analyze, distribution, family
from .construct import Blueprint, build_blueprint
from .errors import (
    CfrootsError,
    InputError,
    KernelViolation,
    ToleranceUnreachable,
)
from .family import PhaseVector
from .reports import VerificationReport
from .support import SupportSpec, spec_from_dict, spec_to_dict

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_TOLERANCE = 3

OUTPUT_ENV_VAR = "CFROOTS_OUTPUT"

DEFAULT_TOLERANCES = {
    "power_identity": 1e-10,
    "hermitian": 1e-12,
    "pd_closed_form": 1e-9,
    "pd_quadrature": 1e-6,
    "phase_ratio": 1e-6,
    "mass": 1e-3,
}


@dataclass
class RunConfig:
    """Everything one run needs; JSON file fields, overridable by CLI flags."""

    spec: SupportSpec
    n: int = 2
    kernel: str = "triangle"
    grid_step: float = 1e-3
    grid_halfwidth: float | None = None
    t_domain: float = 50.0
    t_step: float = 0.05
    tolerances: dict = field(default_factory=dict)
    seed: int = 20250801
    output: Path = Path("out")
    format: str = "csv"
    cap: int = family.DEFAULT_ENUMERATION_CAP
    jobs: int = 1

    def __post_init__(self):
        if self.n < 2:
            raise InputError(f"n must be >= 2, got {self.n}")
        if self.grid_step <= 0:
            raise InputError("grid.step must be positive")
        if self.format not in ("csv", "json"):
            raise InputError(f"format must be csv or json, got {self.format!r}")
        if self.grid_halfwidth is None:
            self.grid_halfwidth = analyze.default_grid_halfwidth(self.spec)
        elif self.grid_halfwidth < self.spec.finite_extent + 1.0:
            raise InputError(
                "grid.halfwidth must cover the finite extent plus one unit "
                f"({self.spec.finite_extent + 1.0})"
            )
        tols = dict(DEFAULT_TOLERANCES)
        tols.update(self.tolerances)
        self.tolerances = tols

    def tol(self, name: str) -> float:
        return float(self.tolerances[name])


def load_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise InputError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})"
        ) from None
    if "spec" not in data:
        raise InputError(f"{path}: missing required key 'spec'")
    spec = spec_from_dict(data["spec"])
    grid = data.get("grid", {})
    output = data.get("output") or os.environ.get(OUTPUT_ENV_VAR) or "out"
    try:
        return RunConfig(
            spec=spec,
            n=int(data.get("n", 2)),
            kernel=data.get("kernel", "triangle"),
            grid_step=float(grid.get("step", 1e-3)),
            grid_halfwidth=(
                float(grid["halfwidth"]) if "halfwidth" in grid else None
            ),
            t_domain=float(data.get("t_domain", 50.0)),
            t_step=float(data.get("t_step", 0.05)),
            tolerances=dict(data.get("tolerances", {})),
            seed=int(data.get("seed", 20250801)),
            output=Path(output),
            format=data.get("format", "csv"),
            cap=int(data.get("cap", family.DEFAULT_ENUMERATION_CAP)),
            jobs=int(data.get("jobs", 1)),
        )
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: bad config value ({exc})") from None


# ---------------------------------------------------------------------------
# output helpers (all formatting is repr-based for byte stability)
# ---------------------------------------------------------------------------


def _fmt(v: float) -> str:
    return repr(float(v))


def write_curve_csv(path: Path, xs, values) -> None:
    values = np.asarray(values, dtype=complex)
    with open(path, "w") as fh:
        fh.write("x,re,im\n")
        for x, v in zip(xs, values):
            fh.write(f"{_fmt(x)},{_fmt(v.real)},{_fmt(v.imag)}\n")


def write_curve_json(path: Path, xs, values) -> None:
    values = np.asarray(values, dtype=complex)
    payload = {
        "x": [float(x) for x in xs],
        "re": [float(v.real) for v in values],
        "im": [float(v.imag) for v in values],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def write_curve(cfg: RunConfig, name: str, xs, values) -> Path:
    path = cfg.output / f"{name}.{cfg.format}"
    if cfg.format == "csv":
        write_curve_csv(path, xs, values)
    else:
        write_curve_json(path, xs, values)
    return path


def read_curve_csv(path) -> analyze.CfGrid:
    try:
        with open(path) as fh:
            header = fh.readline().strip()
            if header != "x,re,im":
                raise InputError(f"{path}: expected header 'x,re,im', got {header!r}")
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
    except OSError as exc:
        raise InputError(f"cannot read curve file {path}: {exc}") from None
    except ValueError as exc:
        raise InputError(f"{path}: malformed CSV ({exc})") from None
    if data.shape[1] != 3:
        raise InputError(f"{path}: expected 3 columns, got {data.shape[1]}")
    return analyze.CfGrid(data[:, 0], data[:, 1] + 1j * data[:, 2])


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _parse_omega(text: str, n: int, k: int) -> PhaseVector:
    text = text.strip()
    entries = tuple(int(p) for p in text.split(",")) if text else ()
    if len(entries) != k:
        raise InputError(f"omega needs {k} entries, got {len(entries)}")
    return PhaseVector(entries, n)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_validate(cfg: RunConfig, args) -> int:
    spec = cfg.spec
    print(f"comp={spec.comp} rho={spec.rho():g}")
    return EXIT_OK


def cmd_build(cfg: RunConfig, args) -> int:
    bp = build_blueprint(cfg.spec, cfg.kernel)
    cfg.output.mkdir(parents=True, exist_ok=True)
    path = cfg.output / "blueprint.json"
    bp.to_json(path)
    print(
        f"blueprint: comp={cfg.spec.comp} rho={bp.plan.rho:g} "
        f"normalizer={bp.normalizer:g} -> {path}"
    )
    return EXIT_OK


def cmd_family(cfg: RunConfig, args) -> int:
    bp = build_blueprint(cfg.spec, cfg.kernel)
    manifest = family.build_manifest(bp, cfg.n, cap=cfg.cap)
    cfg.output.mkdir(parents=True, exist_ok=True)
    path = cfg.output / "family_manifest.json"
    manifest.to_json(path)
    print(f"family: n={cfg.n} k={manifest.k} members={manifest.count} -> {path}")
    if args.curves:
        xs = analyze.symmetric_abscissas(cfg.grid_halfwidth, cfg.grid_step)
        write_curve(cfg, "member_base", xs, bp.cf(xs))
        for pv in manifest.members:
            write_curve(cfg, f"member_{'_'.join(map(str, pv.entries))}", xs,
                        bp.member(xs, pv))
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    bp = build_blueprint(cfg.spec, cfg.kernel)
    results = analyze.verify_family(
        bp,
        cfg.n,
        jobs=cfg.jobs,
        cap=cfg.cap,
        x_step=cfg.grid_step,
        t_domain=cfg.t_domain,
        t_step=cfg.t_step,
        power_tol=cfg.tol("power_identity"),
        hermitian_tol=cfg.tol("hermitian"),
    )
    cfg.output.mkdir(parents=True, exist_ok=True)
    payload = {
        "n": cfg.n,
        "k": cfg.spec.k,
        "passed": all(rep.passed for _, rep in results),
        "members": [
            {"omega": list(pv.entries), **rep.to_dict()} for pv, rep in results
        ],
    }
    path = cfg.output / "verification_report.json"
    _write_json(path, payload)
    for pv, rep in results:
        status = "pass" if rep.passed else "FAIL"
        print(f"member {pv.label()}: {status}")
    print(f"report -> {path}")
    return EXIT_OK if payload["passed"] else EXIT_CHECK_FAILED


def cmd_phase(cfg: RunConfig, args) -> int:
    f = read_curve_csv(args.f)
    g = read_curve_csv(args.g)
    profile = analyze.phase_profile(
        f, g, cfg.spec, ratio_tol=cfg.tol("phase_ratio")
    )
    cfg.output.mkdir(parents=True, exist_ok=True)
    path = cfg.output / "phase_profile.json"
    _write_json(path, profile.to_dict())
    roots = profile.root_indices(cfg.n)
    print(f"phase profile: root indices {list(roots)} -> {path}")
    return EXIT_OK


def cmd_explore(cfg: RunConfig, args) -> int:
    bp = build_blueprint(cfg.spec, cfg.kernel)
    if cfg.spec.has_infinite:
        raise InputError("explore needs a compact support (quadrature filter)")
    grid = analyze.sample_member(bp, None, cfg.grid_halfwidth, cfg.grid_step)
    results = analyze.explore_cn(
        grid,
        cfg.spec,
        cfg.n,
        t_domain=cfg.t_domain,
        t_step=cfg.t_step,
        pd_tol=cfg.tol("pd_quadrature"),
        cap=cfg.cap,
    )
    cfg.output.mkdir(parents=True, exist_ok=True)
    payload = {
        "n": cfg.n,
        "k": cfg.spec.k,
        "upper_bound": analyze.cn_upper_bound(cfg.spec, cfg.n),
        "passing": sum(1 for r in results if r.pd_pass),
        "candidates": [r.to_dict() for r in results],
    }
    path = cfg.output / "explore_results.json"
    _write_json(path, payload)
    print(
        f"explore: {payload['passing']} of {len(results)} candidates pass "
        f"(bound {payload['upper_bound']}) -> {path}"
    )
    return EXIT_OK


def cmd_density(cfg: RunConfig, args) -> int:
    bp = build_blueprint(cfg.spec, cfg.kernel)
    phases = _parse_omega(args.omega, cfg.n, cfg.spec.k)
    view = distribution.DensityView(bp, phases)
    ts = analyze.symmetric_abscissas(args.t_halfwidth, args.t_step)
    dens = view.density(ts)
    cfg.output.mkdir(parents=True, exist_ok=True)
    path = cfg.output / f"density.{cfg.format}"
    if cfg.format == "csv":
        with open(path, "w") as fh:
            fh.write("t,value\n")
            for t, d in zip(ts, dens):
                fh.write(f"{_fmt(t)},{_fmt(d)}\n")
    else:
        _write_json(path, {"t": [float(t) for t in ts], "value": list(map(float, dens))})
    mass = view.total_mass(cfg.tol("mass"))
    print(
        f"density: omega={args.omega or '()'} window mass {mass.window_mass:.6f} "
        f"(tail bound {mass.tail_bound:.2e}) -> {path}"
    )
    return EXIT_OK


def cmd_sample(cfg: RunConfig, args) -> int:
    bp = build_blueprint(cfg.spec, cfg.kernel)
    phases = _parse_omega(args.omega, cfg.n, cfg.spec.k)
    view = distribution.DensityView(bp, phases)
    batch = view.sample(args.count, cfg.seed)
    cfg.output.mkdir(parents=True, exist_ok=True)
    path = cfg.output / "samples.csv"
    with open(path, "w") as fh:
        fh.write(f"# seed={batch.seed} count={batch.count} "
                 f"omega={list(batch.omega or [])} n={batch.n}\n")
        fh.write("draw\n")
        for d in batch.draws:
            fh.write(f"{_fmt(d)}\n")
    print(f"samples: {batch.count} draws (seed {batch.seed}) -> {path}")
    return EXIT_OK


def cmd_classic(cfg: RunConfig, args) -> int:
    cfg.output.mkdir(parents=True, exist_ok=True)
    xs = analyze.symmetric_abscissas(2.0, cfg.grid_step)
    fv, gv = analyze.classic_pair(xs)
    path = cfg.output / "classic_pair.csv"
    with open(path, "w") as fh:
        fh.write("x,f,g\n")
        for x, a, b in zip(xs, fv, gv):
            fh.write(f"{_fmt(x)},{_fmt(a)},{_fmt(b)}\n")
    for which in ("f", "g"):
        atoms = analyze.classic_atoms(which, args.atoms)
        apath = cfg.output / f"classic_atoms_{which}.csv"
        with open(apath, "w") as fh:
            fh.write("location,weight\n")
            for loc, w in atoms:
                fh.write(f"{_fmt(loc)},{_fmt(w)}\n")
    print(f"classic pair and atom tables -> {cfg.output}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfroots",
        description=(
            "Construct characteristic functions with a prescribed support and "
            "work with the family sharing their n-th power."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="JSON config file")
        p.add_argument("--n", type=int, help="override the config's n")
        p.add_argument("--seed", type=int, help="override the config's seed")
        p.add_argument("--output", help="override the output directory")
        p.add_argument("--grid-step", type=float, dest="grid_step")
        p.add_argument("--grid-halfwidth", type=float, dest="grid_halfwidth")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--jobs", type=int, help="parallel member verification")
        p.add_argument("--cap", type=int, help="enumeration cap override")
        return p

    add("validate", "validate the support spec and print comp and rho")
    add("build", "resolve and export the blueprint")
    fam = add("family", "enumerate the n**k members and export the manifest")
    fam.add_argument("--curves", action="store_true",
                     help="also export one curve file per member")
    add("verify", "run the full check battery over the family")
    ph = add("phase", "extract per-component phases from two curve files")
    ph.add_argument("--f", required=True, help="base curve CSV")
    ph.add_argument("--g", required=True, help="candidate curve CSV")
    add("explore", "build all root-twist candidates and filter by positivity")
    dens = add("density", "export the density curve of one member")
    dens.add_argument("--omega", default="", help="comma-separated phase indices")
    dens.add_argument("--t-halfwidth", type=float, default=40.0, dest="t_halfwidth")
    dens.add_argument("--t-step", type=float, default=0.01, dest="t_step")
    samp = add("sample", "draw reproducible samples from one member")
    samp.add_argument("--omega", default="", help="comma-separated phase indices")
    samp.add_argument("--count", type=int, default=10_000)
    cl = add("classic", "export the periodic even-n example pair and atoms")
    cl.add_argument("--atoms", type=int, default=1000,
                    help="spectrum truncation order")
    return parser


COMMANDS = {
    "validate": cmd_validate,
    "build": cmd_build,
    "family": cmd_family,
    "verify": cmd_verify,
    "phase": cmd_phase,
    "explore": cmd_explore,
    "density": cmd_density,
    "sample": cmd_sample,
    "classic": cmd_classic,
}


def apply_overrides(cfg: RunConfig, args) -> RunConfig:
    if args.n is not None:
        cfg.n = args.n
        if cfg.n < 2:
            raise InputError(f"n must be >= 2, got {cfg.n}")
    if args.seed is not None:
        cfg.seed = args.seed
    if args.output is not None:
        cfg.output = Path(args.output)
    if args.grid_step is not None:
        cfg.grid_step = args.grid_step
    if args.grid_halfwidth is not None:
        cfg.grid_halfwidth = args.grid_halfwidth
    if args.format is not None:
        cfg.format = args.format
    if args.jobs is not None:
        cfg.jobs = args.jobs
    if args.cap is not None:
        cfg.cap = args.cap
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = apply_overrides(load_config(args.config), args)
        return COMMANDS[args.command](cfg, args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ToleranceUnreachable, KernelViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except CfrootsError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
