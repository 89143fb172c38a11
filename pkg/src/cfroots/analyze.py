"""Verification suite for sampled characteristic functions.

Covers the structural checks (Hermitian symmetry, support pattern, n-th power
identity, positive definiteness via closed form or numerical quadrature), the
per-component phase extraction that identifies when two functions share an
n-th power, the n**k upper-bound explorer, and the classic even-n pair of
periodic triangle waves with identical modulus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .construct import Blueprint
from .errors import (
    AsymmetricGrid,
    GridMismatch,
    InputError,
    ModulusMismatch,
    NonConstantRatio,
    PhaseOutOfRange,
    ResolutionTooCoarse,
    UnboundedSupport,
)
from .family import (
    DEFAULT_ENUMERATION_CAP,
    PhaseVector,
    phase_vectors,
)
from .fourier import inverse_transform_callable, inverse_transform_grid, split_segments
from .reports import CheckReport, VerificationReport
from .support import SupportSpec

TWO_PI = 2.0 * math.pi

GAP_RESOLUTION_FACTOR = 8  # grid must resolve the narrowest gap this finely


# ---------------------------------------------------------------------------
# sampled curves
# ---------------------------------------------------------------------------


def symmetric_abscissas(halfwidth: float, step: float) -> np.ndarray:
    """Uniform grid over [-halfwidth, halfwidth], symmetric about an exact 0."""
    if step <= 0 or halfwidth <= 0:
        raise InputError("halfwidth and step must be positive")
    m = int(round(halfwidth / step))
    pos = np.arange(1, m + 1) * step
    return np.concatenate([-pos[::-1], [0.0], pos])


@dataclass(frozen=True, eq=False)
class CfGrid:
    """A sampled complex curve on ascending abscissas."""

    x: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if x.ndim != 1 or v.shape != x.shape:
            raise GridMismatch("abscissas and values must be 1-d and equal length")
        if np.any(np.diff(x) <= 0):
            raise GridMismatch("abscissas must be strictly increasing")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", v)

    @property
    def step(self) -> float:
        return float(np.max(np.diff(self.x)))

    @property
    def is_symmetric(self) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.x))))
        return bool(np.max(np.abs(self.x + self.x[::-1])) <= 1e-12 * scale)

    def value_near(self, x0: float) -> complex:
        idx = int(np.argmin(np.abs(self.x - x0)))
        return complex(self.values[idx])


def sample_cf(fn: Callable, halfwidth: float, step: float) -> CfGrid:
    """Sample a callable on a symmetric uniform grid."""
    xs = symmetric_abscissas(halfwidth, step)
    return CfGrid(xs, np.asarray(fn(xs), dtype=complex))


def sample_member(
    bp: Blueprint, phases: PhaseVector | None, halfwidth: float, step: float
) -> CfGrid:
    if phases is None:
        return sample_cf(bp.cf, halfwidth, step)
    return sample_cf(lambda xs: bp.member(xs, phases), halfwidth, step)


def default_grid_halfwidth(spec: SupportSpec) -> float:
    """Covers the finite extent plus one unit; half-infinite supports get a
    few kernel widths past their last finite landmark."""
    extra = 6.0 * spec.rho() if spec.has_infinite else 0.0
    return spec.finite_extent + extra + 1.0


# ---------------------------------------------------------------------------
# structural checks
# ---------------------------------------------------------------------------


def check_hermitian(grid: CfGrid, tol: float = 1e-12) -> CheckReport:
    """value(-x) == conj(value(x)) on a symmetric grid."""
    if not grid.is_symmetric:
        raise AsymmetricGrid("hermitian check needs a grid symmetric about 0")
    dev = float(np.max(np.abs(grid.values[::-1] - np.conj(grid.values))))
    return CheckReport("hermitian", dev <= tol, {"max_dev": dev}, tol)


def check_power_identity(
    f: CfGrid, g: CfGrid, n: int, tol: float = 1e-10
) -> CheckReport:
    """max |g(x)**n - f(x)**n| <= tol on shared abscissas."""
    if not np.array_equal(f.x, g.x):
        raise GridMismatch("power-identity check needs identical abscissas")
    dev = float(np.max(np.abs(g.values**n - f.values**n)))
    return CheckReport("power_identity", dev <= tol, {"max_dev": dev, "n": n}, tol)


def check_support(
    grid: CfGrid, spec: SupportSpec, zero_tol: float | None = None
) -> CheckReport:
    """|value| above zero_tol strictly inside every component and below it at
    gap midpoints; requires the grid to resolve the narrowest gap."""
    scale = float(np.max(np.abs(grid.values)))
    if zero_tol is None:
        zero_tol = 1e-9 * max(scale, 1e-30)
    gaps = spec.gaps()
    if gaps:
        narrowest = min(g.length for g in gaps)
        if grid.step > narrowest / GAP_RESOLUTION_FACTOR:
            raise ResolutionTooCoarse(
                f"grid step {grid.step} cannot resolve the narrowest gap "
                f"{narrowest} by a factor of {GAP_RESOLUTION_FACTOR}"
            )
    rho = spec.rho()
    interior: list[float] = []
    for comp in spec.components():
        if comp.finite:
            interior += [
                comp.lo + frac * comp.length for frac in (0.25, 0.5, 0.75)
            ]
        elif math.isinf(comp.hi):
            interior.append(comp.lo + 2.0 * rho)
        else:
            interior.append(comp.hi - 2.0 * rho)
    extent = float(np.max(np.abs(grid.x)))
    if any(abs(p) > extent for p in interior):
        raise ResolutionTooCoarse("grid does not cover the component probe points")
    inner_abs = [abs(grid.value_near(p)) for p in interior]
    gap_abs = [abs(grid.value_near(g.midpoint)) for g in gaps]
    gap_abs += [abs(grid.value_near(-g.midpoint)) for g in gaps]
    min_inner = min(inner_abs)
    max_gap = max(gap_abs) if gap_abs else 0.0
    passed = (min_inner > zero_tol) and (max_gap <= zero_tol)
    return CheckReport(
        "support",
        passed,
        {"min_interior_abs": min_inner, "max_gap_abs": max_gap, "zero_tol": zero_tol},
        zero_tol,
    )


def check_positive_definite(
    target,
    method: str = "closed_form",
    phases: PhaseVector | None = None,
    t_domain: float = 50.0,
    t_step: float = 0.05,
    tol: float | None = None,
    x_step: float = 1e-3,
) -> CheckReport:
    """Minimum of the inverse transform over a t-grid; nonnegative within
    tolerance certifies positive definiteness.

    closed_form takes a Blueprint and evaluates its kernel-times-cosine form;
    quadrature takes a sampled CfGrid (or a compactly supported Blueprint,
    which is sampled) and integrates e^{itx} numerically.
    """
    ts = symmetric_abscissas(t_domain, t_step)
    if method == "closed_form":
        if not isinstance(target, Blueprint):
            raise InputError("closed_form requires a blueprint")
        tol = 1e-9 if tol is None else tol
        vals = (
            target.envelope_inverse(ts)
            if phases is None
            else target.twisted_inverse(ts, phases)
        )
        vals = np.asarray(vals) / target.normalizer
        idx = int(np.argmin(vals))
        measured = {"min_inverse": float(vals[idx]), "argmin_t": float(ts[idx])}
        passed = vals[idx] >= -tol
        return CheckReport("positive_definite_closed_form", passed, measured, tol)
    if method != "quadrature":
        raise InputError(f"unknown method {method!r}")
    tol = 1e-6 if tol is None else tol
    if isinstance(target, Blueprint):
        if target.spec.has_infinite:
            raise UnboundedSupport("quadrature needs compact support")
        halfwidth = target.spec.finite_extent + 0.5
        target = sample_member(target, phases, halfwidth, x_step)
    if not isinstance(target, CfGrid):
        raise InputError("quadrature requires a CfGrid or a blueprint")
    inv = inverse_transform_grid(target.x, target.values, ts)
    re = inv.real
    idx = int(np.argmin(re))
    measured = {
        "min_inverse": float(re[idx]),
        "argmin_t": float(ts[idx]),
        "max_imag": float(np.max(np.abs(inv.imag))),
    }
    return CheckReport(
        "positive_definite_quadrature", re[idx] >= -tol, measured, tol
    )


def inverse_by_quadrature(
    bp: Blueprint, phases: PhaseVector | None, ts: np.ndarray
) -> np.ndarray:
    """Numerical inverse transform of a member by piecewise Gauss-Legendre
    integration of e^{itx} times the function values.

    This is the independent cross-check of the closed-form transform; it
    never touches the cosine-polynomial factorization. Compact supports only.
    """
    if bp.spec.has_infinite:
        raise UnboundedSupport("quadrature needs compact support")
    segments = split_segments(bp.support_breakpoints(), bp.plan.rho)
    segments = [
        s for s in segments if bp.spec.locate(0.5 * (s[0] + s[1])) is not None
    ]
    fn = bp.cf if phases is None else (lambda xs: bp.member(xs, phases))
    return inverse_transform_callable(fn, segments, np.asarray(ts, dtype=float))


# ---------------------------------------------------------------------------
# phase extraction (the complete invariant of shared n-th powers)
# ---------------------------------------------------------------------------


@dataclass
class PhaseProfile:
    """Per-component unimodular ratio g/f with the residual of constancy."""

    k: int
    lambdas: dict[int, complex]
    residuals: dict[int, float]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "lambdas": {
                str(j): [v.real, v.imag] for j, v in sorted(self.lambdas.items())
            },
            "residuals": {str(j): v for j, v in sorted(self.residuals.items())},
        }

    def root_indices(self, n: int) -> tuple[int, ...]:
        """Nearest root exponent per positive component."""
        out = []
        for j in range(1, self.k + 1):
            angle = math.atan2(self.lambdas[j].imag, self.lambdas[j].real)
            out.append(round(n * angle / TWO_PI) % n)
        return tuple(out)


def phase_profile(
    f: CfGrid,
    g: CfGrid,
    spec: SupportSpec,
    zero_tol: float | None = None,
    modulus_tol: float = 1e-9,
    ratio_tol: float = 1e-6,
) -> PhaseProfile:
    """Extract the per-component constants lambda_j = g/f.

    Raises ModulusMismatch when |f| and |g| disagree on the support and
    NonConstantRatio when any component ratio wanders, when the central
    constant is not 1, or when mirror components are not conjugate.
    """
    if not np.array_equal(f.x, g.x):
        raise GridMismatch("phase profile needs identical abscissas")
    scale = float(np.max(np.abs(f.values)))
    if zero_tol is None:
        zero_tol = 1e-9 * max(scale, 1e-30)
    masks = spec.component_masks(f.x)
    live = np.abs(f.values) > zero_tol
    support_live = np.zeros_like(live)
    for mask in masks.values():
        support_live |= mask & live
    mod_dev = float(
        np.max(
            np.abs(np.abs(f.values[support_live]) - np.abs(g.values[support_live])),
            initial=0.0,
        )
    )
    if mod_dev > modulus_tol * max(scale, 1e-30):
        raise ModulusMismatch(
            f"|f| and |g| differ by {mod_dev:.3g} on the support"
        )
    lambdas: dict[int, complex] = {}
    residuals: dict[int, float] = {}
    for j, mask in masks.items():
        pts = mask & live
        if not np.any(pts):
            raise ResolutionTooCoarse(f"no usable samples inside component {j}")
        ratios = g.values[pts] / f.values[pts]
        unit = ratios / np.abs(ratios)
        mean = complex(unit.mean())
        if mean == 0:
            raise NonConstantRatio(f"component {j}: phases average out to zero")
        lam = mean / abs(mean)
        res = float(np.max(np.abs(ratios - lam)))
        if res > ratio_tol:
            raise NonConstantRatio(
                f"component {j}: ratio deviates from a constant by {res:.3g}"
            )
        lambdas[j] = lam
        residuals[j] = res
    if abs(lambdas[0] - 1.0) > ratio_tol:
        raise NonConstantRatio(
            f"central component carries phase {lambdas[0]:.6g}, expected 1"
        )
    for j in range(1, spec.k + 1):
        dev = abs(lambdas[-j] - lambdas[j].conjugate())
        if dev > ratio_tol:
            raise NonConstantRatio(
                f"components +-{j} are not conjugate (deviation {dev:.3g})"
            )
    return PhaseProfile(k=spec.k, lambdas=lambdas, residuals=residuals)


# ---------------------------------------------------------------------------
# the n**k bound and the candidate explorer
# ---------------------------------------------------------------------------


def cn_upper_bound(spec: SupportSpec, n: int) -> int:
    """n**k, the cardinality bound for functions sharing the n-th power."""
    if n < 2:
        raise PhaseOutOfRange(f"n must be >= 2, got {n}")
    return n**spec.k


@dataclass
class ExploreResult:
    phases: PhaseVector
    pd_pass: bool
    min_inverse: float

    def to_dict(self) -> dict:
        return {
            "omega": list(self.phases.entries),
            "pd_pass": bool(self.pd_pass),
            "min_inverse": float(self.min_inverse),
        }


def explore_cn(
    f: CfGrid,
    spec: SupportSpec,
    n: int,
    t_domain: float = 50.0,
    t_step: float = 0.05,
    pd_tol: float = 1e-6,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> list[ExploreResult]:
    """Build all n**k root-twist candidates of a sampled f and filter them by
    the numerical positive-definiteness of their inverse transforms.

    Candidates multiply f by exp(2 pi i m_j / n) on the j-th positive
    component and by the conjugate on its mirror; the passing candidates are
    exactly the characteristic functions sharing the n-th power of f.
    """
    ts = symmetric_abscissas(t_domain, t_step)
    masks = spec.component_masks(f.x)
    outside = np.ones(f.x.size, dtype=bool)
    for mask in masks.values():
        outside &= ~mask
    # the transform is linear in the samples, so candidate inverses are phase
    # combinations of per-component partial transforms
    base = inverse_transform_grid(f.x, f.values * (masks[0] | outside), ts)
    pos = [
        inverse_transform_grid(f.x, f.values * masks[j], ts)
        for j in range(1, spec.k + 1)
    ]
    neg = [
        inverse_transform_grid(f.x, f.values * masks[-j], ts)
        for j in range(1, spec.k + 1)
    ]
    results = []
    for pv in phase_vectors(n, spec.k, cap=cap):
        inv = base.copy()
        for j, root in enumerate(pv.roots()):
            inv += root * pos[j] + np.conj(root) * neg[j]
        m = float(np.min(inv.real))
        results.append(ExploreResult(pv, m >= -pd_tol, m))
    return results


# ---------------------------------------------------------------------------
# classic even-n pair: periodic triangle waves with periods 2 and 4
# ---------------------------------------------------------------------------


def classic_pair(x):
    """The pair of periodic triangle waves (periods 2 and 4) that agree in
    modulus everywhere yet differ in sign, so their even powers coincide."""
    xs = np.asarray(x, dtype=float)
    f = 1.0 - np.abs(xs - 2.0 * np.round(xs / 2.0))
    g = 1.0 - np.abs(xs - 4.0 * np.round(xs / 4.0))
    if np.ndim(x):
        return f, g
    return float(f), float(g)


def classic_atoms(which: str, m_max: int) -> list[tuple[float, float]]:
    """Discrete spectrum of the periodic triangle waves, truncated at |m| <=
    m_max: atom locations and (positive) weights of the representing measure.

    The period-2 wave carries weight 1/2 at 0 and 2/(pi m)^2 * 2 at +-pi*m for
    odd m; the period-4 wave carries 4/(pi m)^2 at +-pi*m/2 for odd m.
    """
    if m_max < 1:
        raise InputError(f"m_max must be >= 1, got {m_max}")
    if which not in ("f", "g"):
        raise InputError("which must be 'f' (period 2) or 'g' (period 4)")
    ms = np.arange(1, m_max + 1, 2, dtype=float)
    if which == "f":
        weights = 2.0 / (math.pi**2 * ms**2)
        locs = math.pi * ms
        atoms = [(-loc, w) for loc, w in zip(locs[::-1], weights[::-1])]
        atoms.append((0.0, 0.5))
        atoms += [(loc, w) for loc, w in zip(locs, weights)]
        return atoms
    weights = 4.0 / (math.pi**2 * ms**2)
    locs = math.pi * ms / 2.0
    atoms = [(-loc, w) for loc, w in zip(locs[::-1], weights[::-1])]
    atoms += [(loc, w) for loc, w in zip(locs, weights)]
    return atoms


# ---------------------------------------------------------------------------
# the full battery for one family member
# ---------------------------------------------------------------------------


def verify_member(
    bp: Blueprint,
    phases: PhaseVector | None,
    base: CfGrid | None = None,
    x_step: float = 1e-3,
    t_domain: float = 50.0,
    t_step: float = 0.05,
    power_tol: float = 1e-10,
    hermitian_tol: float = 1e-12,
) -> VerificationReport:
    """Hermitian symmetry, support pattern, n-th power identity against the
    base function, and positive definiteness (closed form always, quadrature
    when the support is compact)."""
    halfwidth = default_grid_halfwidth(bp.spec)
    if base is None:
        base = sample_member(bp, None, halfwidth, x_step)
    grid = (
        base
        if phases is None
        else CfGrid(base.x, bp.member(base.x, phases))
    )
    label = phases.label() if phases is not None else "base"
    report = VerificationReport(label=label)
    report.add(check_hermitian(grid, tol=hermitian_tol))
    report.add(check_support(grid, bp.spec))
    if phases is not None:
        report.add(check_power_identity(base, grid, phases.n, tol=power_tol))
    report.add(
        check_positive_definite(
            bp, "closed_form", phases, t_domain=t_domain, t_step=t_step
        )
    )
    if not bp.spec.has_infinite:
        report.add(
            check_positive_definite(
                grid, "quadrature", t_domain=t_domain, t_step=t_step
            )
        )
    return report


def verify_family(
    bp: Blueprint,
    n: int,
    jobs: int = 1,
    cap: int = DEFAULT_ENUMERATION_CAP,
    **kwargs,
) -> list[tuple[PhaseVector, VerificationReport]]:
    """Run the member battery over the whole family."""
    halfwidth = default_grid_halfwidth(bp.spec)
    x_step = kwargs.get("x_step", 1e-3)
    base = sample_member(bp, None, halfwidth, x_step)
    members = list(phase_vectors(n, bp.spec.k, cap=cap))

    def run(pv: PhaseVector):
        return pv, verify_member(bp, pv, base=base, **kwargs)

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run, members))
    return [run(pv) for pv in members]
