"""Build characteristic functions with a prescribed support.

The construction places kernel translates ("knots") inside every support
component so their bump sums are strictly positive exactly on the open
components, then combines them with coefficients small enough that the
inverse Fourier transform stays nonnegative:

    F(x) = kernel(x) + sum_j alpha_j * (B_j(x) + B_j(-x)),

where B_j is the knot-translate sum of component j. Finite components get
uniformly spaced knots with gap <= rho and unit weights; a half-infinite last
component gets the lazy train of knots a_k + l*rho with geometric weights
2^-l. The twisted variant multiplies the j-th positive component block by an
n-th root of unity (conjugate on the mirror block), which leaves the n-th
power of the normalized function unchanged.

Closed-form inverse transforms come out as the kernel's inverse times a
cosine polynomial over the knots; with the coefficients pinned at their upper
bound 1/(2 m_j (k+1)) that polynomial has lower bound exactly 0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch
from .kernel import Kernel, make_kernel
from .support import SupportSpec, spec_from_dict, spec_to_dict

TWO_PI = 2.0 * math.pi

# truncation target for the geometric knot series in inverse transforms
SERIES_TAIL = 1e-12


@dataclass(frozen=True, eq=False)
class ComponentKnots:
    """Knot layout of one nonnegative-index component.

    Finite components carry explicit knot abscissas with unit weights. The
    half-infinite component stores the lazy rule: knots start + l*spacing for
    l = 1, 2, ... with weights 2**-l (summing to 1).
    """

    index: int
    taus: np.ndarray | None = None
    start: float | None = None
    spacing: float | None = None

    @property
    def infinite(self) -> bool:
        return self.taus is None

    @property
    def count(self) -> int | None:
        """Knot count m(j); None for the half-infinite component."""
        return None if self.infinite else int(self.taus.size)

    def truncated(self, series_len: int) -> tuple[np.ndarray, np.ndarray]:
        """(knot abscissas, knot weights) with the geometric train cut at
        series_len terms; finite components are returned whole."""
        if not self.infinite:
            return self.taus, np.ones(self.taus.size)
        ls = np.arange(1, series_len + 1, dtype=float)
        return self.start + ls * self.spacing, 0.5**ls


@dataclass(frozen=True, eq=False)
class KnotPlan:
    """Knots for components j = 0..k (mirror components reuse these by symmetry)."""

    rho: float
    components: tuple[ComponentKnots, ...]

    @property
    def has_infinite(self) -> bool:
        return any(c.infinite for c in self.components)


def _finite_knots(lo: float, hi: float, rho: float) -> np.ndarray:
    """Uniform knots from lo+rho to hi-rho with gap <= rho (single centered
    knot when the component has the minimal length 2*rho)."""
    gaps = max(0, math.ceil((hi - lo - 2.0 * rho) / rho - 1e-9))
    if gaps == 0:
        return np.array([0.5 * (lo + hi)])
    return np.linspace(lo + rho, hi - rho, gaps + 1)


def place_knots(spec: SupportSpec, rho: float) -> KnotPlan:
    """Knot layout for every component; rho must be the spec's derived value."""
    comps = [ComponentKnots(0, taus=_finite_knots(-spec.b0, spec.b0, rho))]
    for idx, iv in enumerate(spec.positives, start=1):
        if iv.finite:
            comps.append(ComponentKnots(idx, taus=_finite_knots(iv.lo, iv.hi, rho)))
        else:
            comps.append(ComponentKnots(idx, start=iv.lo, spacing=rho))
    return KnotPlan(rho=rho, components=tuple(comps))


def _series_length(alpha: float) -> int:
    """Terms needed so the dropped geometric tail stays below SERIES_TAIL."""
    length = 1
    while 2.0 * alpha * 0.5**length >= SERIES_TAIL:
        length += 1
    return length


@dataclass(frozen=True, eq=False)
class Blueprint:
    """Fully resolved construction; immutable, all evaluations are pure.

    The base function and its normalizer do not depend on n; only the twisted
    variants do, through the phase vector they are given.
    """

    spec: SupportSpec
    kernel: Kernel
    plan: KnotPlan
    coefficients: tuple[float, ...]
    normalizer: float
    series_len: int

    # -- phase helpers -----------------------------------------------------

    def _check_phases(self, phases) -> np.ndarray:
        entries = tuple(phases.entries)
        if len(entries) != self.spec.k:
            raise DimensionMismatch(
                f"phase vector has {len(entries)} entries, spec has k={self.spec.k}"
            )
        return np.exp(2j * math.pi * np.asarray(entries, dtype=float) / phases.n)

    # -- direct-side evaluation --------------------------------------------

    def _component_sum(self, comp: ComponentKnots, x: np.ndarray) -> np.ndarray:
        if not comp.infinite:
            return self.kernel.eval(x[:, None] - comp.taus[None, :]).sum(axis=1)
        # at most two geometric translates cover any point, so the lazy sum
        # is evaluated exactly (no truncation on the direct side)
        rel = (x - comp.start) / comp.spacing
        out = np.zeros_like(x)
        base = np.floor(rel)
        with np.errstate(under="ignore"):
            for cand in (base, base + 1.0):
                valid = cand >= 1.0
                ls = np.where(valid, cand, 1.0)
                tau = comp.start + ls * comp.spacing
                w = np.where(valid, 0.5**ls, 0.0)
                out += w * self.kernel.eval(x - tau)
        return out

    def _eval_blocks(self, x: np.ndarray) -> list[tuple[np.ndarray, np.ndarray]]:
        """Per component j: (B_j(x), B_j(-x))."""
        return [
            (self._component_sum(c, x), self._component_sum(c, -x))
            for c in self.plan.components
        ]

    def envelope(self, x):
        """Unnormalized base function; real, nonnegative, positive exactly on
        the prescribed open components."""
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.asarray(self.kernel.eval(xs), dtype=float).copy()
        for alpha, (fw, bw) in zip(self.coefficients, self._eval_blocks(xs)):
            out += alpha * (fw + bw)
        return out if np.ndim(x) else float(out[0])

    def twisted(self, x, phases):
        """Unnormalized member with the given per-component phases."""
        roots = self._check_phases(phases)
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.asarray(self.kernel.eval(xs), dtype=complex)
        for j, (alpha, (fw, bw)) in enumerate(
            zip(self.coefficients, self._eval_blocks(xs))
        ):
            if j == 0:
                out += alpha * (fw + bw)
            else:
                ph = roots[j - 1]
                out += alpha * (ph * fw + np.conj(ph) * bw)
        return out if np.ndim(x) else complex(out[0])

    def cf(self, x):
        """The base characteristic function (envelope normalized to 1 at 0)."""
        out = np.asarray(self.envelope(x)) / self.normalizer
        return out if np.ndim(x) else float(out)

    def member(self, x, phases):
        """Family member: twisted envelope normalized to 1 at 0."""
        tw = np.atleast_1d(np.asarray(self.twisted(x, phases)))
        # divide componentwise so the zero-phase member matches cf() bit for
        # bit (complex-by-real division rounds differently)
        out = np.empty_like(tw)
        out.real = tw.real / self.normalizer
        out.imag = tw.imag / self.normalizer
        return out if np.ndim(x) else complex(out[0])

    # -- inverse-transform side ----------------------------------------------

    @cached_property
    def _knot_table(self) -> list[tuple[np.ndarray, np.ndarray]]:
        """Per component: (knots, alpha-scaled weights) with the geometric
        train truncated at series_len terms."""
        table = []
        for alpha, comp in zip(self.coefficients, self.plan.components):
            taus, weights = comp.truncated(self.series_len)
            table.append((taus, alpha * weights))
        return table

    @property
    def max_knot_abscissa(self) -> float:
        return max(float(taus[-1]) for taus, _ in self._knot_table)

    def bracket(self, t, phases=None):
        """Cosine-polynomial factor of the inverse transform:
        1 + 2 sum_j sum_p alpha_j w_jp cos(theta_j + tau_jp * t)."""
        thetas = np.zeros(self.spec.k + 1)
        if phases is not None:
            roots_angle = (
                TWO_PI * np.asarray(tuple(phases.entries), dtype=float) / phases.n
            )
            if roots_angle.size != self.spec.k:
                raise DimensionMismatch(
                    f"phase vector has {roots_angle.size} entries, "
                    f"spec has k={self.spec.k}"
                )
            thetas[1:] = roots_angle
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.ones(ts.size)
        chunk = 2_000_000 // max(1, sum(w.size for _, w in self._knot_table))
        chunk = max(1, chunk)
        for s in range(0, ts.size, chunk):
            block = ts[s : s + chunk]
            acc = np.zeros(block.size)
            for theta, (taus, weights) in zip(thetas, self._knot_table):
                acc += np.cos(theta + np.outer(block, taus)) @ weights
            out[s : s + chunk] += 2.0 * acc
        return out if np.ndim(t) else float(out[0])

    def envelope_inverse(self, t):
        """Closed-form inverse transform of the base envelope (real, >= 0 up
        to the documented geometric-series truncation)."""
        return self.kernel.inverse_eval(t) * self.bracket(t)

    def twisted_inverse(self, t, phases):
        """Closed-form inverse transform of the twisted envelope."""
        return self.kernel.inverse_eval(t) * self.bracket(t, phases)

    def series_truncation_error(self) -> float:
        """Absolute bound on the inverse-transform error from cutting the
        geometric knot series; 0 for all-finite supports."""
        if not self.plan.has_infinite:
            return 0.0
        alpha = self.coefficients[-1]
        return 2.0 * alpha * 0.5**self.series_len

    def support_breakpoints(self) -> np.ndarray:
        """Abscissas where the envelope has kinks (component endpoints, knots
        and knot +- rho), restricted to the finite part of the support.
        Useful for piecewise quadrature; only for compact supports."""
        if self.spec.has_infinite:
            raise ValueError("breakpoints are only defined for compact supports")
        rho = self.plan.rho
        marks = [np.array([-self.spec.b0, 0.0, self.spec.b0])]
        for iv in self.spec.positives:
            marks.append(np.array([iv.lo, iv.hi, -iv.lo, -iv.hi]))
        for comp in self.plan.components:
            for shift in (-rho, 0.0, rho):
                marks.append(comp.taus + shift)
                marks.append(-(comp.taus + shift))
        return np.unique(np.concatenate(marks))

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        comps = []
        for comp in self.plan.components:
            if comp.infinite:
                comps.append(
                    {
                        "index": comp.index,
                        "infinite": True,
                        "start": comp.start,
                        "spacing": comp.spacing,
                        "weight_ratio": 0.5,
                    }
                )
            else:
                comps.append({"index": comp.index, "knots": list(map(float, comp.taus))})
        return {
            "spec": spec_to_dict(self.spec),
            "kernel": {"shape": self.kernel.name, "rho": self.kernel.rho},
            "rho": self.plan.rho,
            "components": comps,
            "coefficients": list(self.coefficients),
            "normalizer": self.normalizer,
            "series_len": self.series_len,
        }

    def to_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")


def make_blueprint(spec: SupportSpec, kernel: Kernel, plan: KnotPlan) -> Blueprint:
    """Resolve coefficients and the normalizer for a knot plan.

    Every coefficient sits exactly at its admissible upper bound: finite
    components get 1/(2 m_j (k+1)), a half-infinite one gets 1/(2 (k+1)).
    """
    k = spec.k
    coefficients = tuple(
        1.0 / (2.0 * (k + 1)) if comp.infinite else 1.0 / (2.0 * comp.count * (k + 1))
        for comp in plan.components
    )
    series_len = (
        _series_length(coefficients[-1]) if plan.has_infinite else 1
    )
    bp = Blueprint(
        spec=spec,
        kernel=kernel,
        plan=plan,
        coefficients=coefficients,
        normalizer=1.0,
        series_len=series_len,
    )
    normalizer = bp.envelope(0.0)
    object.__setattr__(bp, "normalizer", float(normalizer))
    return bp


def build_blueprint(spec: SupportSpec, kernel_shape: str = "triangle") -> Blueprint:
    """Derive rho, place knots, and resolve the blueprint in one step."""
    rho = spec.rho()
    return make_blueprint(spec, make_kernel(kernel_shape, rho), place_knots(spec, rho))


def blueprint_from_dict(data: dict) -> Blueprint:
    spec = spec_from_dict(data["spec"])
    kernel = make_kernel(data["kernel"]["shape"], data["kernel"]["rho"])
    comps = []
    for cd in data["components"]:
        if cd.get("infinite"):
            comps.append(
                ComponentKnots(cd["index"], start=cd["start"], spacing=cd["spacing"])
            )
        else:
            comps.append(ComponentKnots(cd["index"], taus=np.asarray(cd["knots"])))
    plan = KnotPlan(rho=data["rho"], components=tuple(comps))
    return Blueprint(
        spec=spec,
        kernel=kernel,
        plan=plan,
        coefficients=tuple(data["coefficients"]),
        normalizer=float(data["normalizer"]),
        series_len=int(data["series_len"]),
    )


def blueprint_from_json(path) -> Blueprint:
    with open(path) as fh:
        return blueprint_from_dict(json.load(fh))
