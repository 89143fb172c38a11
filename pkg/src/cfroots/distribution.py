"""Each family member as a probability law on the transform axis.

The member's representing density is the reflected inverse transform divided
by the normalizer: with the convention cf(x) = integral e^{itx} d mu(t), a
function whose inverse transform is nonnegative represents the law whose
density is that inverse transform evaluated at -t. For the base (all phases
zero) the density is even and the reflection is invisible; for twisted
members it matters.

Densities inherit the kernel's heavy 1/t^2 tails, so there is no variance;
medians and windowed masses with explicit tail bounds are the usable
statistics. Sampling is two-stage rejection: propose from the kernel's own
density (itself sampled by rejection from a box-plus-power-tail envelope),
then thin by the cosine-polynomial factor over its supremum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .construct import Blueprint
from .errors import InputError, ToleranceUnreachable
from .family import PhaseVector
from .fourier import gl_panel_integrals
from .analyze import CfGrid

TWO_PI = 2.0 * math.pi

DEFAULT_MAX_WINDOW = 2.5e6
MIN_CDF_TOL = 1e-6


@dataclass(frozen=True)
class MassReport:
    window_mass: float
    tail_bound: float
    window_halfwidth: float
    abs_tol: float

    def to_dict(self) -> dict:
        return {
            "window_mass": self.window_mass,
            "tail_bound": self.tail_bound,
            "window_halfwidth": self.window_halfwidth,
            "abs_tol": self.abs_tol,
        }


@dataclass(frozen=True, eq=False)
class SampleBatch:
    """Reproducible draws: the same seed and count always give the same array."""

    seed: int
    count: int
    draws: np.ndarray
    n: int | None = None
    omega: tuple[int, ...] | None = None


@dataclass(frozen=True, eq=False)
class DensityView:
    """Density, CDF, and sampler of one family member."""

    blueprint: Blueprint
    phases: PhaseVector | None = None
    max_window: float = DEFAULT_MAX_WINDOW

    @property
    def normalizer(self) -> float:
        return self.blueprint.normalizer

    def _bracket_reflected(self, t):
        bp = self.blueprint
        ts = np.negative(np.asarray(t, dtype=float))
        return bp.bracket(ts) if self.phases is None else bp.bracket(ts, self.phases)

    def density(self, t):
        """Nonnegative density value(s); tiny negative floating noise from the
        truncated geometric series is clamped to 0."""
        bp = self.blueprint
        vals = bp.kernel.inverse_eval(t) * self._bracket_reflected(t)
        out = np.maximum(np.asarray(vals) / self.normalizer, 0.0)
        return out if np.ndim(t) else float(out)

    # -- windows and tails ---------------------------------------------------

    def tail_bound(self, halfwidth: float, one_sided: bool = False) -> float:
        """Bound on the density mass beyond [-halfwidth, halfwidth]: the
        cosine factor is at most 2, so the kernel's own tail bound scaled by
        2/normalizer covers the density."""
        both = 2.0 * self.blueprint.kernel.inverse_tail_bound(halfwidth)
        both /= self.normalizer
        return 0.5 * both if one_sided else both

    def _window_for(self, target: float, one_sided: bool) -> float:
        halfwidth = 16.0
        while self.tail_bound(halfwidth, one_sided=one_sided) > target:
            halfwidth *= 2.0
            if halfwidth > self.max_window:
                raise ToleranceUnreachable(
                    f"tail target {target:.3g} needs a window beyond "
                    f"{self.max_window:.3g}"
                )
        return halfwidth

    def _panel_boundaries(self, halfwidth: float) -> np.ndarray:
        kernel = self.blueprint.kernel
        freq = kernel.rho + self.blueprint.max_knot_abscissa
        panel = math.pi / max(freq, 1e-9)
        count = max(2, int(math.ceil(2.0 * halfwidth / panel)))
        return np.linspace(-halfwidth, halfwidth, count + 1)

    def total_mass(self, abs_tol: float = 1e-3) -> MassReport:
        """Integral of the density over a window whose tail bound is below
        abs_tol/2; the window mass must then sit within abs_tol of 1."""
        halfwidth = self._window_for(0.5 * abs_tol, one_sided=False)
        boundaries = self._panel_boundaries(halfwidth)
        mass = float(gl_panel_integrals(self.density, boundaries).sum())
        return MassReport(
            window_mass=mass,
            tail_bound=self.tail_bound(halfwidth),
            window_halfwidth=halfwidth,
            abs_tol=abs_tol,
        )

    def cdf(self, t, abs_tol: float = 1e-4):
        """P(T <= t) by adaptive-window quadrature, accurate to abs_tol.

        Accepts a scalar or an array of query points.
        """
        if abs_tol < MIN_CDF_TOL:
            raise InputError(f"abs_tol must be >= {MIN_CDF_TOL}")
        halfwidth = self._window_for(0.5 * abs_tol, one_sided=True)
        boundaries = self._panel_boundaries(halfwidth)
        integrals = gl_panel_integrals(self.density, boundaries)
        prefix = np.concatenate([[0.0], np.cumsum(integrals)])
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        idx = np.clip(
            np.searchsorted(boundaries, ts, side="right") - 1,
            0,
            boundaries.size - 2,
        )
        lo = boundaries[idx]
        inner = np.clip(ts, -halfwidth, halfwidth)
        partial = _partial_panels(self.density, lo, inner)
        out = prefix[idx] + partial
        out[ts <= -halfwidth] = 0.0
        out[ts >= halfwidth] = prefix[-1]
        out = np.clip(out, 0.0, 1.0)
        return out if np.ndim(t) else float(out[0])

    # -- sampling --------------------------------------------------------------

    def sample(self, count: int, seed: int) -> SampleBatch:
        """Rejection sampling; deterministic for a fixed (seed, count).

        Proposes from the kernel's density (rho-scaled squared sinc) via a
        box-plus-power-tail envelope, then accepts with the reflected cosine
        factor over its supremum 2. Overall acceptance is at least
        (pi/4) * normalizer/2.
        """
        if count < 1:
            raise InputError(f"count must be >= 1, got {count}")
        rng = np.random.default_rng(seed)
        rho = self.blueprint.kernel.rho
        out = np.empty(count)
        filled = 0
        while filled < count:
            need = count - filled
            batch = max(64, int(need / 0.3) + 16)
            mix = rng.random(batch)
            u_val = 1.0 - rng.random(batch)  # in (0, 1]
            u_sign = rng.random(batch)
            u_first = rng.random(batch)
            u_second = rng.random(batch)
            y_uniform = 4.0 * u_val - 2.0
            y_tail = np.where(u_sign < 0.5, -2.0, 2.0) / u_val
            y = np.where(mix < 0.5, y_uniform, y_tail)
            # unit-width squared-sinc density vs the dominating envelope
            target = np.sinc(y / TWO_PI) ** 2 / TWO_PI
            envelope = np.where(np.abs(y) <= 2.0, 1.0 / TWO_PI, 2.0 / (math.pi * y**2))
            keep = u_first < target / envelope
            t_cand = y[keep] / rho
            thin = np.clip(0.5 * self._bracket_reflected(t_cand), 0.0, 1.0)
            accepted = t_cand[u_second[keep] < thin]
            take = min(need, accepted.size)
            out[filled : filled + take] = accepted[:take]
            filled += take
        omega = None if self.phases is None else self.phases.entries
        n = None if self.phases is None else self.phases.n
        return SampleBatch(seed=seed, count=count, draws=out, n=n, omega=omega)


def _partial_panels(fn, lo: np.ndarray, hi: np.ndarray, nodes: int = 8) -> np.ndarray:
    """Integrals of fn over each [lo_i, hi_i] (vectorized, short intervals)."""
    base_x, base_w = np.polynomial.legendre.leggauss(nodes)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    pts = mid[:, None] + half[:, None] * base_x[None, :]
    vals = np.asarray(fn(pts.ravel()), dtype=float).reshape(pts.shape)
    return (vals @ base_w) * half


def empirical_cf(batch: SampleBatch, x_grid) -> CfGrid:
    """Empirical characteristic function mean(exp(i x T_i)) on the grid."""
    draws = np.asarray(batch.draws, dtype=float)
    if draws.size == 0:
        raise InputError("empty sample batch")
    xs = np.asarray(x_grid, dtype=float)
    sums = np.zeros(xs.size, dtype=complex)
    chunk = max(1, 4_000_000 // max(xs.size, 1))
    for s in range(0, draws.size, chunk):
        block = draws[s : s + chunk]
        sums += np.exp(1j * np.outer(xs, block)).sum(axis=1)
    return CfGrid(xs, sums / draws.size)
