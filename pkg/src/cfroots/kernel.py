"""Seed kernel: an even characteristic function supported on [-rho, rho].

The seed must be strictly positive on the open interval (-rho, rho), equal to
1 at the origin, and have a nonnegative closed-form inverse Fourier transform
(so that it is itself the characteristic function of a probability density).
The shipped instance is the triangle max(0, 1 - |x|/rho), whose inverse
transform is the Fejer-type density (rho/2pi) * (sin(rho t/2)/(rho t/2))**2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import KernelViolation, NonPositiveRho
from .reports import CheckReport, VerificationReport

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Kernel:
    """Base class for seed kernels; concrete kernels implement the evals."""

    rho: float

    def __post_init__(self):
        if not (math.isfinite(self.rho) and self.rho > 0):
            raise NonPositiveRho(f"rho must be finite and positive, got {self.rho}")

    @property
    def name(self) -> str:
        raise NotImplementedError

    def eval(self, x):
        raise NotImplementedError

    def inverse_eval(self, t):
        raise NotImplementedError

    def inverse_tail_bound(self, halfwidth: float) -> float:
        """Upper bound on the inverse-transform mass outside [-halfwidth, halfwidth]."""
        raise NotImplementedError


@dataclass(frozen=True)
class TriangleKernel(Kernel):
    """Triangle kernel max(0, 1 - |x|/rho); inverse transform is a squared sinc."""

    @property
    def name(self) -> str:
        return "triangle"

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        out = np.maximum(0.0, 1.0 - np.abs(x) / self.rho)
        return out if out.shape else float(out)

    def inverse_eval(self, t):
        # (rho/2pi) * sinc(rho t / 2pi)^2 with numpy's normalized sinc;
        # the removable singularity at t=0 evaluates to rho/2pi exactly.
        t = np.asarray(t, dtype=float)
        out = (self.rho / TWO_PI) * np.sinc(self.rho * t / TWO_PI) ** 2
        return out if out.shape else float(out)

    def inverse_tail_bound(self, halfwidth: float) -> float:
        # sin^2 <= 1 gives inverse_eval(t) <= 2/(pi rho t^2); integrate both tails
        return 4.0 / (math.pi * self.rho * halfwidth)


def make_triangle(rho: float) -> TriangleKernel:
    return TriangleKernel(float(rho))


KERNELS = {"triangle": make_triangle}


def make_kernel(shape: str, rho: float) -> Kernel:
    try:
        factory = KERNELS[shape]
    except KeyError:
        raise NonPositiveRho(  # pragma: no cover - guarded by config validation
            f"unknown kernel shape {shape!r}"
        ) from None
    return factory(rho)


def _integrate_inverse(kernel: Kernel, step: float, halfwidth: float) -> float:
    """Trapezoid integral of the inverse transform over [-halfwidth, halfwidth].

    Chunked so that very wide domains do not allocate huge node arrays.
    """
    n = int(math.ceil(halfwidth / step))
    total = 0.5 * kernel.inverse_eval(0.0)  # half-weight at the symmetric midpoint
    chunk = 1_000_000
    for start in range(1, n + 1, chunk):
        idx = np.arange(start, min(start + chunk, n + 1))
        vals = kernel.inverse_eval(idx * step)
        vals[-1] *= 0.5 if idx[-1] == n else 1.0
        total += vals.sum()
    return 2.0 * step * total


def verify_kernel(
    kernel: Kernel,
    grid_step: float = 1e-3,
    domain_halfwidth: float = 1e4,
) -> VerificationReport:
    """Check the seed-kernel contract on a grid; raise KernelViolation on failure.

    Checks: eval(0)=1, evenness, vanishing outside [-rho, rho], strict interior
    positivity, nonnegativity of the inverse transform, and unit mass of the
    inverse transform within the tail bound plus quadrature slop.
    """
    if grid_step <= 0:
        raise NonPositiveRho(f"grid_step must be positive, got {grid_step}")
    rho = kernel.rho
    report = VerificationReport()

    norm = float(kernel.eval(0.0))
    report.add(
        CheckReport(
            "normalization",
            abs(norm - 1.0) <= 1e-12,
            {"eval_at_zero": norm},
            tolerance=1e-12,
        )
    )

    xs = np.arange(0.0, 2.0 * rho + grid_step, grid_step)
    even_dev = float(np.max(np.abs(kernel.eval(xs) - kernel.eval(-xs))))
    report.add(CheckReport("evenness", even_dev <= 1e-12, {"max_dev": even_dev}, 1e-12))

    outside = xs[xs >= rho]
    out_max = float(np.max(np.abs(kernel.eval(outside)))) if outside.size else 0.0
    report.add(
        CheckReport("support", out_max == 0.0, {"max_outside": out_max}, 0.0)
    )

    inside = xs[xs < rho]
    interior_min = float(np.min(kernel.eval(inside)))
    report.add(
        CheckReport(
            "interior_positivity", interior_min > 0.0, {"min_inside": interior_min}, 0.0
        )
    )

    # inverse nonnegativity on a coarser grid out to the full domain
    t_step = max(grid_step, domain_halfwidth / 2_000_000)
    ts = np.arange(0.0, domain_halfwidth + t_step, t_step)
    inv_min = float(np.min(kernel.inverse_eval(ts)))
    report.add(
        CheckReport("inverse_nonnegative", inv_min >= 0.0, {"min_inverse": inv_min}, 0.0)
    )

    integral = _integrate_inverse(kernel, grid_step, domain_halfwidth)
    tail = kernel.inverse_tail_bound(domain_halfwidth)
    mass_err = abs(integral - 1.0)
    mass_tol = tail + 100.0 * grid_step**2 / rho**2 + 1e-9
    report.add(
        CheckReport(
            "inverse_mass",
            mass_err <= mass_tol,
            {"integral": integral, "tail_bound": tail},
            mass_tol,
        )
    )

    failed = [c.name for c in report.checks if not c.passed]
    if failed:
        raise KernelViolation(", ".join(failed))
    return report
