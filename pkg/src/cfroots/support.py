"""Support geometry: a symmetric union of 2k+1 open intervals.

A valid support is E_0 = (-b0, b0) together with k positive-side intervals
(a_1, b_1), ..., (a_k, b_k) and their mirror images, subject to the strict
ordering 0 < b0 < a_1 < b_1 < ... < a_k < b_k. Only the last positive interval
may be half-infinite (b_k = +inf). Only the positive side is stored; the
negative side is implied by symmetry.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InfiniteNonLast, NonPositiveB0, OrderingViolation

INF = math.inf


@dataclass(frozen=True)
class Interval:
    """Open interval (lo, hi). hi may be +inf; mirrored images may have lo = -inf."""

    lo: float
    hi: float

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise OrderingViolation("interval endpoints must not be NaN")
        if not self.lo < self.hi:
            raise OrderingViolation(
                f"interval ({self.lo}, {self.hi}) is empty or reversed"
            )

    @property
    def finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        # components are open, so boundary points are outside
        return self.lo < x < self.hi

    def mirrored(self) -> "Interval":
        return Interval(-self.hi, -self.lo)


@dataclass(frozen=True)
class SupportSpec:
    """Validated support geometry. Immutable; safe to share."""

    b0: float
    positives: tuple[Interval, ...]

    def __post_init__(self):
        if not (math.isfinite(self.b0) and self.b0 > 0):
            raise NonPositiveB0(f"b0 must be a finite positive number, got {self.b0}")
        prev_hi = self.b0
        last = len(self.positives) - 1
        for idx, iv in enumerate(self.positives):
            if not math.isfinite(iv.lo):
                raise OrderingViolation(
                    f"positive interval {idx + 1} has non-finite left endpoint {iv.lo}"
                )
            if math.isinf(iv.hi) and idx != last:
                raise InfiniteNonLast(
                    f"interval {idx + 1} of {last + 1} is half-infinite; "
                    "only the last may be"
                )
            if not prev_hi < iv.lo:
                raise OrderingViolation(
                    f"expected {prev_hi} < {iv.lo} at positive interval {idx + 1}"
                )
            prev_hi = iv.hi

    @property
    def k(self) -> int:
        return len(self.positives)

    @property
    def comp(self) -> int:
        """Number of connected components, always 2k+1."""
        return 2 * self.k + 1

    @property
    def has_infinite(self) -> bool:
        return bool(self.positives) and math.isinf(self.positives[-1].hi)

    @property
    def finite_extent(self) -> float:
        """Largest finite endpoint over all components."""
        if not self.positives:
            return self.b0
        last = self.positives[-1]
        return last.lo if math.isinf(last.hi) else last.hi

    def rho(self) -> float:
        """Half of the minimal finite component length.

        Half-infinite components are excluded from the minimum; the central
        component contributes its full length 2*b0.
        """
        lengths = [2.0 * self.b0]
        lengths += [iv.length for iv in self.positives if iv.finite]
        return 0.5 * min(lengths)

    def components(self) -> list[Interval]:
        """All 2k+1 components ordered by index j = -k..k."""
        central = Interval(-self.b0, self.b0)
        mirrored = [iv.mirrored() for iv in reversed(self.positives)]
        return mirrored + [central] + list(self.positives)

    def component(self, j: int) -> Interval:
        """Component with signed index j in -k..k."""
        if abs(j) > self.k:
            raise IndexError(f"component index {j} outside -{self.k}..{self.k}")
        if j == 0:
            return Interval(-self.b0, self.b0)
        iv = self.positives[abs(j) - 1]
        return iv if j > 0 else iv.mirrored()

    def locate(self, x: float) -> int | None:
        """Signed index of the component containing x, or None if outside.

        Boundary points report None since components are open.
        """
        ax = abs(x)
        if ax < self.b0:
            return 0
        sign = 1 if x > 0 else -1
        for idx, iv in enumerate(self.positives, start=1):
            if iv.contains(ax):
                return sign * idx
        return None

    def component_masks(self, xs: np.ndarray) -> dict[int, np.ndarray]:
        """Boolean membership masks keyed by signed component index.

        Points on boundaries or in gaps belong to no mask.
        """
        xs = np.asarray(xs, dtype=float)
        masks: dict[int, np.ndarray] = {0: np.abs(xs) < self.b0}
        for idx, iv in enumerate(self.positives, start=1):
            masks[idx] = (xs > iv.lo) & (xs < iv.hi)
            masks[-idx] = (xs > -iv.hi) & (xs < -iv.lo)
        return masks

    def gaps(self) -> list[Interval]:
        """Closed gaps [b_{j-1}, a_j] between consecutive positive-side components."""
        out = []
        prev_hi = self.b0
        for iv in self.positives:
            out.append(Interval(prev_hi, iv.lo))
            prev_hi = iv.hi
        return out


def validate(b0: float, positives: Iterable[Sequence[float]] = ()) -> SupportSpec:
    """Build a SupportSpec from raw endpoints, raising on any invariant breach."""
    ivs = tuple(Interval(float(lo), float(hi)) for lo, hi in positives)
    return SupportSpec(float(b0), ivs)


def _endpoint_to_json(v: float):
    return "inf" if math.isinf(v) else v


def _endpoint_from_json(v) -> float:
    if isinstance(v, str):
        if v.lower() in ("inf", "+inf", "infinity"):
            return INF
        raise OrderingViolation(f"unrecognized endpoint string {v!r}")
    return float(v)


def spec_to_dict(spec: SupportSpec) -> dict:
    return {
        "b0": spec.b0,
        "positives": [[iv.lo, _endpoint_to_json(iv.hi)] for iv in spec.positives],
    }


def spec_from_dict(data: dict) -> SupportSpec:
    if "b0" not in data:
        raise OrderingViolation("spec is missing required field 'b0'")
    raw = data.get("positives", [])
    positives = []
    for pair in raw:
        if len(pair) != 2:
            raise OrderingViolation(f"positive interval {pair!r} is not a [lo, hi] pair")
        positives.append((_endpoint_from_json(pair[0]), _endpoint_from_json(pair[1])))
    return validate(data["b0"], positives)


def spec_to_json(spec: SupportSpec, path) -> None:
    with open(path, "w") as fh:
        json.dump(spec_to_dict(spec), fh, indent=2)
        fh.write("\n")


def spec_from_json(path) -> SupportSpec:
    with open(path) as fh:
        return spec_from_dict(json.load(fh))
