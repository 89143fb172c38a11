"""The n**k family sharing one n-th power: enumeration, equality, recovery.

Two members coincide exactly when their phase vectors agree componentwise
modulo n, so the family has n**k distinct members, one per vector in
{0, ..., n-1}**k. A member is recovered from sampled values by reading off
the root of unity it carries on each positive component.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .construct import Blueprint
from .errors import (
    DimensionMismatch,
    EnumerationOverflow,
    NotARoot,
    PhaseOutOfRange,
    ProbeAtZero,
)

DEFAULT_ENUMERATION_CAP = 10**6

ROOT_TOL = 1e-6
PROBE_ZERO_TOL = 1e-300


@dataclass(frozen=True)
class PhaseVector:
    """One member index: k integers, each in 0..n-1."""

    entries: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if self.n < 2:
            raise PhaseOutOfRange(f"n must be >= 2, got {self.n}")
        for e in self.entries:
            if not 0 <= e < self.n:
                raise PhaseOutOfRange(f"entry {e} outside 0..{self.n - 1}")

    @property
    def k(self) -> int:
        return len(self.entries)

    def roots(self) -> np.ndarray:
        """The unimodular constants exp(2 pi i entry / n)."""
        return np.exp(2j * math.pi * np.asarray(self.entries, dtype=float) / self.n)

    def label(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"


def zero_phase(n: int, k: int) -> PhaseVector:
    return PhaseVector((0,) * k, n)


def family_size(n: int, k: int) -> int:
    return n**k


def phase_vectors(
    n: int, k: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> Iterator[PhaseVector]:
    """All n**k phase vectors in lexicographic order.

    Guarded by an enumeration cap so a config typo cannot trigger a
    combinatorial blowup.
    """
    if n < 2:
        raise PhaseOutOfRange(f"n must be >= 2, got {n}")
    if k < 0:
        raise DimensionMismatch(f"k must be >= 0, got {k}")
    total = family_size(n, k)
    if total > cap:
        raise EnumerationOverflow(f"family size {n}**{k} = {total} exceeds cap {cap}")
    if k == 0:
        yield PhaseVector((), n)
        return
    entries = [0] * k
    while True:
        yield PhaseVector(tuple(entries), n)
        pos = k - 1
        while pos >= 0:
            entries[pos] += 1
            if entries[pos] < n:
                break
            entries[pos] = 0
            pos -= 1
        if pos < 0:
            return


def _entries_and_n(value, n: int | None) -> tuple[tuple[int, ...], int]:
    if isinstance(value, PhaseVector):
        return value.entries, value.n
    if n is None:
        raise DimensionMismatch("raw integer sequences require an explicit n")
    return tuple(int(e) for e in value), n


def equivalent(omega, theta, n: int | None = None) -> bool:
    """True when the two vectors agree componentwise modulo n.

    Accepts PhaseVector instances or raw integer sequences (raw entries may
    lie outside 0..n-1; they are reduced).
    """
    oe, on = _entries_and_n(omega, n)
    te, tn = _entries_and_n(theta, n)
    if on != tn:
        raise DimensionMismatch(f"moduli differ: {on} vs {tn}")
    if len(oe) != len(te):
        raise DimensionMismatch(f"lengths differ: {len(oe)} vs {len(te)}")
    return all((a - b) % on == 0 for a, b in zip(oe, te))


def probe_points(bp: Blueprint) -> list[float]:
    """One abscissa per positive component where the base function is
    provably nonzero: the midpoint for finite components, two kernel
    half-widths past the left endpoint for a half-infinite one."""
    rho = bp.plan.rho
    probes = []
    for iv in bp.spec.positives:
        probes.append(iv.midpoint if iv.finite else iv.lo + 2.0 * rho)
    return probes


def identify(
    bp: Blueprint, n: int, values: Mapping[float, complex], tol: float = ROOT_TOL
) -> PhaseVector:
    """Recover the phase vector of a family member from its probe values.

    values maps each probe abscissa (see probe_points) to the member's value
    there. Raises ProbeAtZero when the base function vanishes at a probe
    (impossible for a genuine blueprint, so it flags foreign input) and
    NotARoot when a ratio is not close to any n-th root of unity.
    """
    if n < 2:
        raise PhaseOutOfRange(f"n must be >= 2, got {n}")
    entries = []
    for probe in probe_points(bp):
        base = bp.cf(probe)
        if abs(base) <= PROBE_ZERO_TOL:
            raise ProbeAtZero(f"base function vanishes at probe {probe}")
        sampled = _lookup(values, probe)
        ratio = complex(sampled) / base
        angle = cmath.phase(ratio)
        idx = round(n * angle / (2.0 * math.pi)) % n
        root = cmath.exp(2j * math.pi * idx / n)
        if abs(ratio - root) > tol:
            raise NotARoot(
                f"ratio {ratio:.6g} at probe {probe} is not within {tol} of an "
                f"{n}-th root of unity"
            )
        entries.append(idx)
    return PhaseVector(tuple(entries), n)


def _lookup(values: Mapping[float, complex], probe: float) -> complex:
    if probe in values:
        return values[probe]
    scale = max(1.0, abs(probe))
    for key, val in values.items():
        if abs(key - probe) <= 1e-9 * scale:
            return val
    raise KeyError(f"no sampled value at probe {probe}")


def sample_member_probes(bp: Blueprint, phases: PhaseVector) -> dict[float, complex]:
    """Probe-point samples of one member, keyed by abscissa."""
    return {p: complex(bp.member(p, phases)) for p in probe_points(bp)}


@dataclass
class FamilyManifest:
    """Everything needed to certify the family: members, probe values, and a
    pairwise-distinctness certificate measured at the probes."""

    n: int
    k: int
    members: list[PhaseVector]
    probes: list[float]
    probe_values: list[list[complex]]
    min_pairwise_separation: float

    @property
    def count(self) -> int:
        return len(self.members)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "count": self.count,
            "probes": [float(p) for p in self.probes],
            "members": [
                {
                    "omega": list(pv.entries),
                    "probe_values": [[v.real, v.imag] for v in vals],
                }
                for pv, vals in zip(self.members, self.probe_values)
            ],
            "distinctness": {
                "min_pairwise_max_abs_diff": self.min_pairwise_separation,
            },
        }

    def to_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")


def build_manifest(
    bp: Blueprint, n: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> FamilyManifest:
    """Enumerate all members and measure their pairwise separation at the
    probe points (infinity for the degenerate k=0 family of one)."""
    members = list(phase_vectors(n, bp.spec.k, cap=cap))
    probes = probe_points(bp)
    value_rows = [
        [complex(bp.member(p, pv)) for p in probes] for pv in members
    ]
    arr = np.asarray(value_rows) if probes else np.zeros((len(members), 0))
    min_sep = math.inf
    for i in range(len(members)):
        if not probes:
            break
        diffs = np.abs(arr[i + 1 :] - arr[i])
        if diffs.size:
            min_sep = min(min_sep, float(diffs.max(axis=1).min()))
    return FamilyManifest(
        n=n,
        k=bp.spec.k,
        members=members,
        probes=probes,
        probe_values=value_rows,
        min_pairwise_separation=min_sep,
    )
