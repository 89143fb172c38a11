import dataclasses
import math

import numpy as np
import pytest

from cfroots import (
    PhaseVector,
    build_manifest,
    equivalent,
    family_size,
    identify,
    phase_vectors,
    probe_points,
    sample_member_probes,
    zero_phase,
)
from cfroots.errors import (
    DimensionMismatch,
    EnumerationOverflow,
    NotARoot,
    PhaseOutOfRange,
    ProbeAtZero,
)


class TestPhaseVector:
    def test_entries_validated(self):
        with pytest.raises(PhaseOutOfRange):
            PhaseVector((3,), 3)
        with pytest.raises(PhaseOutOfRange):
            PhaseVector((-1,), 3)
        with pytest.raises(PhaseOutOfRange):
            PhaseVector((0,), 1)

    def test_roots(self):
        pv = PhaseVector((0, 1, 2), 4)
        np.testing.assert_allclose(
            pv.roots(), [1.0, 1j, -1.0], atol=1e-15
        )


class TestEnumeration:
    def test_count_three_squared(self):
        got = list(phase_vectors(3, 2))
        assert len(got) == 9
        assert got[0].entries == (0, 0)
        assert got[-1].entries == (2, 2)
        assert len({pv.entries for pv in got}) == 9

    def test_lexicographic_order(self):
        entries = [pv.entries for pv in phase_vectors(2, 3)]
        assert entries == sorted(entries)
        assert len(entries) == 8

    def test_degenerate_family_of_one(self):
        got = list(phase_vectors(2, 0))
        assert len(got) == 1
        assert got[0].entries == ()

    def test_five_cubed(self):
        assert sum(1 for _ in phase_vectors(5, 3)) == 125
        assert family_size(5, 3) == 125

    def test_cap_guard(self):
        with pytest.raises(EnumerationOverflow):
            list(phase_vectors(10, 7, cap=10**6))
        # the cap is adjustable
        assert sum(1 for _ in phase_vectors(4, 3, cap=64)) == 64
        with pytest.raises(EnumerationOverflow):
            list(phase_vectors(4, 3, cap=63))


class TestEquivalence:
    def test_equal_vectors(self):
        assert equivalent(PhaseVector((1, 2), 3), PhaseVector((1, 2), 3))

    def test_reduction_modulo_n(self):
        assert equivalent((0, 0), (0, 3), n=3)
        assert equivalent((1,), (4,), n=3)
        assert not equivalent((1, 0), (2, 0), n=3)

    def test_mismatched_lengths(self):
        with pytest.raises(DimensionMismatch):
            equivalent((1, 2), (1,), n=3)

    def test_mismatched_moduli(self):
        with pytest.raises(DimensionMismatch):
            equivalent(PhaseVector((1,), 3), PhaseVector((1,), 4))

    def test_raw_sequences_need_n(self):
        with pytest.raises(DimensionMismatch):
            equivalent((1,), (1,))


class TestIdentify:
    def test_round_trip_every_member(self, bp_single):
        for pv in phase_vectors(3, 1):
            values = sample_member_probes(bp_single, pv)
            assert identify(bp_single, 3, values).entries == pv.entries

    def test_base_maps_to_zero(self, bp_single):
        values = {p: complex(bp_single.cf(p)) for p in probe_points(bp_single)}
        assert identify(bp_single, 3, values) == zero_phase(3, 1)

    def test_foreign_phase_rejected(self, bp_single):
        probe = probe_points(bp_single)[0]
        values = {probe: bp_single.cf(probe) * np.exp(1j * math.pi / 5)}
        with pytest.raises(NotARoot):
            identify(bp_single, 3, values)

    def test_vanishing_base_detected(self, bp_single):
        # a foreign blueprint whose outer coefficient was zeroed out
        broken = dataclasses.replace(bp_single, coefficients=(0.25, 0.0))
        probe = probe_points(broken)[0]
        with pytest.raises(ProbeAtZero):
            identify(broken, 3, {probe: 0.1 + 0j})

    def test_half_infinite_probe(self, bp_half_inf):
        assert probe_points(bp_half_inf) == [4.0]
        for pv in phase_vectors(2, 1):
            values = sample_member_probes(bp_half_inf, pv)
            assert identify(bp_half_inf, 2, values).entries == pv.entries


class TestDistinctness:
    def test_minimum_separation_k1(self, bp_single):
        # members differing in the phase index differ at the probe by at
        # least |f(probe)| * |1 - exp(2 pi i/3)| = (1/6) * sqrt(3)
        manifest = build_manifest(bp_single, 3)
        assert manifest.count == 3
        floor = math.sqrt(3.0) / 6.0
        assert manifest.min_pairwise_separation >= floor - 1e-12

    def test_manifest_count_and_export(self, bp_two, tmp_path):
        manifest = build_manifest(bp_two, 3)
        assert manifest.count == 9
        assert manifest.k == 2
        path = tmp_path / "manifest.json"
        manifest.to_json(path)
        import json

        data = json.loads(path.read_text())
        assert data["count"] == 9
        assert len(data["members"]) == 9
        assert data["distinctness"]["min_pairwise_max_abs_diff"] > 0.01

    def test_pairwise_distinct_values(self, bp_two):
        manifest = build_manifest(bp_two, 3)
        rows = [tuple(np.round(np.asarray(r), 12)) for r in manifest.probe_values]
        assert len(set(rows)) == len(rows)
