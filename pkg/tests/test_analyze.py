import math

import numpy as np
import pytest
from scipy.integrate import quad

from cfroots import (
    CfGrid,
    PhaseVector,
    build_blueprint,
    check_hermitian,
    check_positive_definite,
    check_power_identity,
    check_support,
    classic_atoms,
    classic_pair,
    cn_upper_bound,
    explore_cn,
    phase_profile,
    phase_vectors,
    sample_cf,
    sample_member,
    symmetric_abscissas,
    validate,
    verify_family,
    verify_member,
)
from cfroots.errors import (
    AsymmetricGrid,
    GridMismatch,
    ModulusMismatch,
    NonConstantRatio,
    PhaseOutOfRange,
    ResolutionTooCoarse,
    UnboundedSupport,
)

from conftest import lopsided_two_bump

TWO_PI = 2.0 * math.pi


@pytest.fixture(scope="module")
def base_grid(bp_single):
    return sample_member(bp_single, None, 5.0, 1e-2)


def member_grid(bp, base, entries, n):
    return CfGrid(base.x, bp.member(base.x, PhaseVector(entries, n)))


class TestHermitian:
    def test_blueprint_members_pass(self, bp_single, base_grid):
        g = member_grid(bp_single, base_grid, (2,), 3)
        assert check_hermitian(g, tol=1e-12).passed

    def test_constant_imaginary_fails(self):
        xs = symmetric_abscissas(2.0, 1.0)
        values = np.array([1j, 1j, 1.0, 1j, 1j])  # conj(i) = -i at the mirror
        rep = check_hermitian(CfGrid(xs, values), tol=1e-12)
        assert not rep.passed
        assert rep.measured["max_dev"] == pytest.approx(2.0)

    def test_real_even_passes(self):
        xs = symmetric_abscissas(3.0, 0.1)
        rep = check_hermitian(CfGrid(xs, np.cos(xs)), tol=1e-15)
        assert rep.passed

    def test_asymmetric_grid_rejected(self):
        grid = CfGrid(np.array([-1.0, 0.0, 2.0]), np.ones(3, dtype=complex))
        with pytest.raises(AsymmetricGrid):
            check_hermitian(grid)


class TestPowerIdentity:
    def test_member_passes(self, bp_single, base_grid):
        g = member_grid(bp_single, base_grid, (1,), 3)
        rep = check_power_identity(base_grid, g, 3, tol=1e-10)
        assert rep.passed

    def test_wrong_power_fails(self, bp_single, base_grid):
        g = member_grid(bp_single, base_grid, (1,), 3)
        rep = check_power_identity(base_grid, g, 2, tol=1e-10)
        assert not rep.passed
        assert rep.measured["max_dev"] > 0.01

    def test_identical_functions_pass_any_power(self, base_grid):
        for n in (2, 3, 7):
            assert check_power_identity(base_grid, base_grid, n).passed

    def test_grid_mismatch(self, base_grid):
        other = CfGrid(base_grid.x + 1.0, base_grid.values)
        with pytest.raises(GridMismatch):
            check_power_identity(base_grid, other, 2)


class TestSupport:
    def test_blueprint_matches_own_spec(self, bp_single, base_grid):
        assert check_support(base_grid, bp_single.spec).passed

    def test_fake_extra_component_fails(self, bp_two):
        grid = sample_member(bp_two, None, 12.0, 1e-2)
        fake = validate(1.0, [(2.0, 4.0), (5.0, 9.0), (10.0, 11.0)])
        assert not check_support(grid, fake).passed

    def test_zero_grid_fails(self, spec_single):
        xs = symmetric_abscissas(5.0, 1e-2)
        rep = check_support(CfGrid(xs, np.zeros(xs.size)), spec_single)
        assert not rep.passed

    def test_coarse_grid_rejected(self, spec_single):
        grid = sample_member(build_blueprint(spec_single), None, 5.0, 0.5)
        with pytest.raises(ResolutionTooCoarse):
            check_support(grid, spec_single)

    def test_half_infinite_support(self, bp_half_inf):
        grid = sample_member(bp_half_inf, None, 12.0, 1e-2)
        assert check_support(grid, bp_half_inf.spec).passed


class TestPositiveDefinite:
    def test_blueprint_closed_form(self, bp_two):
        for pv in phase_vectors(3, 2):
            rep = check_positive_definite(bp_two, "closed_form", pv)
            assert rep.passed
            assert rep.measured["min_inverse"] >= -1e-12

    def test_fejer_base_quadrature(self, bp_k0):
        rep = check_positive_definite(bp_k0, "quadrature")
        assert rep.passed

    def test_methods_agree_for_members(self, bp_single):
        for pv in phase_vectors(3, 1):
            closed = check_positive_definite(bp_single, "closed_form", pv)
            grid = sample_member(
                bp_single,
                pv,
                bp_single.spec.finite_extent + 0.5,
                1e-3,
            )
            numeric = check_positive_definite(grid, "quadrature")
            assert closed.passed == numeric.passed == True  # noqa: E712

    def test_non_root_twist_fails(self, lopsided_spec, lopsided_grid):
        # constant pi/7 phase on the outer components is not a root of unity
        # twist of this lopsided function and breaks positive definiteness
        masks = lopsided_spec.component_masks(lopsided_grid.x)
        twisted = lopsided_grid.values.astype(complex)
        twisted[masks[1]] *= np.exp(1j * math.pi / 7)
        twisted[masks[-1]] *= np.exp(-1j * math.pi / 7)
        rep = check_positive_definite(
            CfGrid(lopsided_grid.x, twisted), "quadrature", t_domain=60.0
        )
        assert not rep.passed
        assert rep.measured["min_inverse"] < -1e-3

    def test_quadrature_rejects_unbounded_blueprint(self, bp_half_inf):
        with pytest.raises(UnboundedSupport):
            check_positive_definite(bp_half_inf, "quadrature")


class TestPhaseProfile:
    def test_round_trip_phases(self, bp_single, base_grid):
        g = member_grid(bp_single, base_grid, (1,), 3)
        prof = phase_profile(base_grid, g, bp_single.spec)
        assert prof.lambdas[0] == pytest.approx(1.0, abs=1e-14)
        assert prof.lambdas[1] == pytest.approx(np.exp(2j * np.pi / 3), abs=1e-12)
        assert prof.lambdas[-1] == pytest.approx(np.exp(-2j * np.pi / 3), abs=1e-12)
        assert max(prof.residuals.values()) < 1e-10
        assert prof.root_indices(3) == (1,)

    def test_identical_functions_have_unit_profile(self, bp_single, base_grid):
        prof = phase_profile(base_grid, base_grid, bp_single.spec)
        assert all(abs(v - 1.0) < 1e-14 for v in prof.lambdas.values())

    def test_modulus_mismatch_detected(self, bp_single, base_grid):
        values = base_grid.values.copy()
        masks = bp_single.spec.component_masks(base_grid.x)
        values[masks[1]] *= 0.5
        with pytest.raises(ModulusMismatch):
            phase_profile(base_grid, CfGrid(base_grid.x, values), bp_single.spec)

    def test_wandering_phase_detected(self, bp_single, base_grid):
        values = base_grid.values.astype(complex)
        masks = bp_single.spec.component_masks(base_grid.x)
        xs = base_grid.x[masks[1]]
        values[masks[1]] *= np.exp(1j * 0.5 * (xs - xs[0]))
        values[masks[-1]] = np.conj(values[masks[1]][::-1])
        with pytest.raises(NonConstantRatio):
            phase_profile(base_grid, CfGrid(base_grid.x, values), bp_single.spec)

    def test_grid_mismatch(self, bp_single, base_grid):
        shifted = CfGrid(base_grid.x * 2.0, base_grid.values)
        with pytest.raises(GridMismatch):
            phase_profile(base_grid, shifted, bp_single.spec)


class TestUpperBound:
    def test_degenerate_is_trivial(self, spec_k0):
        for n in (2, 3, 5, 17):
            assert cn_upper_bound(spec_k0, n) == 1

    def test_formula(self, spec_two, spec_single):
        assert cn_upper_bound(spec_two, 3) == 9
        assert cn_upper_bound(spec_single, 2) == 2

    def test_rejects_small_n(self, spec_k0):
        with pytest.raises(PhaseOutOfRange):
            cn_upper_bound(spec_k0, 1)


class TestExplore:
    def test_blueprint_family_all_pass(self, bp_single):
        grid = sample_member(bp_single, None, 5.0, 1e-3)
        results = explore_cn(grid, bp_single.spec, 3)
        assert len(results) == 3
        assert all(r.pd_pass for r in results)

    def test_degenerate_triangle_single_candidate(self, bp_k0):
        grid = sample_member(bp_k0, None, 2.0, 1e-3)
        for n in (2, 3, 5):
            results = explore_cn(grid, bp_k0.spec, n)
            assert len(results) == 1
            assert results[0].pd_pass

    def test_lopsided_candidate_fails(self, lopsided_spec, lopsided_grid):
        # the half-turn twist of the lopsided two-bump function is not
        # positive definite: the bound n**k = 2 is not attained here
        results = explore_cn(lopsided_grid, lopsided_spec, 2, t_domain=60.0)
        assert len(results) == 2
        passing = [r for r in results if r.pd_pass]
        failing = [r for r in results if not r.pd_pass]
        assert len(passing) == 1
        assert passing[0].phases.entries == (0,)
        assert failing[0].min_inverse < -1e-3

    def test_lopsided_base_is_positive_definite(self, lopsided_grid):
        rep = check_positive_definite(lopsided_grid, "quadrature", t_domain=60.0)
        assert rep.passed


class TestClassicPair:
    def test_point_values(self):
        assert classic_pair(0.5) == (0.5, 0.5)
        assert classic_pair(1.5) == (0.5, -0.5)

    def test_modulus_and_square_identities(self):
        xs = symmetric_abscissas(2.0, 1e-3)
        f, g = classic_pair(xs)
        assert np.abs(np.abs(f) - np.abs(g)).max() < 1e-14
        assert np.abs(f**2 - g**2).max() < 1e-14
        assert np.abs(f - g).max() >= 0.9

    def test_periodicity(self):
        xs = np.linspace(-3.0, 3.0, 601)
        f1, g1 = classic_pair(xs)
        f2, _ = classic_pair(xs + 2.0)
        _, g2 = classic_pair(xs + 4.0)
        np.testing.assert_allclose(f1, f2, atol=1e-12)
        np.testing.assert_allclose(g1, g2, atol=1e-12)

    def test_atom_weights_against_fourier_oracle(self):
        # oracle: numerical Fourier coefficients of the waves over one period
        for m in (1, 3, 5):
            c, _ = quad(lambda s: (1 - abs(s)) * math.cos(math.pi * m * s) / 2, -1, 1)
            assert c == pytest.approx(2.0 / (math.pi * m) ** 2, abs=1e-12)
            d, _ = quad(
                lambda s: (1 - abs(s)) * math.cos(math.pi * m * s / 2) / 4,
                -2,
                2,
                points=[0.0],
            )
            assert d == pytest.approx(4.0 / (math.pi * m) ** 2, abs=1e-12)
        for m in (2, 4):
            c, _ = quad(lambda s: (1 - abs(s)) * math.cos(math.pi * m * s) / 2, -1, 1)
            assert c == pytest.approx(0.0, abs=1e-12)

    def test_atom_tables(self):
        for which, tail in (("f", 2.1e-4), ("g", 4.1e-4)):
            atoms = classic_atoms(which, 1000)
            weights = [w for _, w in atoms]
            assert all(w > 0 for w in weights)
            assert abs(sum(weights) - 1.0) <= 8.0 / (math.pi**2 * 1000)
            assert abs(sum(weights) - 1.0) <= tail

    def test_atoms_reconstruct_the_waves(self):
        xs = np.linspace(-2.0, 2.0, 161)
        fv, gv = classic_pair(xs)
        for which, target in (("f", fv), ("g", gv)):
            atoms = classic_atoms(which, 4001)
            locs = np.array([loc for loc, _ in atoms])
            ws = np.array([w for _, w in atoms])
            recon = (np.exp(1j * np.outer(xs, locs)) @ ws).real
            assert np.abs(recon - target).max() < 2e-4


class TestBattery:
    def test_member_battery_passes(self, bp_single):
        rep = verify_member(bp_single, PhaseVector((2,), 3))
        assert rep.passed
        names = [c.name for c in rep.checks]
        assert names == [
            "hermitian",
            "support",
            "power_identity",
            "positive_definite_closed_form",
            "positive_definite_quadrature",
        ]

    def test_family_battery(self, bp_single):
        results = verify_family(bp_single, 3)
        assert len(results) == 3
        assert all(rep.passed for _, rep in results)

    def test_family_battery_parallel(self, bp_single):
        serial = verify_family(bp_single, 3)
        threaded = verify_family(bp_single, 3, jobs=3)
        assert [pv.entries for pv, _ in serial] == [pv.entries for pv, _ in threaded]
        assert all(rep.passed for _, rep in threaded)

    def test_half_infinite_battery_skips_quadrature(self, bp_half_inf):
        rep = verify_member(bp_half_inf, PhaseVector((1,), 2))
        assert rep.passed
        assert "positive_definite_quadrature" not in [c.name for c in rep.checks]
