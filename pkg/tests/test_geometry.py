import math

import mpmath
import numpy as np
import pytest

from catenoid_qm.errors import (
    ChartDomainError,
    DegenerateSectionError,
    ThroatChartError,
)
from catenoid_qm.geometry import (
    CatenoidShape,
    Chart,
    ChartPoint,
    PhysicalScales,
    catenoid_metric,
    curvature,
    embed_catenoid,
    equivalence_audit,
    geometric_potential,
    wormhole_profile,
    wormhole_section_metric,
)

mpmath.mp.dps = 30
COSH1 = float(mpmath.cosh(1))          # high-precision evaluation oracle
SECH2_1 = float(1 / mpmath.cosh(1) ** 2)


class TestEmbedding:
    def test_throat_point(self):
        p = embed_catenoid(CatenoidShape(), 0.0, 0.0)
        assert np.allclose(p, [1.0, 0.0, 0.0], atol=1e-15)

    def test_quarter_turn_symmetry(self):
        p = embed_catenoid(CatenoidShape(), 0.0, math.pi / 2)
        assert np.allclose(p, [0.0, 1.0, 0.0], atol=1e-15)

    def test_cosh_high_precision(self):
        p = embed_catenoid(CatenoidShape(), 1.0, 0.0)
        assert p[0] == pytest.approx(COSH1, abs=1e-15)
        assert p[2] == pytest.approx(1.0, abs=0)

    def test_section_scale_rescales_all_lengths(self):
        p = embed_catenoid(CatenoidShape(R=2.0, a=0.5), 1.0, 0.0)
        assert p[0] == pytest.approx(1.0 * COSH1, rel=1e-15)
        assert p[2] == pytest.approx(1.0, rel=1e-15)

    def test_zero_radius_section_rejected(self):
        with pytest.raises(DegenerateSectionError):
            embed_catenoid(CatenoidShape(a=0.0), 0.0, 0.0)

    def test_phi_domain(self):
        with pytest.raises(ChartDomainError):
            embed_catenoid(CatenoidShape(), 0.0, 2.0 * math.pi)
        with pytest.raises(ChartDomainError):
            embed_catenoid(CatenoidShape(), 0.0, -0.1)

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            CatenoidShape(R=0.0)
        with pytest.raises(ValueError):
            CatenoidShape(a=1.5)


class TestCatenoidMetric:
    def test_throat_is_unit(self):
        ms = catenoid_metric(CatenoidShape(), ChartPoint(Chart.Z_PHI, 0.0))
        assert (ms.g11, ms.g22, ms.sqrt_g) == (1.0, 1.0, 1.0)

    def test_rho_chart_example(self):
        ms = catenoid_metric(CatenoidShape(), ChartPoint(Chart.RHO_PHI, 2.0))
        assert ms.g11 == pytest.approx(4.0 / 3.0, rel=1e-15)
        assert ms.g22 == 4.0

    def test_zeta_chart_cosh_squared(self):
        ms = catenoid_metric(CatenoidShape(), ChartPoint(Chart.Z_PHI, 1.0))
        assert ms.g11 == pytest.approx(COSH1**2, rel=1e-15)
        assert ms.g22 == pytest.approx(COSH1**2, rel=1e-15)

    def test_throat_pole_refused(self):
        shape = CatenoidShape()
        with pytest.raises(ThroatChartError):
            catenoid_metric(shape, ChartPoint(Chart.RHO_PHI, 1.0))
        with pytest.raises(ThroatChartError):
            catenoid_metric(shape, ChartPoint(Chart.RHO_PHI, 1.0 + 1e-9))

    def test_below_throat_domain_error(self):
        with pytest.raises(ChartDomainError):
            catenoid_metric(CatenoidShape(), ChartPoint(Chart.RHO_PHI, 0.5))

    def test_unsupported_chart(self):
        with pytest.raises(ChartDomainError):
            catenoid_metric(CatenoidShape(), ChartPoint(Chart.ETA_PLUS, 1.0))

    def test_pullback_identity(self):
        # g_zz = g_rhorho (drho/dz)^2 with rho = aR cosh(zeta), away from the throat
        shape = CatenoidShape(R=1.0, a=0.8)
        rho0 = shape.effective_radius
        for zeta in np.linspace(0.2, 5.0, 40):
            z_side = catenoid_metric(shape, ChartPoint(Chart.Z_PHI, zeta)).g11
            rho = rho0 * math.cosh(zeta)
            rho_side = catenoid_metric(shape, ChartPoint(Chart.RHO_PHI, rho)).g11
            chain = math.sinh(zeta) ** 2  # (drho/dz)^2, z in units of aR
            assert z_side == pytest.approx(rho_side * chain, rel=1e-10)


class TestWormholeSection:
    def test_equatorial_metric(self):
        ms = wormhole_section_metric(1.0, math.pi / 2, 2.0)
        assert ms.g11 == pytest.approx(4.0 / 3.0, rel=1e-15)
        assert ms.g22 == pytest.approx(4.0, rel=1e-15)

    def test_profile_inverts_to_unit_height(self):
        b0 = 1.0
        r = b0 * math.cosh(1.0)
        assert wormhole_profile(b0, r, branch=+1) == pytest.approx(1.0, rel=1e-12)
        assert wormhole_profile(b0, r, branch=-1) == pytest.approx(-1.0, rel=1e-12)

    def test_small_section_angle(self):
        ms = wormhole_section_metric(1.0, math.pi / 6, 2.0)
        assert ms.g22 == pytest.approx(1.0, rel=1e-15)

    def test_gphiphi_matches_sin_squared_exactly(self):
        for theta0 in (0.3, 0.9, 1.4):
            for r in (1.5, 3.0, 7.5):
                ms = wormhole_section_metric(1.0, theta0, r)
                assert ms.g22 == math.sin(theta0) ** 2 * r * r

    def test_section_angle_mirror_symmetry(self):
        for theta0 in (0.2, 0.7, 1.3):
            a = wormhole_section_metric(1.0, theta0, 3.0)
            b = wormhole_section_metric(1.0, math.pi - theta0, 3.0)
            assert a.g22 == pytest.approx(b.g22, rel=1e-14)
            assert a.g11 == b.g11

    def test_throat_errors(self):
        with pytest.raises(ThroatChartError):
            wormhole_section_metric(1.0, math.pi / 2, 1.0)
        with pytest.raises(ChartDomainError):
            wormhole_section_metric(1.0, math.pi / 2, 0.9)


class TestEquivalenceAudit:
    def test_algebraic_identity_on_grid(self):
        audit = equivalence_audit(1.0, np.linspace(1.1, 10.0, 500))
        assert audit.max_rel_deviation < 1e-12

    def test_chain_rule_against_finite_differences(self):
        # independent oracle: numerical dl/dr for l(r) = sqrt(r^2 - b0^2)
        b0, r = 2.0, 3.0
        dr = 1e-6
        lp = math.sqrt((r + dr) ** 2 - b0**2)
        lm = math.sqrt((r - dr) ** 2 - b0**2)
        dl_dr_fd = (lp - lm) / (2 * dr)
        assert dl_dr_fd**2 == pytest.approx(9.0 / 5.0, rel=1e-9)
        audit = equivalence_audit(b0, np.array([r]))
        assert audit.max_rel_deviation < 1e-14
        assert dl_dr_fd == pytest.approx(3.0 / math.sqrt(5.0), rel=1e-9)

    def test_compensated_near_throat(self):
        audit = equivalence_audit(1.0, np.array([1.0 + 1e-9]))
        assert audit.max_rel_deviation < 1e-9

    def test_domain_validation(self):
        with pytest.raises(ChartDomainError):
            equivalence_audit(1.0, np.array([0.9, 2.0]))


class TestCurvature:
    def test_throat_values(self):
        cs = curvature(CatenoidShape(), 0.0)
        assert (cs.kappa1, cs.kappa2, cs.H, cs.K) == (1.0, -1.0, 0.0, -1.0)

    def test_asymptotically_flat(self):
        for zeta in (10.0, -10.0):
            cs = curvature(CatenoidShape(), zeta)
            assert abs(cs.kappa1) < 1e-4
            assert abs(cs.K) < 1e-8

    def test_sech_squared_high_precision(self):
        cs = curvature(CatenoidShape(), 1.0)
        assert cs.kappa1 == pytest.approx(SECH2_1, abs=1e-15)

    @pytest.mark.parametrize("a", [0.3, 0.77, 1.0])
    def test_minimal_surface_identity(self, a):
        zeta = np.linspace(-10.0, 10.0, 2001)
        cs = curvature(CatenoidShape(a=a), zeta)
        assert np.max(np.abs(cs.H)) < 1e-12

    @pytest.mark.parametrize("a", [0.4, 1.0])
    def test_gauss_curvature_closed_form(self, a):
        zeta = np.linspace(-10.0, 10.0, 2001)
        shape = CatenoidShape(a=a)
        cs = curvature(shape, zeta)
        closed = -(1.0 / shape.effective_radius**2) / np.cosh(zeta) ** 4
        assert np.max(np.abs(cs.K - closed)) < 1e-12

    def test_degenerate_error(self):
        with pytest.raises(DegenerateSectionError):
            curvature(CatenoidShape(a=0.0), 0.0)


class TestGeometricPotential:
    def test_throat_depth(self):
        v = geometric_potential(CatenoidShape(), PhysicalScales(), 0.0)
        assert v == -0.5

    def test_flat_asymptotics(self):
        v = geometric_potential(CatenoidShape(), PhysicalScales(), 20.0)
        assert abs(v) < 1e-8

    def test_narrow_section_deepens_well(self):
        v = geometric_potential(CatenoidShape(a=0.1), PhysicalScales(), 0.0)
        assert v == pytest.approx(-50.0, rel=1e-13)

    def test_dual_form_agreement(self):
        # -(hbar^2/2m)(H^2-K) against -(hbar^2/8m)(kappa1-kappa2)^2, pointwise
        shape = CatenoidShape(a=0.6)
        scales = PhysicalScales(m0=2.0, hbar=0.5)
        zeta = np.linspace(-8.0, 8.0, 1001)
        v = geometric_potential(shape, scales, zeta)
        cs = curvature(shape, zeta)
        principal = -(scales.hbar**2 / (8.0 * scales.m0)) * (cs.kappa1 - cs.kappa2) ** 2
        rel = np.abs(v - principal) / np.abs(principal)
        assert np.max(rel) < 1e-13

    def test_scales_bijection(self):
        scales = PhysicalScales(m0=3.0, hbar=2.0, R=1.5)
        for energy in (-1.2, 0.0, 0.7):
            assert scales.energy_from_eps(scales.eps_from_energy(energy)) == pytest.approx(
                energy, abs=1e-15
            )

    def test_scales_validation(self):
        with pytest.raises(ValueError):
            PhysicalScales(m0=-1.0)
