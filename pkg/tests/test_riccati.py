"""Tests for the stereographic/Riccati/Moebius reconstruction route."""

import math

import numpy as np
import pytest

from curverec import (
    INFINITY,
    ArcLengthGrid,
    CoincidentSolutionsError,
    ConstantProfile,
    FundamentalMatrix,
    HelixSpec,
    InputError,
    IntegrationDriftError,
    MobiusPair,
    PoleError,
    SignVariant,
    SingularMatrixError,
    frame_from_wz,
    generator,
    integrate_fundamental,
    linear_rhs,
    mobius_eval,
    reconstruct_curve,
    riccati_from_linear_u,
    riccati_rhs,
    scheffers_tangent,
    tangent_components,
    wz_from_frame,
)
from curverec.helix import fundamental_closed_form_samples, helix_derived

from helpers import (
    random_det1_matrix,
    random_unit_vectors,
    random_unitary_det1,
    scalar_riccati_rk4,
)


class TestSignVariant:
    def test_two_values(self):
        assert set(SignVariant) == {SignVariant.PLUS, SignVariant.MINUS}

    def test_sigma(self):
        assert SignVariant.PLUS.sigma == 1.0
        assert SignVariant.MINUS.sigma == -1.0


class TestStereographicMaps:
    def test_x_axis(self):
        pair = wz_from_frame(np.array([1.0, 0.0, 0.0]))
        assert pair.w == pytest.approx(1.0)
        assert pair.z == pytest.approx(-1.0)

    def test_y_axis(self):
        pair = wz_from_frame(np.array([0.0, 1.0, 0.0]))
        assert pair.w == pytest.approx(1j)
        assert pair.z == pytest.approx(-1j)

    def test_north_pole_rejected(self):
        with pytest.raises(PoleError):
            wz_from_frame(np.array([0.0, 0.0, 1.0]))

    def test_non_unit_rejected(self):
        with pytest.raises(InputError):
            wz_from_frame(np.array([1.0, 1.0, 0.0]))

    def test_conjugacy_invariant(self):
        rng = np.random.default_rng(5)
        for v in random_unit_vectors(rng, 100, v3_max=0.999):
            assert wz_from_frame(v).conjugacy_residual() <= 1e-9

    def test_inverse_examples(self):
        np.testing.assert_allclose(
            frame_from_wz(MobiusPair(1.0, -1.0)), [1.0, 0.0, 0.0], atol=1e-15
        )
        np.testing.assert_allclose(
            frame_from_wz(MobiusPair(1j, -1j)), [0.0, 1.0, 0.0], atol=1e-15
        )

    def test_coincident_rejected(self):
        with pytest.raises(CoincidentSolutionsError):
            frame_from_wz(MobiusPair(0.3 + 0.1j, 0.3 + 0.1j))

    def test_round_trip_500(self):
        rng = np.random.default_rng(17)
        for v in random_unit_vectors(rng, 500, v3_max=0.999):
            recovered = frame_from_wz(wz_from_frame(v))
            assert np.abs(recovered.imag).max() <= 1e-10
            np.testing.assert_allclose(recovered.real, v, rtol=0.0, atol=1e-10)


class TestRiccatiRhs:
    def test_helix_root_is_fixed_point(self):
        assert riccati_rhs(2.0, 0.12, 0.16, SignVariant.PLUS) == pytest.approx(
            0.0, abs=1e-15
        )

    def test_torsion_free_reduction(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            w = complex(*rng.standard_normal(2))
            kappa = rng.uniform(0.0, 3.0)
            for variant in SignVariant:
                assert riccati_rhs(w, kappa, 0.0, variant) == pytest.approx(
                    -1j * kappa * w
                )

    def test_minus_is_plus_with_negated_torsion(self):
        rng = np.random.default_rng(29)
        for _ in range(50):
            w = complex(*rng.standard_normal(2))
            kappa, tau = rng.uniform(-2.0, 2.0, size=2)
            assert riccati_rhs(w, kappa, tau, SignVariant.MINUS) == riccati_rhs(
                w, kappa, -tau, SignVariant.PLUS
            )


class TestLinearization:
    def test_generator_trace_free(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            kappa, tau = rng.uniform(-3.0, 3.0, size=2)
            for variant in SignVariant:
                g = generator(kappa, tau, variant)
                assert abs(np.trace(g)) == 0.0

    def test_generator_torsion_free_diagonal(self):
        g = generator(1.0, 0.0, SignVariant.PLUS)
        np.testing.assert_array_equal(g, np.diag([-0.5j, 0.5j]))

    def test_linear_rhs_is_left_multiplication(self):
        m = FundamentalMatrix(1.0 + 0.2j, 0.3j, -0.1, 0.9 - 0.4j)
        g = generator(0.7, 0.4, SignVariant.MINUS)
        np.testing.assert_allclose(
            linear_rhs(m, 0.7, 0.4, SignVariant.MINUS), g @ m.matrix
        )

    def test_one_step_quotient_matches_scalar(self):
        # One RK4 step of the 2x2 flow, pushed through the Moebius map at
        # c=0.3, must match one RK4 step of the scalar Riccati equation.
        profile = ConstantProfile(0.12, 0.16)
        grid = ArcLengthGrid(0.0, 1e-3, 2)
        samples = integrate_fundamental(profile, grid, SignVariant.PLUS)
        scalar = scalar_riccati_rk4(profile, grid, 0.3, SignVariant.PLUS)
        _, m = samples[1]
        assert abs(mobius_eval(m, 0.3) - scalar[1]) <= 1e-12


class TestIntegrateFundamental:
    def test_zero_profile_stays_identity(self):
        grid = ArcLengthGrid(0.0, 5.0, 10)
        samples = integrate_fundamental(ConstantProfile(0.0, 0.0), grid, SignVariant.PLUS)
        for i in range(len(samples)):
            np.testing.assert_array_equal(samples.matrices[i], np.eye(2))

    def test_starts_at_identity(self):
        grid = ArcLengthGrid(0.0, 1.0, 4)
        samples = integrate_fundamental(HelixSpec(3.0, 4.0), grid, SignVariant.MINUS)
        np.testing.assert_array_equal(samples.matrices[0], np.eye(2))

    def test_determinants_one(self):
        grid = ArcLengthGrid(0.0, 10.0 * math.pi, 3142)
        for variant in SignVariant:
            samples = integrate_fundamental(HelixSpec(3.0, 4.0), grid, variant)
            assert np.abs(samples.determinants() - 1.0).max() <= 1e-10

    def test_matches_closed_form_exponential(self):
        derived = helix_derived(3.0, 4.0)
        grid = ArcLengthGrid(0.0, 10.0 * math.pi, 3142)  # h ~ 1e-2
        for variant in SignVariant:
            numeric = integrate_fundamental(HelixSpec(3.0, 4.0), grid, variant)
            exact = fundamental_closed_form_samples(derived, grid.nodes(), variant)
            assert np.abs(numeric.matrices - exact.matrices).max() <= 1e-8

    def test_unitary_for_real_profiles(self):
        grid = ArcLengthGrid(0.0, 20.0, 2000)
        samples = integrate_fundamental(HelixSpec(1.0, 2.0), grid, SignVariant.PLUS)
        for i in (0, 500, 2000):
            _, m = samples[i]
            assert m.unitarity_residual() <= 1e-9

    def test_sign_relation_between_variants(self):
        profile = ConstantProfile(0.3, 0.45)
        negated = ConstantProfile(0.3, -0.45)
        grid = ArcLengthGrid(0.0, 8.0, 800)
        minus = integrate_fundamental(profile, grid, SignVariant.MINUS)
        plus_neg = integrate_fundamental(negated, grid, SignVariant.PLUS)
        assert np.abs(minus.matrices - plus_neg.matrices).max() <= 1e-12


class TestMobiusEval:
    def test_identity_fixes_points(self):
        m = FundamentalMatrix.identity()
        assert mobius_eval(m, 0.7 + 0.2j) == 0.7 + 0.2j

    def test_identity_at_infinity_is_pole(self):
        with pytest.raises(PoleError):
            mobius_eval(FundamentalMatrix.identity(), INFINITY)

    def test_infinity_maps_to_column_ratio(self):
        m = FundamentalMatrix(2.0, 1.0, 1.0, 1.0)
        assert mobius_eval(m, INFINITY) == pytest.approx(2.0)

    def test_finite_pole(self):
        m = FundamentalMatrix(1.0, 0.0, 1.0, -0.5)
        with pytest.raises(PoleError):
            mobius_eval(m, 0.5)

    def test_group_property_200(self):
        rng = np.random.default_rng(41)
        for _ in range(200):
            a = random_det1_matrix(rng)
            b = random_det1_matrix(rng)
            c = complex(*rng.standard_normal(2))
            composed = mobius_eval(FundamentalMatrix.from_matrix(a @ b), c)
            chained = mobius_eval(
                FundamentalMatrix.from_matrix(a),
                mobius_eval(FundamentalMatrix.from_matrix(b), c),
            )
            assert abs(composed - chained) <= 1e-10 * max(1.0, abs(composed))


class TestScheffersTangent:
    def test_identity_gives_x_axis(self):
        np.testing.assert_allclose(
            scheffers_tangent(FundamentalMatrix.identity()), [1.0, 0.0, 0.0], atol=1e-15
        )

    def test_quarter_rotation_gives_z_axis(self):
        r = math.sqrt(0.5)
        tangent = scheffers_tangent(FundamentalMatrix(r, -r, r, r))
        np.testing.assert_allclose(tangent, [0.0, 0.0, 1.0], atol=1e-15)

    def test_unit_norm_over_500_unitaries(self):
        rng = np.random.default_rng(43)
        for _ in range(500):
            m = FundamentalMatrix.from_matrix(random_unitary_det1(rng))
            tangent = scheffers_tangent(m)
            assert np.abs(tangent.imag).max() <= 1e-12
            assert abs(np.linalg.norm(tangent.real) - 1.0) <= 1e-12

    def test_sphere_sum_for_det1_matrices(self):
        # The complexified sphere identity holds for any det-1 matrix,
        # unitary or not.
        rng = np.random.default_rng(47)
        for _ in range(500):
            m = FundamentalMatrix.from_matrix(random_det1_matrix(rng))
            tangent = scheffers_tangent(m)
            assert abs(np.sum(tangent**2) - 1.0) <= 1e-10

    def test_singular_matrix_rejected(self):
        with pytest.raises(SingularMatrixError):
            scheffers_tangent(FundamentalMatrix(1.0, 1.0, 1.0, 1.0))


class TestScalarProjectiveEquivalence:
    def test_agrees_when_no_pole_crossing(self):
        profile = HelixSpec(3.0, 4.0)
        grid = ArcLengthGrid(0.0, 10.0, 10000)  # h = 1e-3
        c = 0.3
        scalar = scalar_riccati_rk4(profile, grid, c, SignVariant.PLUS)
        assert np.abs(scalar).max() <= 10.0  # no pole crossing on this run
        samples = integrate_fundamental(profile, grid, SignVariant.PLUS)
        projective = np.array(
            [mobius_eval(samples[i][1], c) for i in range(len(samples))]
        )
        assert np.abs(projective - scalar).max() <= 1e-6


class TestTangentComponents:
    def test_plus_and_minus_give_identical_tangents(self):
        grid = ArcLengthGrid(0.0, 20.0, 2000)
        profile = HelixSpec(3.0, 4.0)
        plus = tangent_components(integrate_fundamental(profile, grid, SignVariant.PLUS))
        minus = tangent_components(
            integrate_fundamental(profile, grid, SignVariant.MINUS)
        )
        np.testing.assert_array_equal(plus, minus)

    def test_starts_at_canonical_tangent(self):
        grid = ArcLengthGrid(0.0, 1.0, 2)
        samples = integrate_fundamental(ConstantProfile(1.0, 0.5), grid, SignVariant.PLUS)
        tangents = tangent_components(samples)
        np.testing.assert_allclose(tangents[0], [1.0, 0.0, 0.0], atol=1e-15)


class TestReconstructCurve:
    def test_zero_profile_gives_straight_line(self):
        grid = ArcLengthGrid(0.0, 1.0, 10)
        curve = reconstruct_curve(ConstantProfile(0.0, 0.0), grid)
        np.testing.assert_allclose(
            curve.positions[:, 0], grid.nodes(), rtol=0.0, atol=1e-15
        )
        assert not curve.positions[:, 1:].any()

    def test_variants_coincide_on_helix(self):
        grid = ArcLengthGrid(0.0, 4.0 * math.pi * 5.0, 6284)
        plus = reconstruct_curve(HelixSpec(3.0, 4.0), grid, SignVariant.PLUS)
        minus = reconstruct_curve(HelixSpec(3.0, 4.0), grid, SignVariant.MINUS)
        assert np.abs(plus.positions - minus.positions).max() <= 1e-8

    def test_start_applied(self):
        grid = ArcLengthGrid(0.0, 1.0, 4)
        start = np.array([1.0, 2.0, 3.0])
        curve = reconstruct_curve(ConstantProfile(0.0, 0.0), grid, start=start)
        np.testing.assert_allclose(curve.positions[0], start)

    def test_unreachable_imag_tolerance_raises(self):
        grid = ArcLengthGrid(0.0, 10.0, 1000)
        with pytest.raises(IntegrationDriftError):
            reconstruct_curve(
                HelixSpec(3.0, 4.0), grid, SignVariant.PLUS, imag_tol=1e-30
            )


class TestRiccatiFromLinearU:
    def test_decaying_exponential_gives_first_root(self):
        kappa, tau = 0.12, 0.16
        omega = math.hypot(kappa, tau)
        lam = (-1j * kappa - 1j * omega) / 2.0
        s = 0.37
        u = np.exp(lam * s)
        w = riccati_from_linear_u(u, lam * u, tau, SignVariant.PLUS)
        assert w == pytest.approx((kappa + omega) / tau, abs=1e-12)
        assert w == pytest.approx(2.0, abs=1e-12)

    def test_growing_exponential_gives_second_root(self):
        kappa, tau = 0.12, 0.16
        omega = math.hypot(kappa, tau)
        lam = (-1j * kappa + 1j * omega) / 2.0
        u = np.exp(lam * 1.9)
        w = riccati_from_linear_u(u, lam * u, tau, SignVariant.PLUS)
        assert w == pytest.approx(-0.5, abs=1e-12)

    def test_stationary_u_gives_zero(self):
        assert riccati_from_linear_u(1.0, 0.0, 0.7, SignVariant.MINUS) == 0.0

    def test_zero_u_rejected(self):
        with pytest.raises(InputError):
            riccati_from_linear_u(0.0, 1.0, 0.7, SignVariant.PLUS)

    def test_zero_tau_rejected(self):
        with pytest.raises(InputError):
            riccati_from_linear_u(1.0, 1.0, 0.0, SignVariant.PLUS)

    def test_minus_variant_flips_sign(self):
        plus = riccati_from_linear_u(1.0 + 1j, 0.5j, 0.3, SignVariant.PLUS)
        minus = riccati_from_linear_u(1.0 + 1j, 0.5j, 0.3, SignVariant.MINUS)
        assert minus == -plus
