import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from euler_engine.errors import (
    BoundaryCenter,
    IdentityInput,
    InvalidAngle,
    NonPositiveDeterminant,
    NotBoundaryFixing,
    NotElliptic,
)
from euler_engine.moebius import (
    IDENTITY,
    IsometryClass,
    angle_gap,
    apply_point,
    canonicalize,
    circle_map,
    classify,
    disk_to_upper,
    elliptic_about,
    fixed_boundary_angles,
    hyperbolic_distance,
    is_marginal,
    isometry_matching,
    one_param,
    polar_point,
    rotation_about_origin,
    rotation_angle,
    translation_along_axis,
    upper_to_disk,
)
from tests.conftest import hyperbolic_matrices, isometries


def A(theta):
    return canonicalize([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])


def close(M, N, tol=1e-9):
    return M.distance(N) <= tol


class TestCanonicalize:
    def test_minus_identity(self):
        assert canonicalize([[-1.0, 0.0], [0.0, -1.0]]) == IDENTITY

    def test_scaling(self):
        assert canonicalize([[2.0, 0.0], [0.0, 2.0]]) == IDENTITY

    def test_trace_zero_sign_rule(self):
        M = canonicalize([[0.0, 1.0], [-1.0, 0.0]])
        assert M.as_list() == [[0.0, -1.0], [1.0, 0.0]]

    def test_non_positive_determinant(self):
        with pytest.raises(NonPositiveDeterminant):
            canonicalize([[1.0, 0.0], [0.0, -1.0]])
        with pytest.raises(NonPositiveDeterminant):
            canonicalize([[1.0, 1.0], [1.0, 1.0]])

    @given(isometries())
    def test_idempotent_and_sign_free(self, M):
        assert canonicalize(M.array) == M
        assert canonicalize(-M.array) == M
        assert abs(np.linalg.det(M.array) - 1.0) < 1e-12


class TestClassify:
    def test_examples(self):
        assert classify(canonicalize([[1.0, 1.0], [0.0, 1.0]])) is IsometryClass.PARABOLIC
        assert classify(canonicalize([[0.0, -1.0], [1.0, 0.0]])) is IsometryClass.ELLIPTIC
        assert classify(canonicalize([[2.0, 0.0], [0.0, 0.5]])) is IsometryClass.HYPERBOLIC
        assert classify(IDENTITY) is IsometryClass.IDENTITY

    def test_marginal_flag(self):
        M = canonicalize([[1.0 + 1e-11, 1.0], [0.0, 1.0 / (1.0 + 1e-11)]])
        assert classify(M) is IsometryClass.PARABOLIC
        assert not is_marginal(canonicalize([[1.0, 1.0], [0.0, 1.0]]))

    @settings(max_examples=200)
    @given(isometries(), isometries())
    def test_conjugation_invariant(self, M, g):
        # skip elements sitting on a classification threshold
        if abs(abs(M.trace) - 2.0) < 1e-6 or M.distance(IDENTITY) < 1e-6:
            return
        assert classify(M.conjugate_by(g)) is classify(M)


class TestRotationAngle:
    def test_examples(self):
        assert rotation_angle(A(math.pi / 4)) == pytest.approx(math.pi / 2, abs=1e-12)
        assert rotation_angle(canonicalize([[0.0, -1.0], [1.0, 0.0]])) == pytest.approx(math.pi, abs=1e-12)
        assert rotation_angle(A(-math.pi / 4)) == pytest.approx(3 * math.pi / 2, abs=1e-12)

    def test_matches_circle_map(self):
        M = A(0.4)
        for phi in (0.0, 1.0, 4.0):
            assert angle_gap(circle_map(M, phi), phi + rotation_angle(M)) < 1e-12

    def test_not_elliptic(self):
        with pytest.raises(NotElliptic):
            rotation_angle(canonicalize(np.diag([2.0, 0.5])))

    @given(st.floats(0.1, 2.0), st.floats(0.1, 2.0))
    def test_additive_about_common_center(self, alpha, beta):
        M = elliptic_about(0.3 + 2j, alpha)
        N = elliptic_about(0.3 + 2j, beta)
        total = (alpha + beta) % (2 * math.pi)
        assert angle_gap(rotation_angle(M @ N), total) < 1e-8


class TestFixedAngles:
    def test_parabolic_fixes_infinity(self):
        # infinity sits at angle 2 * arg(1) = 0 of the chart
        (phi,) = fixed_boundary_angles(canonicalize([[1.0, 1.0], [0.0, 1.0]]))
        assert angle_gap(phi, 0.0) < 1e-12

    def test_diagonal(self):
        att, rep = fixed_boundary_angles(canonicalize(np.diag([2.0, 0.5])))
        # attracting fixed point is infinity, repelling is 0 = angle pi
        assert angle_gap(att, 0.0) < 1e-12
        assert angle_gap(rep, math.pi) < 1e-12

    def test_plus_minus_one(self):
        M = canonicalize([[math.cosh(1), math.sinh(1)], [math.sinh(1), math.cosh(1)]])
        angles = sorted(fixed_boundary_angles(M))
        # x = 1 -> 2*arg(1+i) = pi/2, x = -1 -> 2*arg(-1+i) = 3*pi/2
        assert angles == pytest.approx([math.pi / 2, 3 * math.pi / 2], abs=1e-12)

    def test_elliptic_has_none(self):
        with pytest.raises(NotBoundaryFixing):
            fixed_boundary_angles(A(0.3))

    @given(hyperbolic_matrices())
    def test_fixed(self, M):
        for phi in fixed_boundary_angles(M):
            assert angle_gap(circle_map(M, phi), phi) < 1e-8


class TestOneParam:
    def test_parabolic(self):
        U = canonicalize([[1.0, 1.0], [0.0, 1.0]])
        assert close(one_param(U, 2.0), canonicalize([[1.0, 2.0], [0.0, 1.0]]))

    def test_diagonal(self):
        M = canonicalize(np.diag([math.e, 1 / math.e]))
        assert close(one_param(M, 0.3), canonicalize(np.diag([math.exp(0.3), math.exp(-0.3)])))

    def test_rotation(self):
        assert close(one_param(A(math.pi / 4), 2.0), A(math.pi / 2))

    def test_identity(self):
        with pytest.raises(IdentityInput):
            one_param(IDENTITY, 0.5)

    @given(isometries(), st.floats(-1.5, 1.5), st.floats(-1.5, 1.5))
    def test_subgroup_laws(self, M, s, t):
        if abs(abs(M.trace) - 2.0) < 1e-3 or M.distance(IDENTITY) < 1e-3 or abs(M.trace) > 20:
            return
        assert close(one_param(M, 1.0), M, 1e-9)
        assert close(one_param(M, s) @ one_param(M, t), one_param(M, s + t), 1e-8)
        Mt = one_param(M, t)
        assert close(M @ Mt, Mt @ M, 1e-8)


class TestEllipticAbout:
    def test_half_turn_at_i(self):
        assert close(elliptic_about(1j, math.pi), canonicalize([[0.0, -1.0], [1.0, 0.0]]))

    def test_trace(self):
        assert elliptic_about(1j, 2 * math.pi / 3).trace == pytest.approx(1.0, abs=1e-12)

    def test_errors(self):
        with pytest.raises(InvalidAngle):
            elliptic_about(1j, 0.0)
        with pytest.raises(InvalidAngle):
            elliptic_about(1j, 2 * math.pi)
        with pytest.raises(BoundaryCenter):
            elliptic_about(1.0 + 0j, 1.0)

    @given(isometries(), st.floats(0.1, 6.0))
    def test_equivariance(self, g, alpha):
        z = 0.2 + 1.3j
        M = elliptic_about(z, alpha)
        assert abs(apply_point(M, z) - z) < 1e-9
        assert rotation_angle(M) == pytest.approx(alpha, abs=1e-9)
        assert close(elliptic_about(apply_point(g, z), alpha), M.conjugate_by(g), 1e-8)


class TestCircleMap:
    def test_identity(self):
        assert circle_map(IDENTITY, 1.234) == pytest.approx(1.234)

    def test_rotation_about_origin(self):
        assert circle_map(rotation_about_origin(0.7), 2.0) == pytest.approx(2.7)

    @given(isometries(), st.floats(0.0, 6.28), st.floats(0.0, 6.28))
    def test_orientation_preserving(self, M, x, y):
        # images keep the cyclic order of three points
        lo, hi = sorted((x, y))
        if hi - lo < 1e-3 or 2 * math.pi - (hi - lo) < 1e-3:
            return
        mid = 0.5 * (lo + hi)
        base = circle_map(M, lo)
        offsets = [(circle_map(M, p) - base) % (2 * math.pi) for p in (mid, hi)]
        assert offsets[0] < offsets[1]


class TestDistance:
    def test_sign_representatives_near_trace_zero(self):
        # trace +1e-17 and -1e-17 canonicalize to opposite signs of one element
        M = canonicalize([[1e-17, -1.0], [1.0, 0.0]])
        N = canonicalize([[0.0, 1.0], [-1.0, 1e-17]])
        assert M.distance(N) < 1e-12

    @given(isometries(), isometries())
    def test_symmetric(self, M, N):
        assert M.distance(N) == N.distance(M)
        assert M.distance(M) == 0.0


class TestPlaneHelpers:
    def test_polar_point_distance(self):
        assert hyperbolic_distance(1j, polar_point(1.3, 0.4)) == pytest.approx(1.3, abs=1e-12)

    @given(isometries())
    def test_isometry_matching(self, g):
        p0, p1 = polar_point(0.5, 0.1), polar_point(0.9, 1.0)
        q0, q1 = apply_point(g, p0), apply_point(g, p1)
        M = isometry_matching(p0, p1, q0, q1)
        assert abs(apply_point(M, p0) - q0) < 1e-8
        assert abs(apply_point(M, p1) - q1) < 1e-8
        assert M.distance(g) < 1e-7

    def test_disk_chart_matches_boundary_chart(self):
        assert disk_to_upper(0j) == pytest.approx(1j)
        for x in (-3.0, 0.0, 0.5, 2.0):
            w = upper_to_disk(complex(x, 0.0))
            assert abs(w) == pytest.approx(1.0)
            assert angle_gap(math.atan2(w.imag, w.real), 2 * math.atan2(1.0, x)) < 1e-12

    def test_chart_round_trip(self):
        z = 0.4 + 0.7j
        assert abs(disk_to_upper(upper_to_disk(z)) - z) < 1e-12

    def test_translation_length(self):
        T = translation_along_axis(1.7)
        assert hyperbolic_distance(1j, apply_point(T, 1j)) == pytest.approx(1.7, abs=1e-12)
        att, _ = fixed_boundary_angles(T)
        assert angle_gap(att, 0.0) < 1e-12
