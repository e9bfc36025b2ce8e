"""Rotation kernel tests: conversions, slerp, track sampling."""

import math

import numpy as np
import pytest

from oracles import (
    BASIS,
    matrix_to_quaternion,
    quaternion_to_matrix,
    random_unit_quaternion,
    ypr_matrix,
)
from signforge.errors import GimbalLockError, InvalidArgumentError
from signforge.rotation import (
    AxisAngle,
    EulerYPR,
    Quaternion,
    RotationKey,
    angular_distance,
    axis_angle_to_quaternion,
    quaternion_to_axis_angle,
    quaternion_to_ypr,
    sample_track,
    slerp,
    ypr_gimbal_tolerant,
    ypr_to_quaternion,
)

SQ2 = math.sqrt(0.5)


def quat(w, x, y, z):
    return Quaternion(w, x, y, z).normalized()


def assert_same_rotation(a: Quaternion, b: Quaternion, tol=1e-9):
    assert angular_distance(a, b) <= tol


class TestYprConversion:
    def test_identity(self):
        q = ypr_to_quaternion(EulerYPR(0.0, 0.0, 0.0))
        assert q == Quaternion(1.0, 0.0, 0.0, 0.0)

    def test_pure_yaw(self):
        q = ypr_to_quaternion(EulerYPR(math.pi / 2, 0.0, 0.0))
        assert abs(q.w - SQ2) < 1e-12
        assert abs(q.y - SQ2) < 1e-12
        assert abs(q.x) < 1e-12 and abs(q.z) < 1e-12

    def test_yaw_pitch_matches_matrix_oracle(self):
        m = ypr_matrix(math.pi / 2, math.pi / 2, 0.0)
        expect = matrix_to_quaternion(m)
        q = ypr_to_quaternion(EulerYPR(math.pi / 2, math.pi / 2, 0.0))
        assert_same_rotation(q, quat(*expect))

    def test_non_finite_rejected(self):
        with pytest.raises(InvalidArgumentError):
            ypr_to_quaternion(EulerYPR(math.nan, 0.0, 0.0))
        with pytest.raises(InvalidArgumentError):
            ypr_to_quaternion(EulerYPR(0.0, math.inf, 0.0))

    def test_composition_oracle_1000_samples(self):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            yaw, pitch, roll = rng.uniform(-math.pi, math.pi, size=3)
            q = ypr_to_quaternion(EulerYPR(yaw, pitch, roll))
            expect = matrix_to_quaternion(ypr_matrix(yaw, pitch, roll))
            assert_same_rotation(q, quat(*expect), 1e-9)

    def test_unit_norm_outputs(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            q = ypr_to_quaternion(EulerYPR(*rng.uniform(-math.pi, math.pi, size=3)))
            assert abs(q.norm() - 1.0) < 1e-9
            assert q.w >= 0.0


class TestYprInverse:
    def test_identity(self):
        e = quaternion_to_ypr(Quaternion.identity())
        assert e == EulerYPR(0.0, 0.0, 0.0)

    def test_pure_yaw_inverse(self):
        e = quaternion_to_ypr(Quaternion(SQ2, 0.0, SQ2, 0.0))
        assert abs(e.yaw - math.pi / 2) < 1e-12
        assert abs(e.pitch) < 1e-12 and abs(e.roll) < 1e-12

    def test_round_trip_10k(self):
        rng = np.random.default_rng(13)
        for _ in range(10_000):
            yaw, roll = rng.uniform(-math.pi, math.pi, size=2)
            pitch = rng.uniform(-1.4, 1.4)
            q = ypr_to_quaternion(EulerYPR(yaw, pitch, roll))
            back = ypr_to_quaternion(quaternion_to_ypr(q))
            assert_same_rotation(q, back, 1e-9)

    def test_gimbal_band_raises(self):
        q = ypr_to_quaternion(EulerYPR(0.3, math.pi / 2, 0.0))
        with pytest.raises(GimbalLockError):
            quaternion_to_ypr(q)

    def test_gimbal_tolerant_extraction(self):
        q = ypr_to_quaternion(EulerYPR(0.3, math.pi / 2, 0.0))
        e = ypr_gimbal_tolerant(q)
        assert e.roll == 0.0
        assert_same_rotation(ypr_to_quaternion(e), q, 1e-9)

    def test_non_unit_rejected(self):
        with pytest.raises(InvalidArgumentError):
            quaternion_to_ypr(Quaternion(1.0, 1.0, 0.0, 0.0))


class TestAxisAngle:
    def test_zero_angle_is_identity(self):
        assert axis_angle_to_quaternion(AxisAngle((0.0, 0.0, 1.0), 0.0)) == Quaternion.identity()

    def test_quarter_turn_about_y(self):
        q = axis_angle_to_quaternion(AxisAngle((0.0, 1.0, 0.0), math.pi / 2))
        assert_same_rotation(q, Quaternion(SQ2, 0.0, SQ2, 0.0), 1e-12)

    def test_identity_canonical_axis(self):
        aa = quaternion_to_axis_angle(Quaternion.identity())
        assert aa.axis == (0.0, 0.0, 1.0)
        assert aa.angle == 0.0

    def test_named_inverse(self):
        aa = quaternion_to_axis_angle(Quaternion(SQ2, 0.0, SQ2, 0.0))
        assert abs(aa.angle - math.pi / 2) < 1e-9
        assert abs(aa.axis[1] - 1.0) < 1e-9

    def test_zero_axis_nonzero_angle_rejected(self):
        with pytest.raises(InvalidArgumentError):
            axis_angle_to_quaternion(AxisAngle((0.0, 0.0, 0.0), 1.0))

    def test_round_trip_10k(self):
        rng = np.random.default_rng(17)
        for _ in range(10_000):
            v = rng.normal(size=3)
            axis = tuple(v / np.linalg.norm(v))
            angle = rng.uniform(0.0, math.pi)
            q = axis_angle_to_quaternion(AxisAngle(axis, angle))
            back = axis_angle_to_quaternion(quaternion_to_axis_angle(q))
            assert_same_rotation(q, back, 1e-9)

    def test_negative_w_same_rotation_via_matrix_oracle(self):
        rng = np.random.default_rng(19)
        for _ in range(200):
            w, x, y, z = random_unit_quaternion(rng)
            q = Quaternion(-abs(w), x, y, z).normalized()
            aa = quaternion_to_axis_angle(q)
            back = axis_angle_to_quaternion(aa)
            m_orig = quaternion_to_matrix(q.w, q.x, q.y, q.z)
            m_back = quaternion_to_matrix(back.w, back.x, back.y, back.z)
            for e in BASIS:
                assert np.max(np.abs(m_orig @ e - m_back @ e)) < 1e-9

    def test_angle_range_canonical(self):
        rng = np.random.default_rng(23)
        for _ in range(1000):
            q = Quaternion(*random_unit_quaternion(rng))
            aa = quaternion_to_axis_angle(q)
            assert 0.0 <= aa.angle <= math.pi + 1e-12


class TestSlerp:
    def test_degenerate_same_rotation(self):
        q = ypr_to_quaternion(EulerYPR(0.4, 0.2, -0.1))
        assert slerp(q, q, 0.5) == q

    def test_midpoint_of_quarter_turn(self):
        q1 = ypr_to_quaternion(EulerYPR(math.pi / 2, 0.0, 0.0))
        mid = slerp(Quaternion.identity(), q1, 0.5)
        expect = Quaternion(math.cos(math.pi / 8), 0.0, math.sin(math.pi / 8), 0.0)
        assert_same_rotation(mid, expect, 1e-12)

    def test_endpoints_exact(self):
        rng = np.random.default_rng(29)
        for _ in range(1000):
            q0 = Quaternion(*random_unit_quaternion(rng))
            q1 = Quaternion(*random_unit_quaternion(rng))
            assert angular_distance(slerp(q0, q1, 0.0), q0) <= 1e-12
            assert angular_distance(slerp(q0, q1, 1.0), q1) <= 1e-12

    def test_constant_angular_velocity(self):
        rng = np.random.default_rng(31)
        for _ in range(1000):
            q0 = Quaternion(*random_unit_quaternion(rng))
            q1 = Quaternion(*random_unit_quaternion(rng))
            total = angular_distance(q0, q1)
            t = float(rng.uniform())
            assert abs(angular_distance(slerp(q0, q1, t), q0) - t * total) <= 1e-9

    def test_shortest_path_monotone(self):
        rng = np.random.default_rng(37)
        for _ in range(200):
            q0 = Quaternion(*random_unit_quaternion(rng))
            q1 = Quaternion(*random_unit_quaternion(rng))
            distances = [angular_distance(slerp(q0, q1, t), q0) for t in np.linspace(0, 1, 9)]
            assert all(d1 >= d0 - 1e-12 for d0, d1 in zip(distances, distances[1:]))
            assert distances[-1] <= math.pi + 1e-9

    def test_parameter_range_enforced(self):
        q = Quaternion.identity()
        with pytest.raises(InvalidArgumentError):
            slerp(q, q, -0.01)
        with pytest.raises(InvalidArgumentError):
            slerp(q, q, 1.01)

    def test_unit_norm_outputs(self):
        rng = np.random.default_rng(41)
        for _ in range(500):
            q0 = Quaternion(*random_unit_quaternion(rng))
            q1 = Quaternion(*random_unit_quaternion(rng))
            assert abs(slerp(q0, q1, float(rng.uniform())).norm() - 1.0) < 1e-9


class TestAngularDistance:
    def test_zero_for_same(self):
        q = ypr_to_quaternion(EulerYPR(1.0, 0.5, -0.7))
        assert angular_distance(q, q) == 0.0

    def test_quarter_turn(self):
        q1 = ypr_to_quaternion(EulerYPR(math.pi / 2, 0.0, 0.0))
        assert abs(angular_distance(Quaternion.identity(), q1) - math.pi / 2) < 1e-12

    def test_sign_invariance(self):
        q = ypr_to_quaternion(EulerYPR(0.9, -0.3, 0.2))
        neg = Quaternion(-q.w, -q.x, -q.y, -q.z)
        assert angular_distance(q, neg) <= 1e-12

    def test_symmetry_and_triangle_inequality_10k(self):
        rng = np.random.default_rng(43)
        for _ in range(10_000):
            a = Quaternion(*random_unit_quaternion(rng))
            b = Quaternion(*random_unit_quaternion(rng))
            c = Quaternion(*random_unit_quaternion(rng))
            ab = angular_distance(a, b)
            ba = angular_distance(b, a)
            assert abs(ab - ba) <= 1e-12
            assert ab <= angular_distance(a, c) + angular_distance(c, b) + 1e-9
            assert 0.0 <= ab <= math.pi + 1e-12


class TestSampleTrack:
    def track(self):
        return [
            RotationKey(0.0, Quaternion.identity()),
            RotationKey(1.0, ypr_to_quaternion(EulerYPR(math.pi / 2, 0.0, 0.0))),
        ]

    def test_single_key_constant(self):
        q = ypr_to_quaternion(EulerYPR(0.2, 0.1, 0.0))
        keys = [RotationKey(0.0, q)]
        for t in (-1.0, 0.0, 0.5, 100.0):
            assert sample_track(keys, t) == q

    def test_two_key_midpoint(self):
        mid = sample_track(self.track(), 0.5)
        expect = ypr_to_quaternion(EulerYPR(math.pi / 4, 0.0, 0.0))
        assert_same_rotation(mid, expect, 1e-12)

    def test_clamping(self):
        keys = self.track()
        assert sample_track(keys, -5.0) == keys[0].rotation
        assert sample_track(keys, 5.0) == keys[-1].rotation

    def test_exact_at_key_times(self):
        keys = self.track() + [RotationKey(2.0, ypr_to_quaternion(EulerYPR(0.0, 0.7, 0.0)))]
        for k in keys:
            assert sample_track(keys, k.time) == k.rotation

    def test_dense_sampling_matches_segment_slerp(self):
        rng = np.random.default_rng(47)
        keys = [
            RotationKey(float(t), Quaternion(*random_unit_quaternion(rng)))
            for t in (0.0, 0.4, 1.1, 2.0)
        ]
        for t in np.linspace(0.0, 2.0, 400):
            t = float(t)
            for k0, k1 in zip(keys, keys[1:]):
                if k0.time <= t <= k1.time:
                    u = (t - k0.time) / (k1.time - k0.time)
                    expect = slerp(k0.rotation, k1.rotation, u)
                    assert angular_distance(sample_track(keys, t), expect) <= 1e-12
                    break

    def test_empty_track_rejected(self):
        with pytest.raises(InvalidArgumentError):
            sample_track([], 0.0)

    def test_continuity_bound(self):
        rng = np.random.default_rng(53)
        keys = [
            RotationKey(float(t), Quaternion(*random_unit_quaternion(rng)))
            for t in (0.0, 0.3, 0.9, 1.5)
        ]
        omega_max = max(
            angular_distance(k0.rotation, k1.rotation) / (k1.time - k0.time)
            for k0, k1 in zip(keys, keys[1:])
        )
        eps = 1e-4
        for t in np.arange(0.0, 1.5, eps):
            step = angular_distance(sample_track(keys, float(t)), sample_track(keys, float(t) + eps))
            assert step <= omega_max * eps * (1.0 + 1e-6) + 1e-12
