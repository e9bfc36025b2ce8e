"""Rotation representations and interpolation kernels.

Conventions used throughout the package:

- Axes follow the humanoid-animation standard: +Y up, +Z toward the
  viewer, +X to the humanoid's left.
- Euler decomposition is intrinsic yaw (about +Y), then pitch (about +X),
  then roll (about +Z); as matrices on column vectors R = Ry * Rx * Rz.
- Quaternions are stored (w, x, y, z), Hamilton product, unit norm.
  Canonical form has w >= 0; q and -q denote the same rotation.
- All angles are radians, all times are seconds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from bisect import bisect_left

from .errors import GimbalLockError, InvalidArgumentError

Vec3 = tuple[float, float, float]

# Below this inter-quaternion arc, slerp degenerates to normalized lerp.
SLERP_EPSILON = 1e-6
# Unit-norm tolerance for inputs that must be unit quaternions.
UNIT_TOLERANCE = 1e-9
# Half-width of the pitch band around +-pi/2 where YPR extraction is refused.
GIMBAL_BAND = 1e-6


@dataclass(frozen=True)
class Quaternion:
    """Unit quaternion (w, x, y, z) representing a 3D rotation."""

    w: float
    x: float
    y: float
    z: float

    @staticmethod
    def identity() -> "Quaternion":
        return Quaternion(1.0, 0.0, 0.0, 0.0)

    def norm(self) -> float:
        return math.sqrt(self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z)

    def normalized(self) -> "Quaternion":
        n = self.norm()
        if n < 1e-12:
            raise InvalidArgumentError("cannot normalize a near-zero quaternion")
        return Quaternion(self.w / n, self.x / n, self.y / n, self.z / n)

    def canonicalized(self) -> "Quaternion":
        """Unit norm with w >= 0 (flips sign when w < 0)."""
        q = self.normalized()
        if q.w < 0.0:
            return Quaternion(-q.w, -q.x, -q.y, -q.z)
        return q

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def dot(self, other: "Quaternion") -> float:
        return self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        """Hamilton product: (a * b) rotates by b first, then a, so that
        R(a * b) = R(a) @ R(b)."""
        w1, x1, y1, z1 = self.w, self.x, self.y, self.z
        w2, x2, y2, z2 = other.w, other.x, other.y, other.z
        return Quaternion(
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        )

    def rotate(self, v: Vec3) -> Vec3:
        """Rotate a 3-vector by this quaternion (q v q*)."""
        w, x, y, z = self.w, self.x, self.y, self.z
        vx, vy, vz = v
        # t = 2 * cross(q.xyz, v)
        tx = 2.0 * (y * vz - z * vy)
        ty = 2.0 * (z * vx - x * vz)
        tz = 2.0 * (x * vy - y * vx)
        # v' = v + w*t + cross(q.xyz, t)
        return (
            vx + w * tx + (y * tz - z * ty),
            vy + w * ty + (z * tx - x * tz),
            vz + w * tz + (x * ty - y * tx),
        )


@dataclass(frozen=True)
class AxisAngle:
    """Rotation as a unit axis and an angle in [0, pi] once canonical."""

    axis: Vec3
    angle: float


@dataclass(frozen=True)
class EulerYPR:
    """Intrinsic yaw-pitch-roll angles in radians."""

    yaw: float
    pitch: float
    roll: float


@dataclass(frozen=True)
class RotationKey:
    """One timed keyframe on a joint track."""

    time: float
    rotation: Quaternion


def _require_unit(q: Quaternion, op: str) -> None:
    if abs(q.norm() - 1.0) > UNIT_TOLERANCE:
        raise InvalidArgumentError(f"{op}: quaternion is not unit-norm (|q| = {q.norm():.12f})")


def ypr_to_quaternion(e: EulerYPR) -> Quaternion:
    """Compose intrinsic yaw, pitch, roll into a canonical unit quaternion."""
    for name, v in (("yaw", e.yaw), ("pitch", e.pitch), ("roll", e.roll)):
        if not math.isfinite(v):
            raise InvalidArgumentError(f"{name} is not finite: {v!r}")
    hy, hp, hr = 0.5 * e.yaw, 0.5 * e.pitch, 0.5 * e.roll
    qy = Quaternion(math.cos(hy), 0.0, math.sin(hy), 0.0)
    qx = Quaternion(math.cos(hp), math.sin(hp), 0.0, 0.0)
    qz = Quaternion(math.cos(hr), 0.0, 0.0, math.sin(hr))
    return (qy * qx * qz).canonicalized()


def _ypr_from_unit(q: Quaternion, strict: bool) -> EulerYPR:
    w, x, y, z = q.w, q.x, q.y, q.z
    # Matrix entries of R = Ry(yaw) Rx(pitch) Rz(roll) needed for extraction.
    sin_pitch = 2.0 * (w * x - y * z)
    sin_pitch = max(-1.0, min(1.0, sin_pitch))
    pitch = math.asin(sin_pitch)
    if abs(pitch) > math.pi / 2 - GIMBAL_BAND:
        if strict:
            raise GimbalLockError(
                f"pitch {pitch:.9f} rad is inside the yaw-pitch-roll singular band"
            )
        # Degenerate decomposition: pin roll to 0, absorb the rest into yaw.
        m00 = 1.0 - 2.0 * (y * y + z * z)
        m01 = 2.0 * (x * y - w * z)
        if sin_pitch > 0.0:
            return EulerYPR(math.atan2(m01, m00), math.pi / 2, 0.0)
        return EulerYPR(math.atan2(-m01, m00), -math.pi / 2, 0.0)
    m02 = 2.0 * (x * z + w * y)
    m22 = 1.0 - 2.0 * (x * x + y * y)
    m10 = 2.0 * (x * y + w * z)
    m11 = 1.0 - 2.0 * (x * x + z * z)
    return EulerYPR(math.atan2(m02, m22), pitch, math.atan2(m10, m11))


def quaternion_to_ypr(q: Quaternion) -> EulerYPR:
    """Invert ypr_to_quaternion; raises GimbalLockError near pitch = +-pi/2."""
    _require_unit(q, "quaternion_to_ypr")
    return _ypr_from_unit(q, strict=True)


def ypr_gimbal_tolerant(q: Quaternion) -> EulerYPR:
    """YPR extraction that degrades gracefully at the singularity (roll = 0).

    Intended for serialization paths that must never fail; inside the
    singular band the decomposition is not unique and roll is pinned to 0.
    """
    _require_unit(q, "ypr_gimbal_tolerant")
    return _ypr_from_unit(q, strict=False)


def axis_angle_to_quaternion(a: AxisAngle) -> Quaternion:
    """(cos(angle/2), axis * sin(angle/2)), canonicalized."""
    ax, ay, az = a.axis
    n = math.sqrt(ax * ax + ay * ay + az * az)
    if abs(n - 1.0) > 1e-6:
        if n < 1e-12 and abs(a.angle) < 1e-12:
            return Quaternion.identity()
        if n < 1e-12:
            raise InvalidArgumentError("zero axis with nonzero angle")
        raise InvalidArgumentError(f"axis is not unit-norm (|axis| = {n:.9f})")
    half = 0.5 * a.angle
    s = math.sin(half)
    return Quaternion(math.cos(half), ax / n * s, ay / n * s, az / n * s).canonicalized()


def quaternion_to_axis_angle(q: Quaternion) -> AxisAngle:
    """Canonical axis-angle: angle in [0, pi]; identity maps to ((0,0,1), 0)."""
    _require_unit(q, "quaternion_to_axis_angle")
    c = q.canonicalized()
    s = math.sqrt(c.x * c.x + c.y * c.y + c.z * c.z)
    angle = 2.0 * math.atan2(s, c.w)
    if s < 1e-12:
        return AxisAngle((0.0, 0.0, 1.0), angle)
    return AxisAngle((c.x / s, c.y / s, c.z / s), angle)


def slerp(q0: Quaternion, q1: Quaternion, t: float) -> Quaternion:
    """Shortest-arc spherical interpolation at constant angular velocity."""
    if not 0.0 <= t <= 1.0:
        raise InvalidArgumentError(f"interpolation parameter {t!r} outside [0, 1]")
    _require_unit(q0, "slerp")
    _require_unit(q1, "slerp")
    if q0 == q1:
        return q0
    d = q0.dot(q1)
    w1, x1, y1, z1 = q1.w, q1.x, q1.y, q1.z
    if d < 0.0:
        d = -d
        w1, x1, y1, z1 = -w1, -x1, -y1, -z1
    d = min(1.0, d)
    omega = math.acos(d)
    if omega < SLERP_EPSILON:
        # Arc too short for stable sin ratios; normalized lerp is exact enough.
        r = Quaternion(
            q0.w + t * (w1 - q0.w),
            q0.x + t * (x1 - q0.x),
            q0.y + t * (y1 - q0.y),
            q0.z + t * (z1 - q0.z),
        )
        return r.normalized()
    sin_omega = math.sin(omega)
    a = math.sin((1.0 - t) * omega) / sin_omega
    b = math.sin(t * omega) / sin_omega
    return Quaternion(
        a * q0.w + b * w1,
        a * q0.x + b * x1,
        a * q0.y + b * y1,
        a * q0.z + b * z1,
    ).normalized()


def angular_distance(q0: Quaternion, q1: Quaternion) -> float:
    """Rotation angle in [0, pi] taking one orientation to the other.

    Computed from the relative quaternion via atan2, which stays accurate
    for nearly identical rotations where an acos formulation loses digits.
    """
    _require_unit(q0, "angular_distance")
    _require_unit(q1, "angular_distance")
    if q0 == q1:
        return 0.0
    r = q0.conjugate() * q1
    s = math.sqrt(r.x * r.x + r.y * r.y + r.z * r.z)
    return 2.0 * math.atan2(s, abs(r.w))


def sample_track(keys: list[RotationKey], t: float) -> Quaternion:
    """Evaluate a keyframe track at time t.

    Clamps outside the keyed range; returns key rotations exactly at key
    times; slerps with the local segment parameter in between.
    """
    if not keys:
        raise InvalidArgumentError("cannot sample an empty track")
    if t <= keys[0].time:
        return keys[0].rotation
    if t >= keys[-1].time:
        return keys[-1].rotation
    times = [k.time for k in keys]
    i = bisect_left(times, t)
    if times[i] == t:
        return keys[i].rotation
    k0, k1 = keys[i - 1], keys[i]
    u = (t - k0.time) / (k1.time - k0.time)
    return slerp(k0.rotation, k1.rotation, u)
