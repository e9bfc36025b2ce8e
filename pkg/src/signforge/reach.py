"""Static arm-aim table: signing-space points to shoulder/elbow rotations.

A two-link closed-form pose is precomputed for every cell of a discretized
signing-space grid (16 azimuth x 8 elevation x 4 radius bins around each
shoulder). Lookups snap the target point to its cell, so resolution is
deterministic and needs no iterative solver.
"""

from __future__ import annotations

import math

from .errors import InvalidArgumentError
from .rotation import (
    AxisAngle,
    EulerYPR,
    Quaternion,
    Vec3,
    axis_angle_to_quaternion,
    ypr_gimbal_tolerant,
    ypr_to_quaternion,
)
from .skeleton import FOREARM_LENGTH, JOINT_CENTERS, UPPER_ARM_LENGTH

AZIMUTH_BINS = 16
ELEVATION_BINS = 8
RADIUS_BINS = 4
RADIUS_MIN = 0.10
RADIUS_MAX = 0.70

_tables: dict[str, list[tuple[EulerYPR, EulerYPR]]] = {}


def _sub(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _norm(v: Vec3) -> float:
    return math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])


def _normalize(v: Vec3) -> Vec3:
    n = _norm(v)
    return (v[0] / n, v[1] / n, v[2] / n)


def _cross(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a: Vec3, b: Vec3) -> float:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _shortest_arc(u: Vec3, v: Vec3) -> Quaternion:
    """Minimal rotation taking unit vector u onto unit vector v."""
    d = max(-1.0, min(1.0, _dot(u, v)))
    axis = _cross(u, v)
    s = _norm(axis)
    if s < 1e-9:
        if d > 0.0:
            return Quaternion.identity()
        # Antiparallel: rotate pi about any axis perpendicular to u.
        perp = _cross(u, (0.0, 1.0, 0.0))
        if _norm(perp) < 1e-9:
            perp = _cross(u, (0.0, 0.0, 1.0))
        return axis_angle_to_quaternion(AxisAngle(_normalize(perp), math.pi))
    return axis_angle_to_quaternion(AxisAngle(_normalize(axis), math.atan2(s, d)))


def shoulder_center(side: str) -> Vec3:
    if side not in ("left", "right"):
        raise InvalidArgumentError(f"side must be 'left' or 'right', got {side!r}")
    return JOINT_CENTERS[f"{side[0]}_shoulder"]


def cell_index(point: Vec3, side: str) -> tuple[int, int, int]:
    """Grid cell containing the target point, relative to the side's shoulder."""
    d = _sub(point, shoulder_center(side))
    r = _norm(d)
    if r < 1e-9:
        return 0, ELEVATION_BINS // 2, 0
    azimuth = math.atan2(d[0], d[2])  # 0 = straight ahead, positive toward +X
    elevation = math.asin(max(-1.0, min(1.0, d[1] / r)))
    ia = int((azimuth + math.pi) / (2.0 * math.pi) * AZIMUTH_BINS)
    ie = int((elevation + math.pi / 2) / math.pi * ELEVATION_BINS)
    ir = int((r - RADIUS_MIN) / (RADIUS_MAX - RADIUS_MIN) * RADIUS_BINS)
    return (
        min(max(ia, 0), AZIMUTH_BINS - 1),
        min(max(ie, 0), ELEVATION_BINS - 1),
        min(max(ir, 0), RADIUS_BINS - 1),
    )


def _cell_center(ia: int, ie: int, ir: int) -> tuple[float, float, float]:
    azimuth = -math.pi + (ia + 0.5) * 2.0 * math.pi / AZIMUTH_BINS
    elevation = -math.pi / 2 + (ie + 0.5) * math.pi / ELEVATION_BINS
    radius = RADIUS_MIN + (ir + 0.5) * (RADIUS_MAX - RADIUS_MIN) / RADIUS_BINS
    return azimuth, elevation, radius


def _pose_for_cell(side: str, azimuth: float, elevation: float, radius: float) -> tuple[EulerYPR, EulerYPR]:
    l1, l2 = UPPER_ARM_LENGTH, FOREARM_LENGTH
    reach = max(abs(l1 - l2) + 0.005, min(radius, l1 + l2 - 0.005))
    target_dir = (
        math.sin(azimuth) * math.cos(elevation),
        math.sin(elevation),
        math.cos(azimuth) * math.cos(elevation),
    )
    # Interior angle at the shoulder between upper arm and target ray.
    cos_dev = (l1 * l1 + reach * reach - l2 * l2) / (2.0 * l1 * reach)
    deviation = math.acos(max(-1.0, min(1.0, cos_dev)))
    # Elbow-down bend plane; degenerate straight-up/down targets bend outward.
    normal = _cross(target_dir, (0.0, -1.0, 0.0))
    if _norm(normal) < 1e-6:
        normal = (1.0, 0.0, 0.0) if side == "left" else (-1.0, 0.0, 0.0)
    normal = _normalize(normal)
    upper_dir = axis_angle_to_quaternion(AxisAngle(normal, deviation)).rotate(target_dir)
    wrist_rel = (
        reach * target_dir[0] - l1 * upper_dir[0],
        reach * target_dir[1] - l1 * upper_dir[1],
        reach * target_dir[2] - l1 * upper_dir[2],
    )
    fore_dir = _normalize(wrist_rel)
    binding = (1.0, 0.0, 0.0) if side == "left" else (-1.0, 0.0, 0.0)
    q_shoulder = _shortest_arc(binding, upper_dir)
    q_elbow = q_shoulder.conjugate() * _shortest_arc(binding, fore_dir)
    return ypr_gimbal_tolerant(q_shoulder), ypr_gimbal_tolerant(q_elbow.canonicalized())


def _table(side: str) -> list[tuple[EulerYPR, EulerYPR]]:
    if side not in _tables:
        entries = []
        for ia in range(AZIMUTH_BINS):
            for ie in range(ELEVATION_BINS):
                for ir in range(RADIUS_BINS):
                    entries.append(_pose_for_cell(side, *_cell_center(ia, ie, ir)))
        _tables[side] = entries
    return _tables[side]


def aim_arm(point: Vec3, side: str) -> dict[str, Quaternion]:
    """Shoulder and elbow rotations that put the wrist near the given point."""
    ia, ie, ir = cell_index(point, side)
    shoulder_ypr, elbow_ypr = _table(side)[(ia * ELEVATION_BINS + ie) * RADIUS_BINS + ir]
    s = side[0]
    return {
        f"{s}_shoulder": ypr_to_quaternion(shoulder_ypr),
        f"{s}_elbow": ypr_to_quaternion(elbow_ypr),
    }
