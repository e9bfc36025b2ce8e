"""Humanoid joint model: hierarchy, postures, handshapes.

The joint set is the signing-relevant subset of the standard humanoid
skeleton: torso/head chain, both arms, and three joints per finger.
Legs are omitted; no sign in scope uses them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InvalidArgumentError, UnknownHandshapeError
from .rotation import EulerYPR, Quaternion, Vec3, angular_distance, slerp, ypr_to_quaternion

SIDES = ("l", "r")
FINGERS = ("thumb", "index", "middle", "ring", "pinky")

# (joint, parent); depth-first order. HumanoidRoot is the tree root.
_HIERARCHY: tuple[tuple[str, str | None], ...] = (
    ("HumanoidRoot", None),
    ("sacroiliac", "HumanoidRoot"),
    ("vl5", "sacroiliac"),
    ("vt6", "vl5"),
    ("vc4", "vt6"),
    ("skullbase", "vc4"),
) + tuple(
    entry
    for side in SIDES
    for entry in (
        (f"{side}_shoulder", "vt6"),
        (f"{side}_elbow", f"{side}_shoulder"),
        (f"{side}_wrist", f"{side}_elbow"),
    )
    + tuple(
        e
        for finger in FINGERS
        for e in (
            (f"{side}_{finger}1", f"{side}_wrist"),
            (f"{side}_{finger}2", f"{side}_{finger}1"),
            (f"{side}_{finger}3", f"{side}_{finger}2"),
        )
    )
)

JOINT_PARENT: dict[str, str | None] = dict(_HIERARCHY)
JOINT_NAMES: tuple[str, ...] = tuple(name for name, _ in _HIERARCHY)
JOINT_ORDER: dict[str, int] = {name: i for i, name in enumerate(JOINT_NAMES)}


def finger_joints(side: str) -> tuple[str, ...]:
    """The 15 finger joints of one side, canonical order."""
    if side not in ("left", "right"):
        raise InvalidArgumentError(f"side must be 'left' or 'right', got {side!r}")
    s = side[0]
    return tuple(f"{s}_{f}{i}" for f in FINGERS for i in (1, 2, 3))


def children_of(joint: str) -> tuple[str, ...]:
    return tuple(name for name, parent in _HIERARCHY if parent == joint)


# Binding-pose joint centers in humanoid coordinates (meters, T-pose:
# arms along +-X, palms down). Used for scene emission and arm aiming.
def _arm_centers(s: str) -> dict[str, Vec3]:
    sign = 1.0 if s == "l" else -1.0
    out: dict[str, Vec3] = {
        f"{s}_shoulder": (sign * 0.19, 1.42, 0.0),
        f"{s}_elbow": (sign * 0.45, 1.42, 0.0),
        f"{s}_wrist": (sign * 0.69, 1.42, 0.0),
    }
    finger_z = {"thumb": 0.05, "index": 0.025, "middle": 0.0, "ring": -0.025, "pinky": -0.05}
    for f in FINGERS:
        base = 0.73 if f != "thumb" else 0.71
        for i, dx in ((1, 0.0), (2, 0.035), (3, 0.065)):
            out[f"{s}_{f}{i}"] = (sign * (base + dx), 1.42, finger_z[f])
    return out


JOINT_CENTERS: dict[str, Vec3] = {
    "HumanoidRoot": (0.0, 0.92, 0.0),
    "sacroiliac": (0.0, 0.96, 0.0),
    "vl5": (0.0, 1.08, 0.0),
    "vt6": (0.0, 1.30, 0.0),
    "vc4": (0.0, 1.48, 0.0),
    "skullbase": (0.0, 1.58, 0.0),
    **_arm_centers("l"),
    **_arm_centers("r"),
}

UPPER_ARM_LENGTH = 0.26
FOREARM_LENGTH = 0.24

# Distance below which two rotations are treated as the same joint pose.
_IDENTITY_TOLERANCE = 1e-12

HandshapeInventory = Mapping[str, Mapping[str, Quaternion]]


def is_joint(name: str) -> bool:
    return name in JOINT_PARENT


@dataclass(frozen=True)
class Posture:
    """Local joint rotations relative to the binding pose.

    Joints absent from the mapping are at identity. Stored rotations that
    are themselves identity are dropped so structural comparison works.
    """

    rotations: Mapping[str, Quaternion] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[str, Quaternion] = {}
        for joint, rot in self.rotations.items():
            if joint not in JOINT_PARENT:
                raise InvalidArgumentError(f"unknown joint {joint!r}")
            if angular_distance(rot, Quaternion.identity()) > _IDENTITY_TOLERANCE:
                clean[joint] = rot
        object.__setattr__(self, "rotations", clean)

    def rotation_of(self, joint: str) -> Quaternion:
        return self.rotations.get(joint, Quaternion.identity())

    def joints(self) -> Iterable[str]:
        return self.rotations.keys()


def neutral_posture() -> Posture:
    """Rest pose between sentences: both upper arms hang down."""
    drop = ypr_to_quaternion(EulerYPR(0.0, -math.pi / 2, 0.0))
    return Posture({"l_shoulder": drop, "r_shoulder": drop})


def posture_distance(a: Posture, b: Posture) -> float:
    """Largest per-joint rotation angle between the two postures."""
    worst = 0.0
    for joint in set(a.joints()) | set(b.joints()):
        worst = max(worst, angular_distance(a.rotation_of(joint), b.rotation_of(joint)))
    return worst


def blend_postures(a: Posture, b: Posture, t: float) -> Posture:
    """Joint-wise slerp over the union of keyed joints."""
    if not 0.0 <= t <= 1.0:
        raise InvalidArgumentError(f"blend parameter {t!r} outside [0, 1]")
    out: dict[str, Quaternion] = {}
    for joint in set(a.joints()) | set(b.joints()):
        out[joint] = slerp(a.rotation_of(joint), b.rotation_of(joint), t)
    return Posture(out)


def handshape_rotations(side: str, name: str, inventory: HandshapeInventory) -> dict[str, Quaternion]:
    """Rotations for all 15 finger joints of one side (identity where unset)."""
    if name not in inventory:
        raise UnknownHandshapeError(name)
    shape = inventory[name]
    out: dict[str, Quaternion] = {}
    for joint in finger_joints(side):
        key = joint[2:]  # strip the side prefix; inventory keys are side-neutral
        out[joint] = shape.get(key, Quaternion.identity())
    return out


def apply_handshape(p: Posture, side: str, name: str, inventory: HandshapeInventory) -> Posture:
    """Overwrite the 15 finger joints of one side with the inventory's pose."""
    rotations = dict(p.rotations)
    for joint, rot in handshape_rotations(side, name, inventory).items():
        rotations[joint] = rot
    return Posture(rotations)
