"""signforge: sign-language animation compiler.

Parses an XML sign lexicon and frame-based sentence documents, plans sign
sequences with signing-space verb agreement and fingerspelling fallback,
and emits deterministic X3D/H-Anim animation scenes.
"""

from .compiler import (
    AnchorEvent,
    AnimationDocument,
    BoundaryMarker,
    TransitionPolicy,
    compile_sign,
    concatenate,
    expand_compound,
    merge_simultaneous,
    retime,
    transition_duration,
)
from .errors import SignforgeError
from .fixture import build_fixture_lexicon, fixture_lexicon_path
from .lexicon import (
    Lexicon,
    SignEntry,
    lookup,
    parse_lexicon,
    serialize_lexicon,
    validate_lexicon,
)
from .planner import (
    InterlinguaDocument,
    LociMap,
    Referent,
    SentencePlan,
    allocate_loci,
    apply_agreement,
    fingerspell,
    parse_interlingua,
    parse_interlingua_many,
    plan_sentence,
    translate,
    translate_many,
)
from .rotation import (
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
    ypr_to_quaternion,
)
from .skeleton import (
    JOINT_NAMES,
    Posture,
    apply_handshape,
    blend_postures,
    neutral_posture,
    posture_distance,
)
from .x3d import EmissionOptions, emit_html, emit_x3d, validate_emission

__version__ = "0.1.0"

__all__ = [
    "AnchorEvent",
    "AnimationDocument",
    "AxisAngle",
    "BoundaryMarker",
    "EmissionOptions",
    "EulerYPR",
    "InterlinguaDocument",
    "JOINT_NAMES",
    "Lexicon",
    "LociMap",
    "Posture",
    "Quaternion",
    "Referent",
    "RotationKey",
    "SentencePlan",
    "SignEntry",
    "SignforgeError",
    "TransitionPolicy",
    "allocate_loci",
    "angular_distance",
    "apply_agreement",
    "apply_handshape",
    "axis_angle_to_quaternion",
    "blend_postures",
    "build_fixture_lexicon",
    "compile_sign",
    "concatenate",
    "emit_html",
    "emit_x3d",
    "expand_compound",
    "fingerspell",
    "fixture_lexicon_path",
    "lookup",
    "merge_simultaneous",
    "neutral_posture",
    "parse_interlingua",
    "parse_interlingua_many",
    "parse_lexicon",
    "plan_sentence",
    "posture_distance",
    "quaternion_to_axis_angle",
    "quaternion_to_ypr",
    "retime",
    "sample_track",
    "serialize_lexicon",
    "slerp",
    "transition_duration",
    "translate",
    "translate_many",
    "validate_emission",
    "validate_lexicon",
    "ypr_to_quaternion",
]
