"""Built-in LSA sample lexicon.

A small but complete lexicon exercising every feature: the five named
handshapes plus 28 placeholder alphabet handshapes, a fingerspelling
alphabet covering the 28 base letters (plus common variant letterforms),
agreeing verbs with space placeholders, a compound sign, a negation sign,
and a handful of nouns. The serialized copy ships as package data
(data/lexicon_lsa.xml) and is kept in sync by a test.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .lexicon import (
    Anchor,
    HandshapeEvent,
    JointChannel,
    Lexicon,
    NonManualEvent,
    Semantics,
    SignEntry,
    Syntax,
)
from .rotation import EulerYPR, Quaternion, RotationKey, ypr_to_quaternion
from .skeleton import FINGERS

# (letter, gloss, handshape) in alphabet order; variants reuse base handshapes.
_ALPHABET = (
    ("ا", "FS_ALIF", "A01"),
    ("ب", "FS_BA", "A02"),
    ("ت", "FS_TA", "A03"),
    ("ث", "FS_THA", "A04"),
    ("ج", "FS_JIM", "A05"),
    ("ح", "FS_HHA", "A06"),
    ("خ", "FS_KHA", "A07"),
    ("د", "FS_DAL", "A08"),
    ("ذ", "FS_DHAL", "A09"),
    ("ر", "FS_RA", "A10"),
    ("ز", "FS_ZAY", "A11"),
    ("س", "FS_SIN", "A12"),
    ("ش", "FS_SHIN", "A13"),
    ("ص", "FS_SAD", "A14"),
    ("ض", "FS_DAD", "A15"),
    ("ط", "FS_TAH", "A16"),
    ("ظ", "FS_ZAH", "A17"),
    ("ع", "FS_AYN", "A18"),
    ("غ", "FS_GHAYN", "A19"),
    ("ف", "FS_FA", "A20"),
    ("ق", "FS_QAF", "A21"),
    ("ك", "FS_KAF", "A22"),
    ("ل", "FS_LAM", "A23"),
    ("م", "FS_MIM", "A24"),
    ("ن", "FS_NUN", "A25"),
    ("ه", "FS_HA", "A26"),
    ("و", "FS_WAW", "A27"),
    ("ي", "FS_YA", "A28"),
    ("ء", "FS_HAMZA", "A18"),
    ("آ", "FS_ALIF_MADDA", "A01"),
    ("أ", "FS_ALIF_HAMZA", "A01"),
    ("ؤ", "FS_WAW_HAMZA", "A27"),
    ("إ", "FS_ALIF_HAMZA_BELOW", "A01"),
    ("ة", "FS_TA_MARBUTA", "A03"),
    ("ى", "FS_ALIF_MAQSURA", "A28"),
    ("ئ", "FS_YA_HAMZA", "A28"),
)


def _q(yaw: float, pitch: float, roll: float) -> Quaternion:
    return ypr_to_quaternion(EulerYPR(yaw, pitch, roll))


def _all_fingers(yaw: float, pitch: float, roll: float) -> dict[str, Quaternion]:
    return {f"{f}{i}": _q(yaw, pitch, roll) for f in FINGERS for i in (1, 2, 3)}


def _handshapes() -> dict[str, dict[str, Quaternion]]:
    out: dict[str, dict[str, Quaternion]] = {
        "FIST": _all_fingers(0.0, 1.4, 0.0),
        "FLAT": _all_fingers(0.0, 0.0, 0.0),
        "INDEX": {
            key: (_q(0.0, 0.0, 0.0) if key.startswith("index") else _q(0.0, 1.4, 0.0))
            for key in _all_fingers(0.0, 0.0, 0.0)
        },
        "SPREAD": {
            f"{f}1": _q(0.15 * (i - 2), 0.0, 0.0) for i, f in enumerate(FINGERS)
        },
        "HOOK": {
            f"{f}{i}": (_q(0.0, 0.3, 0.0) if i == 1 else _q(0.0, 1.0, 0.0))
            for f in FINGERS
            for i in (1, 2, 3)
        },
    }
    # Placeholder alphabet handshapes: curl amount encodes the letter index.
    # Kept within 0.8 rad so inter-letter transitions clamp to the minimum.
    for i in range(1, 29):
        out[f"A{i:02d}"] = _all_fingers(0.0, 0.15 + 0.02 * i, 0.0)
    return out


def _channel(joint: str, *keys: tuple[float, float, float, float]) -> JointChannel:
    return JointChannel(joint, tuple(RotationKey(t, _q(y, p, r)) for t, y, p, r in keys))


def _letter_sign(gloss: str, handshape: str) -> SignEntry:
    return SignEntry(
        gloss=gloss,
        syntax=Syntax("noun", "none"),
        channels=(
            _channel("r_shoulder", (0.0, 0.0, -1.1, 0.0), (0.5, 0.0, -1.1, 0.0)),
            _channel("r_elbow", (0.0, 0.0, 0.0, 1.2), (0.5, 0.0, 0.0, 1.2)),
            _channel("r_wrist", (0.0, 0.0, 0.0, 0.2), (0.5, 0.0, 0.0, 0.2)),
        ),
        handshape_events=(HandshapeEvent(0.0, "right", handshape),),
    )


def _content_signs() -> list[SignEntry]:
    return [
        SignEntry(
            gloss="HELP",
            semantics=Semantics(lemma="ساعد", frame="Assistance"),
            syntax=Syntax("verb", "subject-object"),
            channels=(
                _channel("r_shoulder", (0.0, 0.0, 0.4, 0.0), (0.6, 0.3, 0.9, 0.0)),
                _channel("r_elbow", (0.0, 0.0, 0.2, 0.0), (0.6, 0.1, 0.5, 0.0)),
                _channel("r_wrist", (0.0, 0.0, 0.0, 0.0), (0.6, 0.2, 0.0, 0.1)),
            ),
            handshape_events=(HandshapeEvent(0.0, "right", "FLAT"),),
            anchors=(Anchor("start", ref="SUBJ_LOCUS"), Anchor("end", ref="OBJ_LOCUS")),
            nonmanual=(NonManualEvent(0.1, "eye_gaze_right", 0.8),),
        ),
        SignEntry(
            gloss="GIVE",
            semantics=Semantics(lemma="أعطى", frame="Giving"),
            syntax=Syntax("verb", "subject-object"),
            channels=(
                _channel(
                    "r_shoulder", (0.0, 0.0, 0.3, 0.0), (0.3, 0.2, 0.6, 0.0), (0.7, 0.4, 0.8, 0.0)
                ),
                _channel("r_elbow", (0.0, 0.0, 0.1, 0.0), (0.7, 0.0, 0.7, 0.0)),
            ),
            handshape_events=(HandshapeEvent(0.0, "right", "FLAT"),),
            anchors=(Anchor("start", ref="SUBJ_LOCUS"), Anchor("end", ref="OBJ_LOCUS")),
        ),
        SignEntry(
            gloss="COME",
            semantics=Semantics(lemma="أتى", frame="Arriving"),
            syntax=Syntax("verb", "subject"),
            channels=(
                _channel("l_shoulder", (0.0, 0.0, 0.5, 0.0), (0.5, 0.2, 0.8, 0.0)),
                _channel("l_elbow", (0.0, 0.0, 0.3, 0.0), (0.5, 0.0, 0.9, 0.0)),
            ),
            handshape_events=(HandshapeEvent(0.0, "left", "INDEX"),),
            anchors=(Anchor("start", ref="SUBJ_LOCUS"),),
        ),
        SignEntry(
            gloss="BOY",
            semantics=Semantics(lemma="الولد", frame="People"),
            channels=(
                _channel("r_shoulder", (0.0, 0.0, -0.6, 0.0), (0.4, 0.0, -0.4, 0.2)),
                _channel("r_elbow", (0.0, 0.0, 0.4, 0.0), (0.4, 0.0, 0.8, 0.0)),
            ),
            handshape_events=(HandshapeEvent(0.0, "right", "FIST"),),
        ),
        SignEntry(
            gloss="GIRL",
            semantics=Semantics(lemma="البنت", frame="People"),
            channels=(
                _channel("r_shoulder", (0.0, 0.0, -0.5, 0.1), (0.45, 0.1, -0.3, 0.1)),
                _channel("r_elbow", (0.0, 0.0, 0.5, 0.0), (0.45, 0.0, 1.0, 0.0)),
            ),
            handshape_events=(HandshapeEvent(0.0, "right", "INDEX"),),
            nonmanual=(NonManualEvent(0.1, "brow_raise", 0.4),),
        ),
        SignEntry(
            gloss="TEACHER",
            semantics=Semantics(lemma="معلم", frame="Education"),
            channels=(
                _channel("r_shoulder", (0.0, 0.0, -0.2, 0.0), (0.5, 0.0, 0.1, 0.2)),
                _channel("r_elbow", (0.0, 0.0, 0.3, 0.0), (0.5, 0.0, 0.6, 0.0)),
            ),
            handshape_events=(HandshapeEvent(0.0, "right", "FLAT"),),
        ),
        SignEntry(
            gloss="BOOK",
            semantics=Semantics(lemma="كتاب", frame="Text"),
            channels=(
                _channel("l_shoulder", (0.0, 0.0, -0.4, 0.0), (0.5, 0.0, -0.2, -0.2)),
                _channel("r_shoulder", (0.0, 0.0, -0.4, 0.0), (0.5, 0.0, -0.2, 0.2)),
                _channel("l_elbow", (0.0, 0.0, 0.6, 0.0), (0.5, 0.0, 0.9, 0.0)),
                _channel("r_elbow", (0.0, 0.0, 0.6, 0.0), (0.5, 0.0, 0.9, 0.0)),
            ),
            handshape_events=(
                HandshapeEvent(0.0, "left", "FLAT"),
                HandshapeEvent(0.0, "right", "FLAT"),
            ),
        ),
        SignEntry(
            gloss="WATER",
            semantics=Semantics(lemma="ماء", frame="Food"),
            channels=(
                _channel(
                    "r_elbow", (0.0, 0.0, 0.8, 0.0), (0.3, 0.0, 1.1, 0.0), (0.6, 0.0, 0.8, 0.0)
                ),
            ),
            handshape_events=(HandshapeEvent(0.0, "right", "SPREAD"),),
        ),
        SignEntry(
            gloss="HOUSE",
            semantics=Semantics(lemma="بيت", frame="Buildings"),
            channels=(
                _channel("l_shoulder", (0.0, 0.0, -0.3, 0.0), (0.5, 0.0, -0.1, -0.3)),
                _channel("r_shoulder", (0.0, 0.0, -0.3, 0.0), (0.5, 0.0, -0.1, 0.3)),
            ),
            handshape_events=(
                HandshapeEvent(0.0, "left", "FLAT"),
                HandshapeEvent(0.0, "right", "FLAT"),
            ),
        ),
        SignEntry(
            gloss="HOME",
            semantics=Semantics(lemma="بيت", frame="Buildings"),
            channels=(_channel("r_elbow", (0.0, 0.0, 0.2, 0.0), (0.4, 0.0, 0.9, 0.0)),),
            handshape_events=(HandshapeEvent(0.0, "right", "FIST"),),
        ),
        SignEntry(
            gloss="FLAT_SURFACE",
            semantics=Semantics(lemma="سطح", frame="Buildings"),
            channels=(
                _channel("l_shoulder", (0.0, 0.0, -0.3, 0.0), (0.4, 0.0, -0.3, 0.3)),
                _channel("l_elbow", (0.0, 0.0, 0.6, 0.0), (0.4, 0.0, 0.7, 0.0)),
            ),
            handshape_events=(HandshapeEvent(0.0, "left", "FLAT"),),
        ),
        SignEntry(
            gloss="ABOVE",
            semantics=Semantics(lemma="فوق"),
            syntax=Syntax("adverb", "none"),
            channels=(_channel("r_shoulder", (0.0, 0.0, 0.2, 0.0), (0.35, 0.0, 0.7, 0.0)),),
            handshape_events=(HandshapeEvent(0.0, "right", "FLAT"),),
        ),
        SignEntry(
            gloss="CEILING",
            semantics=Semantics(lemma="سقف", frame="Buildings"),
            compound=("FLAT_SURFACE", "ABOVE"),
        ),
        SignEntry(
            gloss="NEG",
            semantics=Semantics(lemma="لا"),
            syntax=Syntax("adverb", "none"),
            channels=(
                _channel(
                    "skullbase",
                    (0.0, 0.0, 0.0, 0.0),
                    (0.2, 0.25, 0.0, 0.0),
                    (0.4, -0.25, 0.0, 0.0),
                    (0.6, 0.0, 0.0, 0.0),
                ),
            ),
            nonmanual=(NonManualEvent(0.0, "brow_furrow", 0.7),),
        ),
        SignEntry(
            gloss="PAST",
            semantics=Semantics(lemma="أمس", frame="Time"),
            syntax=Syntax("adverb", "none"),
            channels=(_channel("r_shoulder", (0.0, 0.0, -0.3, 0.0), (0.4, -0.2, -0.5, 0.0)),),
            handshape_events=(HandshapeEvent(0.0, "right", "FLAT"),),
        ),
    ]


def build_fixture_lexicon() -> Lexicon:
    signs = {entry.gloss: entry for entry in _content_signs()}
    for _, gloss, handshape in _ALPHABET:
        signs[gloss] = _letter_sign(gloss, handshape)
    return Lexicon(
        language="LSA",
        signs=signs,
        handshapes=_handshapes(),
        alphabet={char: gloss for char, gloss, _ in _ALPHABET},
    )


def fixture_lexicon_path() -> Path:
    """Filesystem path of the shipped lexicon XML."""
    return Path(str(resources.files("signforge").joinpath("data/lexicon_lsa.xml")))
