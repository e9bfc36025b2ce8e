"""Sign lexicon: XML parsing, validation, serialization, and lookup.

A lexicon file carries the handshape inventory, the fingerspelling
alphabet, and the sign entries. Each sign has up to three layers:
meaning (lemma/frame/role), grammar (category/agreement), and form
(timed joint channels, handshape events, space anchors, non-manual
cues) -- or, instead of form, a compound reference list.

Channels are authored as yaw-pitch-roll triples (easier to write by
hand) and converted to quaternions on parse. Serialization is
deterministic: fixed element and attribute order, signs sorted by
gloss, angles printed with six fractional digits.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from xml.sax.saxutils import quoteattr

from .errors import LexiconParseError, LexiconValidationError
from .rotation import (
    EulerYPR,
    Quaternion,
    RotationKey,
    Vec3,
    ypr_gimbal_tolerant,
    ypr_to_quaternion,
)
from .skeleton import FINGERS, JOINT_ORDER, is_joint

CATEGORIES = ("noun", "verb", "adjective", "adverb", "pronoun", "classifier")
AGREEMENTS = ("none", "subject", "subject-object")
CUES = ("eye_gaze_left", "eye_gaze_right", "head_tilt", "brow_raise", "brow_furrow", "mouth_open")
PLACEHOLDER_SUBJECT = "SUBJ_LOCUS"
PLACEHOLDER_OBJECT = "OBJ_LOCUS"
PLACEHOLDERS = (PLACEHOLDER_SUBJECT, PLACEHOLDER_OBJECT)

# The 28 base letters the fingerspelling alphabet must cover.
ARABIC_BASE_LETTERS = "ابتثجحخدذرزسشصضطظعغفقكلمنهوي"

# Side-neutral handshape joint keys, canonical order (thumb1..pinky3).
HANDSHAPE_JOINT_KEYS = tuple(f"{f}{i}" for f in FINGERS for i in (1, 2, 3))


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    gloss: str | None
    message: str

    def __str__(self) -> str:
        where = f" [{self.gloss}]" if self.gloss else ""
        return f"{self.severity}{where}: {self.message}"


@dataclass(frozen=True)
class Semantics:
    lemma: str | None = None
    frame: str | None = None
    role: str | None = None


@dataclass(frozen=True)
class Syntax:
    category: str = "noun"
    agreement: str = "none"


@dataclass(frozen=True)
class JointChannel:
    joint: str
    keys: tuple[RotationKey, ...]


@dataclass(frozen=True)
class HandshapeEvent:
    time: float
    side: str  # "left" | "right"
    name: str


@dataclass(frozen=True)
class Anchor:
    kind: str  # "start" | "end"
    ref: str | None = None  # SUBJ_LOCUS / OBJ_LOCUS placeholder
    point: Vec3 | None = None  # literal signing-space point


@dataclass(frozen=True)
class NonManualEvent:
    time: float
    cue: str
    intensity: float


@dataclass(frozen=True)
class SignEntry:
    gloss: str
    semantics: Semantics = Semantics()
    syntax: Syntax = Syntax()
    channels: tuple[JointChannel, ...] = ()
    handshape_events: tuple[HandshapeEvent, ...] = ()
    anchors: tuple[Anchor, ...] = ()
    nonmanual: tuple[NonManualEvent, ...] = ()
    compound: tuple[str, ...] = ()

    @property
    def is_compound(self) -> bool:
        return bool(self.compound)

    @property
    def duration(self) -> float:
        return max((c.keys[-1].time for c in self.channels), default=0.0)

    def anchor_of(self, kind: str) -> Anchor | None:
        for a in self.anchors:
            if a.kind == kind:
                return a
        return None


@dataclass
class Lexicon:
    language: str = "LSA"
    signs: dict[str, SignEntry] = field(default_factory=dict)
    handshapes: dict[str, dict[str, Quaternion]] = field(default_factory=dict)
    alphabet: dict[str, str] = field(default_factory=dict)
    lemma_index: dict[str, tuple[str, ...]] = field(init=False, default_factory=dict)
    frame_index: dict[str, tuple[str, ...]] = field(init=False, default_factory=dict)

    def __post_init__(self):
        self._reindex()

    def _reindex(self) -> None:
        lemmas: dict[str, list[str]] = {}
        frames: dict[str, list[str]] = {}
        for gloss in sorted(self.signs):
            entry = self.signs[gloss]
            if entry.semantics.lemma:
                lemmas.setdefault(entry.semantics.lemma, []).append(gloss)
            if entry.semantics.frame:
                frames.setdefault(entry.semantics.frame, []).append(gloss)
        self.lemma_index = {k: tuple(v) for k, v in lemmas.items()}
        self.frame_index = {k: tuple(v) for k, v in frames.items()}

    def with_sign(self, entry: SignEntry) -> "Lexicon":
        signs = dict(self.signs)
        signs[entry.gloss] = entry
        return Lexicon(self.language, signs, dict(self.handshapes), dict(self.alphabet))

    def without_sign(self, gloss: str) -> "Lexicon":
        signs = dict(self.signs)
        signs.pop(gloss, None)
        return Lexicon(self.language, signs, dict(self.handshapes), dict(self.alphabet))


def lookup(lex: Lexicon, key: str) -> list[SignEntry]:
    """Exact-match lookup by gloss, lemma, or frame; empty list if absent."""
    glosses: set[str] = set()
    if key in lex.signs:
        glosses.add(key)
    glosses.update(lex.lemma_index.get(key, ()))
    glosses.update(lex.frame_index.get(key, ()))
    return [lex.signs[g] for g in sorted(glosses)]


# ---------------------------------------------------------------------------
# Parsing

def _attr(elem: ET.Element, name: str, diags: list[Diagnostic], gloss: str | None) -> str | None:
    value = elem.get(name)
    if value is None:
        diags.append(Diagnostic("error", gloss, f"<{elem.tag}> is missing attribute {name!r}"))
    return value


def _float_attr(elem: ET.Element, name: str, diags: list[Diagnostic], gloss: str | None) -> float | None:
    raw = _attr(elem, name, diags, gloss)
    if raw is None:
        return None
    try:
        value = float(raw)
    except ValueError:
        diags.append(Diagnostic("error", gloss, f"attribute {name}={raw!r} is not a number"))
        return None
    if not math.isfinite(value):
        diags.append(Diagnostic("error", gloss, f"attribute {name}={raw!r} is not finite"))
        return None
    return value


def _parse_triple(raw: str) -> tuple[float, float, float] | None:
    parts = raw.split()
    if len(parts) != 3:
        return None
    try:
        x, y, z = (float(p) for p in parts)
    except ValueError:
        return None
    if not all(math.isfinite(v) for v in (x, y, z)):
        return None
    return x, y, z


def _handshape_joint_key(raw: str) -> str | None:
    key = raw[2:] if raw[:2] in ("l_", "r_") else raw
    return key if key in HANDSHAPE_JOINT_KEYS else None


def _parse_handshapes(elem: ET.Element, diags: list[Diagnostic]) -> dict[str, dict[str, Quaternion]]:
    out: dict[str, dict[str, Quaternion]] = {}
    for hs in elem.findall("handshape"):
        name = _attr(hs, "name", diags, None)
        if name is None:
            continue
        if name in out:
            diags.append(Diagnostic("error", None, f"duplicate handshape {name!r}"))
            continue
        joints: dict[str, Quaternion] = {}
        for j in hs.findall("joint"):
            raw_name = _attr(j, "name", diags, None)
            raw_ypr = _attr(j, "ypr", diags, None)
            if raw_name is None or raw_ypr is None:
                continue
            key = _handshape_joint_key(raw_name)
            if key is None:
                diags.append(Diagnostic("error", None, f"handshape {name!r}: {raw_name!r} is not a finger joint"))
                continue
            triple = _parse_triple(raw_ypr)
            if triple is None:
                diags.append(Diagnostic("error", None, f"handshape {name!r}: bad ypr {raw_ypr!r}"))
                continue
            joints[key] = ypr_to_quaternion(EulerYPR(*triple))
        out[name] = joints
    return out


def _parse_alphabet(elem: ET.Element, diags: list[Diagnostic]) -> dict[str, str]:
    out: dict[str, str] = {}
    for letter in elem.findall("letter"):
        char = _attr(letter, "char", diags, None)
        gloss = _attr(letter, "gloss", diags, None)
        if char is None or gloss is None:
            continue
        if len(char) != 1:
            diags.append(Diagnostic("error", None, f"alphabet char {char!r} must be a single character"))
            continue
        if char in out:
            diags.append(Diagnostic("error", None, f"duplicate alphabet letter {char!r}"))
            continue
        out[char] = gloss
    return out


def _parse_channel(elem: ET.Element, gloss: str, diags: list[Diagnostic]) -> JointChannel | None:
    joint = _attr(elem, "joint", diags, gloss)
    if joint is None:
        return None
    if not is_joint(joint):
        diags.append(Diagnostic("error", gloss, f"unknown joint {joint!r}"))
        return None
    keys: list[RotationKey] = []
    for key_elem in elem.findall("key"):
        t = _float_attr(key_elem, "t", diags, gloss)
        raw_ypr = _attr(key_elem, "ypr", diags, gloss)
        if t is None or raw_ypr is None:
            return None
        triple = _parse_triple(raw_ypr)
        if triple is None:
            diags.append(Diagnostic("error", gloss, f"channel {joint}: bad ypr {raw_ypr!r}"))
            return None
        keys.append(RotationKey(t, ypr_to_quaternion(EulerYPR(*triple))))
    if not keys:
        diags.append(Diagnostic("error", gloss, f"channel {joint} has no keys"))
        return None
    return JointChannel(joint, tuple(keys))


def _parse_sign(elem: ET.Element, diags: list[Diagnostic]) -> SignEntry | None:
    gloss = _attr(elem, "gloss", diags, None)
    if gloss is None:
        return None
    semantics = Semantics()
    sem_elem = elem.find("semantics")
    if sem_elem is not None:
        semantics = Semantics(sem_elem.get("lemma"), sem_elem.get("frame"), sem_elem.get("role"))
    syntax = Syntax()
    syn_elem = elem.find("syntax")
    if syn_elem is not None:
        category = syn_elem.get("category", "noun")
        agreement = syn_elem.get("agreement", "none")
        if category not in CATEGORIES:
            diags.append(Diagnostic("error", gloss, f"unknown category {category!r}"))
            category = "noun"
        if agreement not in AGREEMENTS:
            diags.append(Diagnostic("error", gloss, f"unknown agreement {agreement!r}"))
            agreement = "none"
        syntax = Syntax(category, agreement)

    channels: list[JointChannel] = []
    events: list[HandshapeEvent] = []
    anchors: list[Anchor] = []
    nonmanual: list[NonManualEvent] = []
    phon = elem.find("phonology")
    if phon is not None:
        for ch in phon.findall("channel"):
            parsed = _parse_channel(ch, gloss, diags)
            if parsed is not None:
                channels.append(parsed)
        for ev in phon.findall("handshapeEvent"):
            t = _float_attr(ev, "t", diags, gloss)
            side = _attr(ev, "side", diags, gloss)
            name = _attr(ev, "name", diags, gloss)
            if t is None or side is None or name is None:
                continue
            if side not in ("left", "right"):
                diags.append(Diagnostic("error", gloss, f"handshape event side {side!r} invalid"))
                continue
            events.append(HandshapeEvent(t, side, name))
        for an in phon.findall("anchor"):
            kind = _attr(an, "kind", diags, gloss)
            if kind not in ("start", "end"):
                diags.append(Diagnostic("error", gloss, f"anchor kind {kind!r} invalid"))
                continue
            ref = an.get("ref")
            raw_point = an.get("point")
            point = None
            if raw_point is not None:
                point = _parse_triple(raw_point)
                if point is None:
                    diags.append(Diagnostic("error", gloss, f"anchor point {raw_point!r} invalid"))
                    continue
            if (ref is None) == (point is None):
                diags.append(Diagnostic("error", gloss, "anchor needs exactly one of ref= or point="))
                continue
            if ref is not None and ref not in PLACEHOLDERS:
                diags.append(Diagnostic("error", gloss, f"anchor ref {ref!r} is not a placeholder"))
                continue
            anchors.append(Anchor(kind, ref, point))
        for nm in phon.findall("nonmanual"):
            t = _float_attr(nm, "t", diags, gloss)
            cue = _attr(nm, "cue", diags, gloss)
            intensity = _float_attr(nm, "intensity", diags, gloss)
            if t is None or cue is None or intensity is None:
                continue
            if cue not in CUES:
                diags.append(Diagnostic("error", gloss, f"unknown non-manual cue {cue!r}"))
                continue
            nonmanual.append(NonManualEvent(t, cue, intensity))

    compound: list[str] = []
    comp = elem.find("compound")
    if comp is not None:
        for ref_elem in comp.findall("ref"):
            ref_gloss = _attr(ref_elem, "gloss", diags, gloss)
            if ref_gloss is not None:
                compound.append(ref_gloss)

    return SignEntry(
        gloss=gloss,
        semantics=semantics,
        syntax=syntax,
        channels=tuple(channels),
        handshape_events=tuple(events),
        anchors=tuple(anchors),
        nonmanual=tuple(nonmanual),
        compound=tuple(compound),
    )


def parse_sign_fragment(xml_text: str) -> SignEntry:
    """Parse a single <sign> element; raises on structural problems."""
    try:
        elem = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        line, column = exc.position
        raise LexiconParseError(str(exc), line, column) from exc
    if elem.tag != "sign":
        raise LexiconParseError(f"expected <sign>, got <{elem.tag}>")
    diags: list[Diagnostic] = []
    entry = _parse_sign(elem, diags)
    errors = [d for d in diags if d.severity == "error"]
    if errors or entry is None:
        raise LexiconValidationError(errors or [Diagnostic("error", None, "unreadable sign")])
    return entry


def parse_lexicon(xml_text: str) -> Lexicon:
    """Parse and fully validate a lexicon document.

    Raises LexiconParseError for malformed XML (with line/column) and
    LexiconValidationError carrying every error diagnostic otherwise.
    """
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        line, column = exc.position
        raise LexiconParseError(str(exc), line, column) from exc
    if root.tag != "lexicon":
        raise LexiconParseError(f"expected <lexicon> root, got <{root.tag}>")

    diags: list[Diagnostic] = []
    language = root.get("lang", "LSA")
    handshapes: dict[str, dict[str, Quaternion]] = {}
    alphabet: dict[str, str] = {}
    hs_elem = root.find("handshapes")
    if hs_elem is not None:
        handshapes = _parse_handshapes(hs_elem, diags)
    al_elem = root.find("alphabet")
    if al_elem is not None:
        alphabet = _parse_alphabet(al_elem, diags)

    signs: dict[str, SignEntry] = {}
    for sign_elem in root.findall("sign"):
        entry = _parse_sign(sign_elem, diags)
        if entry is None:
            continue
        if entry.gloss in signs:
            diags.append(Diagnostic("error", entry.gloss, "duplicate gloss"))
            continue
        signs[entry.gloss] = entry

    lexicon = Lexicon(language, signs, handshapes, alphabet)
    diags.extend(validate_lexicon(lexicon))
    errors = [d for d in diags if d.severity == "error"]
    if errors:
        raise LexiconValidationError(errors)
    return lexicon


# ---------------------------------------------------------------------------
# Validation

def _compound_cycle(lex: Lexicon, start: str) -> list[str] | None:
    """DFS from one gloss; returns the cycle path if there is one."""
    path: list[str] = []
    seen: set[str] = set()

    def visit(gloss: str) -> list[str] | None:
        if gloss in path:
            return path[path.index(gloss):] + [gloss]
        if gloss in seen or gloss not in lex.signs:
            return None
        path.append(gloss)
        for ref in lex.signs[gloss].compound:
            cycle = visit(ref)
            if cycle is not None:
                return cycle
        path.pop()
        seen.add(gloss)
        return None

    return visit(start)


def _validate_sign(lex: Lexicon, entry: SignEntry, out: list[Diagnostic]) -> None:
    g = entry.gloss
    err = lambda msg: out.append(Diagnostic("error", g, msg))

    if entry.is_compound and entry.channels:
        err("sign has both channels and a compound list")
    if not entry.is_compound and not entry.channels:
        err("sign has neither channels nor a compound list")

    joints_seen: set[str] = set()
    for channel in entry.channels:
        if channel.joint in joints_seen:
            err(f"duplicate channel for joint {channel.joint}")
        joints_seen.add(channel.joint)
        times = [k.time for k in channel.keys]
        if times and times[0] != 0.0:
            err(f"channel {channel.joint}: first key must be at t=0, got {times[0]}")
        if any(t1 <= t0 for t0, t1 in zip(times, times[1:])):
            err(f"channel {channel.joint}: key times must be strictly increasing")
        if any(t < 0 for t in times):
            err(f"channel {channel.joint}: negative key time")
    if entry.channels and entry.duration <= 0.0:
        err("sign duration must be positive (needs a key after t=0)")

    duration = entry.duration
    for ev in entry.handshape_events:
        if ev.name not in lex.handshapes:
            err(f"handshape event references unknown handshape {ev.name!r}")
        if ev.time < 0 or (entry.channels and ev.time > duration):
            err(f"handshape event at t={ev.time} outside [0, {duration}]")
    for nm in entry.nonmanual:
        if not 0.0 <= nm.intensity <= 1.0:
            err(f"non-manual intensity {nm.intensity} outside [0, 1]")
        if nm.time < 0 or (entry.channels and nm.time > duration):
            err(f"non-manual cue at t={nm.time} outside [0, {duration}]")

    kinds = [a.kind for a in entry.anchors]
    if kinds.count("start") > 1 or kinds.count("end") > 1:
        err("at most one start and one end anchor allowed")
    placeholders = {a.ref for a in entry.anchors if a.ref is not None}
    agreement = entry.syntax.agreement
    if agreement == "subject" and PLACEHOLDER_SUBJECT not in placeholders:
        err("agreement=subject requires a SUBJ_LOCUS anchor")
    if agreement == "subject-object" and not {PLACEHOLDER_SUBJECT, PLACEHOLDER_OBJECT} <= placeholders:
        err("agreement=subject-object requires SUBJ_LOCUS and OBJ_LOCUS anchors")
    if agreement == "none" and placeholders:
        err("placeholder anchors on a non-agreeing sign can never be resolved")

    for ref in entry.compound:
        if ref not in lex.signs:
            err(f"compound references missing gloss {ref!r}")
    if entry.is_compound:
        cycle = _compound_cycle(lex, g)
        if cycle is not None:
            err(f"compound cycle: {' -> '.join(cycle)}")


def validate_lexicon(lex: Lexicon) -> list[Diagnostic]:
    """All invariant diagnostics; empty list means the lexicon is valid."""
    out: list[Diagnostic] = []
    for gloss in sorted(lex.signs):
        _validate_sign(lex, lex.signs[gloss], out)
    for char in sorted(lex.alphabet):
        gloss = lex.alphabet[char]
        if gloss not in lex.signs:
            out.append(Diagnostic("error", gloss, f"alphabet letter {char!r} references missing sign"))
    covered = set(lex.alphabet)
    for char in ARABIC_BASE_LETTERS:
        if char not in covered:
            out.append(Diagnostic("warning", None, f"alphabet does not cover letter {char!r}"))
    return out


# ---------------------------------------------------------------------------
# Serialization

def _fmt(x: float) -> str:
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return f"{x:.6f}"


def _fmt_ypr(q: Quaternion) -> str:
    e = ypr_gimbal_tolerant(q)
    return f"{_fmt(e.yaw)} {_fmt(e.pitch)} {_fmt(e.roll)}"


def _fmt_point(p: Vec3) -> str:
    return " ".join(_fmt(v) for v in p)


def _sorted_channels(entry: SignEntry) -> list[JointChannel]:
    return sorted(entry.channels, key=lambda c: JOINT_ORDER[c.joint])


def serialize_sign_fragment(entry: SignEntry, indent: str = "") -> str:
    """One <sign> element, deterministic formatting."""
    lines: list[str] = [f"{indent}<sign gloss={quoteattr(entry.gloss)}>"]
    inner = indent + "  "
    sem = entry.semantics
    if sem.lemma is not None or sem.frame is not None or sem.role is not None:
        attrs = "".join(
            f" {name}={quoteattr(value)}"
            for name, value in (("lemma", sem.lemma), ("frame", sem.frame), ("role", sem.role))
            if value is not None
        )
        lines.append(f"{inner}<semantics{attrs}/>")
    lines.append(
        f"{inner}<syntax category={quoteattr(entry.syntax.category)} "
        f"agreement={quoteattr(entry.syntax.agreement)}/>"
    )
    if entry.is_compound:
        lines.append(f"{inner}<compound>")
        for ref in entry.compound:
            lines.append(f"{inner}  <ref gloss={quoteattr(ref)}/>")
        lines.append(f"{inner}</compound>")
    else:
        lines.append(f"{inner}<phonology>")
        body = inner + "  "
        for channel in _sorted_channels(entry):
            lines.append(f"{body}<channel joint={quoteattr(channel.joint)}>")
            for key in channel.keys:
                lines.append(f'{body}  <key t="{_fmt(key.time)}" ypr="{_fmt_ypr(key.rotation)}"/>')
            lines.append(f"{body}</channel>")
        for ev in sorted(entry.handshape_events, key=lambda e: (e.time, e.side, e.name)):
            lines.append(
                f'{body}<handshapeEvent t="{_fmt(ev.time)}" side={quoteattr(ev.side)} '
                f"name={quoteattr(ev.name)}/>"
            )
        for anchor in sorted(entry.anchors, key=lambda a: 0 if a.kind == "start" else 1):
            if anchor.ref is not None:
                lines.append(f"{body}<anchor kind={quoteattr(anchor.kind)} ref={quoteattr(anchor.ref)}/>")
            else:
                lines.append(
                    f'{body}<anchor kind={quoteattr(anchor.kind)} point="{_fmt_point(anchor.point)}"/>'
                )
        for nm in sorted(entry.nonmanual, key=lambda n: (n.time, n.cue)):
            lines.append(
                f'{body}<nonmanual t="{_fmt(nm.time)}" cue={quoteattr(nm.cue)} '
                f'intensity="{_fmt(nm.intensity)}"/>'
            )
        lines.append(f"{inner}</phonology>")
    lines.append(f"{indent}</sign>")
    return "\n".join(lines)


def serialize_lexicon(lex: Lexicon) -> str:
    """Deterministic UTF-8 lexicon document; serializing twice is byte-identical."""
    lines: list[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f"<lexicon lang={quoteattr(lex.language)}>",
        "  <handshapes>",
    ]
    for name in sorted(lex.handshapes):
        joints = lex.handshapes[name]
        lines.append(f"    <handshape name={quoteattr(name)}>")
        for key in HANDSHAPE_JOINT_KEYS:
            if key in joints:
                lines.append(f'      <joint name="r_{key}" ypr="{_fmt_ypr(joints[key])}"/>')
        lines.append("    </handshape>")
    lines.append("  </handshapes>")
    lines.append("  <alphabet>")
    for char in sorted(lex.alphabet):
        lines.append(f"    <letter char={quoteattr(char)} gloss={quoteattr(lex.alphabet[char])}/>")
    lines.append("  </alphabet>")
    for gloss in sorted(lex.signs):
        lines.append(serialize_sign_fragment(lex.signs[gloss], "  "))
    lines.append("</lexicon>")
    return "\n".join(lines) + "\n"
