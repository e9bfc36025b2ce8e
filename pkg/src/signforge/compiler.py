"""Lower sign entries into keyframe timelines and stitch them together.

A compiled document is a global timeline of per-joint rotation keys plus
the non-manual cue track, sign boundary markers, and resolved space
anchors. Inter-sign transitions insert no synthetic keys: the gap between
two signs is bridged by the track sampler's interpolation, which keeps
the emitted scene minimal and boundary motion continuous by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import (
    CompoundExpansionError,
    InvalidArgumentError,
    MissingLocusError,
    TrackConflictError,
)
from .lexicon import Lexicon, NonManualEvent, SignEntry
from .reach import aim_arm
from .rotation import Quaternion, RotationKey, Vec3, sample_track
from .skeleton import Posture, handshape_rotations, neutral_posture, posture_distance

MAX_COMPOUND_DEPTH = 8


@dataclass(frozen=True)
class BoundaryMarker:
    time: float
    gloss: str


@dataclass(frozen=True)
class AnchorEvent:
    """A resolved space anchor, kept for inspection and agreement checks."""

    time: float
    kind: str  # "start" | "end"
    point: Vec3
    label: str  # placeholder name or "literal"


@dataclass
class AnimationDocument:
    duration: float = 0.0
    tracks: dict[str, list[RotationKey]] = field(default_factory=dict)
    nonmanual: list[NonManualEvent] = field(default_factory=list)
    markers: list[BoundaryMarker] = field(default_factory=list)
    anchors: list[AnchorEvent] = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return not self.tracks


@dataclass(frozen=True)
class TransitionPolicy:
    min_duration: float = 0.15
    max_duration: float = 0.8
    reference_speed: float = 6.0  # radians per second

    def __post_init__(self):
        if not 0.0 < self.min_duration <= self.max_duration:
            raise InvalidArgumentError("transition policy requires 0 < min <= max")
        if self.reference_speed <= 0.0:
            raise InvalidArgumentError("transition reference speed must be positive")


def _check_tracks(doc: AnimationDocument) -> AnimationDocument:
    """Post-hoc invariant: strictly increasing times within [0, duration]."""
    for joint, keys in doc.tracks.items():
        for k0, k1 in zip(keys, keys[1:]):
            if k1.time <= k0.time:
                raise InvalidArgumentError(
                    f"track {joint}: non-increasing key times {k0.time} -> {k1.time}"
                )
        if keys and (keys[0].time < 0.0 or keys[-1].time > doc.duration + 1e-9):
            raise InvalidArgumentError(f"track {joint}: keys outside [0, {doc.duration}]")
    return doc


def start_posture(doc: AnimationDocument) -> Posture:
    return Posture({j: keys[0].rotation for j, keys in doc.tracks.items() if keys})


def end_posture(doc: AnimationDocument) -> Posture:
    return Posture({j: keys[-1].rotation for j, keys in doc.tracks.items() if keys})


def sample_document(doc: AnimationDocument, t: float) -> Posture:
    return Posture({j: sample_track(keys, t) for j, keys in doc.tracks.items() if keys})


def _resolve_anchor(entry: SignEntry, kind: str, override: Vec3 | None) -> tuple[Vec3, str] | None:
    anchor = entry.anchor_of(kind)
    if anchor is None:
        if override is not None:
            raise InvalidArgumentError(
                f"sign {entry.gloss!r} has no {kind} placeholder for the supplied override"
            )
        return None
    if anchor.point is not None:
        if override is not None:
            raise InvalidArgumentError(
                f"sign {entry.gloss!r} anchors {kind} to a literal point; override not allowed"
            )
        return anchor.point, "literal"
    if override is None:
        raise MissingLocusError(anchor.ref, entry.gloss)
    return override, anchor.ref


def sign_arm_side(entry: SignEntry) -> str:
    """Which arm carries the sign's movement; right when ambiguous."""
    joints = {c.joint for c in entry.channels}
    if not any(j.startswith("r_") for j in joints) and any(j.startswith("l_") for j in joints):
        return "left"
    return "right"


def _apply_aim(tracks: dict[str, list[RotationKey]], point: Vec3, t_anchor: float, side: str) -> None:
    for joint, rotation in aim_arm(point, side).items():
        keys = tracks.get(joint)
        if not keys:
            tracks[joint] = [RotationKey(t_anchor, rotation)]
            continue
        nearest = min(range(len(keys)), key=lambda i: (abs(keys[i].time - t_anchor), i))
        keys[nearest] = RotationKey(keys[nearest].time, rotation)


def compile_sign(
    entry: SignEntry,
    lex: Lexicon,
    start_override: Vec3 | None = None,
    end_override: Vec3 | None = None,
) -> AnimationDocument:
    """Lower one simple sign onto a fresh timeline starting at t=0."""
    if entry.is_compound:
        raise InvalidArgumentError(
            f"sign {entry.gloss!r} is a compound; expand it before compiling"
        )
    duration = entry.duration
    tracks: dict[str, list[RotationKey]] = {
        c.joint: list(c.keys) for c in entry.channels
    }

    for ev in entry.handshape_events:
        for joint, rotation in handshape_rotations(ev.side, ev.name, lex.handshapes).items():
            keys = tracks.setdefault(joint, [])
            if any(abs(k.time - ev.time) < 1e-12 for k in keys):
                raise TrackConflictError(joint, (ev.time, ev.time))
            keys.append(RotationKey(ev.time, rotation))
            keys.sort(key=lambda k: k.time)

    anchors: list[AnchorEvent] = []
    side = sign_arm_side(entry)
    for kind, override, t_anchor in (("start", start_override, 0.0), ("end", end_override, duration)):
        resolved = _resolve_anchor(entry, kind, override)
        if resolved is None:
            continue
        point, label = resolved
        _apply_aim(tracks, point, t_anchor, side)
        anchors.append(AnchorEvent(t_anchor, kind, point, label))

    doc = AnimationDocument(
        duration=duration,
        tracks=tracks,
        nonmanual=sorted(entry.nonmanual, key=lambda n: (n.time, n.cue)),
        markers=[BoundaryMarker(0.0, entry.gloss)],
        anchors=anchors,
    )
    return _check_tracks(doc)


def expand_compound(entry: SignEntry, lex: Lexicon) -> list[AnimationDocument]:
    """Compile a compound sign into its flattened component documents.

    Components keep local timelines starting at 0; shifting onto the global
    timeline happens in concatenate().
    """

    def expand(gloss: str, chain: tuple[str, ...]) -> list[AnimationDocument]:
        if gloss in chain:
            raise CompoundExpansionError("compound cycle", chain + (gloss,))
        if len(chain) >= MAX_COMPOUND_DEPTH:
            raise CompoundExpansionError(
                f"compound nesting deeper than {MAX_COMPOUND_DEPTH}", chain + (gloss,)
            )
        sign = lex.signs.get(gloss)
        if sign is None:
            raise CompoundExpansionError(f"compound references missing gloss {gloss!r}", chain)
        if not sign.is_compound:
            return [compile_sign(sign, lex)]
        docs: list[AnimationDocument] = []
        for ref in sign.compound:
            docs.extend(expand(ref, chain + (gloss,)))
        return docs

    if not entry.is_compound:
        raise InvalidArgumentError(f"sign {entry.gloss!r} is not a compound")
    docs: list[AnimationDocument] = []
    for ref in entry.compound:
        docs.extend(expand(ref, (entry.gloss,)))
    return docs


def transition_duration(a: Posture, b: Posture, policy: TransitionPolicy) -> float:
    gap = posture_distance(a, b) / policy.reference_speed
    return min(max(gap, policy.min_duration), policy.max_duration)


def _shifted(doc: AnimationDocument, offset: float) -> AnimationDocument:
    return AnimationDocument(
        duration=doc.duration + offset,
        tracks={
            j: [RotationKey(k.time + offset, k.rotation) for k in keys]
            for j, keys in doc.tracks.items()
        },
        nonmanual=[replace(n, time=n.time + offset) for n in doc.nonmanual],
        markers=[BoundaryMarker(m.time + offset, m.gloss) for m in doc.markers],
        anchors=[replace(a, time=a.time + offset) for a in doc.anchors],
    )


def concatenate(
    docs: list[AnimationDocument],
    policy: TransitionPolicy = TransitionPolicy(),
    neutral_return: bool = True,
) -> AnimationDocument:
    """Chain documents on one global timeline with policy-sized gaps.

    No keys are inserted inside the gaps; sampling interpolates from the
    last key of one sign to the first key of the next. With neutral_return
    the result ends in a transition to the rest posture (keys for every
    tracked joint plus the rest pose's own joints at the final time).
    """
    if not docs:
        raise InvalidArgumentError("cannot concatenate an empty document list")
    out = AnimationDocument()
    offset = 0.0
    for i, doc in enumerate(docs):
        if i > 0:
            # The outgoing posture is the accumulated timeline's, not just the
            # previous document's: joints keyed earlier keep holding their last
            # rotation, and sizing the gap from them keeps chaining associative.
            offset += transition_duration(end_posture(out), start_posture(doc), policy)
        shifted = _shifted(doc, offset)
        for joint, keys in shifted.tracks.items():
            out.tracks.setdefault(joint, []).extend(keys)
        out.nonmanual.extend(shifted.nonmanual)
        out.markers.extend(shifted.markers)
        out.anchors.extend(shifted.anchors)
        offset += doc.duration
    out.duration = offset

    if neutral_return:
        rest = neutral_posture()
        t_end = offset + transition_duration(end_posture(out), rest, policy)
        for joint in sorted(set(out.tracks) | set(rest.joints())):
            out.tracks.setdefault(joint, []).append(RotationKey(t_end, rest.rotation_of(joint)))
        out.duration = t_end

    out.nonmanual.sort(key=lambda n: (n.time, n.cue))
    out.markers.sort(key=lambda m: m.time)
    out.anchors.sort(key=lambda a: a.time)
    return _check_tracks(out)


def _overlap(a: list[RotationKey], b: list[RotationKey]) -> tuple[float, float] | None:
    lo = max(a[0].time, b[0].time)
    hi = min(a[-1].time, b[-1].time)
    return (lo, hi) if lo <= hi else None


def merge_simultaneous(base: AnimationDocument, overlay: AnimationDocument) -> AnimationDocument:
    """Union two documents; same-joint overlapping keys are a hard error."""
    if overlay.duration > base.duration + 1e-9:
        raise InvalidArgumentError(
            f"overlay duration {overlay.duration} exceeds base duration {base.duration}"
        )
    out = AnimationDocument(
        duration=base.duration,
        tracks={j: list(keys) for j, keys in base.tracks.items()},
        nonmanual=list(base.nonmanual),
        markers=list(base.markers),
        anchors=list(base.anchors),
    )
    for joint, keys in overlay.tracks.items():
        if not keys:
            continue
        if joint in out.tracks and out.tracks[joint]:
            conflict = _overlap(out.tracks[joint], keys)
            if conflict is not None:
                raise TrackConflictError(joint, conflict)
            out.tracks[joint] = sorted(out.tracks[joint] + keys, key=lambda k: k.time)
        else:
            out.tracks[joint] = list(keys)
    out.nonmanual = sorted(out.nonmanual + overlay.nonmanual, key=lambda n: (n.time, n.cue))
    out.markers = sorted(out.markers + overlay.markers, key=lambda m: m.time)
    out.anchors = sorted(out.anchors + overlay.anchors, key=lambda a: a.time)
    return _check_tracks(out)


def retime(doc: AnimationDocument, scale: float) -> AnimationDocument:
    """Scale every time by a positive factor; rotations are untouched."""
    if not (math.isfinite(scale) and scale > 0.0):
        raise InvalidArgumentError(f"retime scale must be positive, got {scale!r}")
    return AnimationDocument(
        duration=doc.duration * scale,
        tracks={
            j: [RotationKey(k.time * scale, k.rotation) for k in keys]
            for j, keys in doc.tracks.items()
        },
        nonmanual=[replace(n, time=n.time * scale) for n in doc.nonmanual],
        markers=[BoundaryMarker(m.time * scale, m.gloss) for m in doc.markers],
        anchors=[replace(a, time=a.time * scale) for a in doc.anchors],
    )
