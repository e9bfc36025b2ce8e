"""Sentence planning: frame documents to sign sequences to animation.

Input sentences arrive as frame-based JSON documents (frame name, role
fillers with stable discourse ids, tense, polarity). Planning allocates
signing-space loci for referents, orders the signs (referent nouns in
document order, verb last), resolves verb agreement against the loci,
and falls back to fingerspelling for out-of-vocabulary lemmas.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .compiler import (
    AnimationDocument,
    TransitionPolicy,
    compile_sign,
    concatenate,
    expand_compound,
    merge_simultaneous,
    retime,
)
from .errors import (
    InvalidArgumentError,
    LociCapacityError,
    PlanningError,
    SignforgeError,
    TranslationStageError,
    UnspellableWordError,
)
from .lexicon import Lexicon, NonManualEvent, SignEntry
from .rotation import Vec3

TENSES = ("past", "present", "future", "none")
POLARITIES = ("affirmative", "negative")

# Signing-space slots: chest-height arc, four azimuths in allocation order.
SLOT_AZIMUTHS_DEG = (30.0, -30.0, 60.0, -60.0)
SLOT_HEIGHT = 1.2
SLOT_RADIUS = 0.35

NEGATION_GLOSS = "NEG"
DEFAULT_LETTER_HOLD = 0.5

# Arabic combining marks ignored when fingerspelling (short vowels,
# tanwin, shadda, sukun, hamza marks, superscript alef, tatweel).
ARABIC_DIACRITICS = frozenset(
    "ًٌٍَُِّْٰٕٓٔـ"
)


def slot_point(index: int) -> Vec3:
    azimuth = math.radians(SLOT_AZIMUTHS_DEG[index])
    return (SLOT_RADIUS * math.sin(azimuth), SLOT_HEIGHT, SLOT_RADIUS * math.cos(azimuth))


@dataclass(frozen=True)
class Referent:
    lemma: str
    discourse_id: str


@dataclass(frozen=True)
class InterlinguaDocument:
    frame: str
    elements: dict[str, Referent] = field(default_factory=dict)  # document order
    tense: str = "none"
    polarity: str = "affirmative"


@dataclass(frozen=True)
class LociMap:
    points: dict[str, Vec3] = field(default_factory=dict)
    order: tuple[str, ...] = ()

    def locus(self, discourse_id: str) -> Vec3:
        return self.points[discourse_id]

    def __contains__(self, discourse_id: str) -> bool:
        return discourse_id in self.points

    def as_json(self) -> str:
        return json.dumps(
            {k: list(self.points[k]) for k in self.order}, ensure_ascii=True, sort_keys=False
        )


@dataclass(frozen=True)
class SignItem:
    gloss: str
    start: Vec3 | None = None
    end: Vec3 | None = None


@dataclass(frozen=True)
class FingerspellItem:
    word: str
    letter_glosses: tuple[str, ...]
    hold: float = DEFAULT_LETTER_HOLD


PlanItem = SignItem | FingerspellItem


@dataclass(frozen=True)
class SentencePlan:
    items: tuple[PlanItem, ...]
    headshake_negation: bool = False
    warnings: tuple[str, ...] = ()


def no_duplicate_keys(pairs):
    seen = set()
    for key, _ in pairs:
        if key in seen:
            raise InvalidArgumentError(f"duplicate role or key {key!r}")
        seen.add(key)
    return dict(pairs)


def document_from_obj(obj: dict) -> InterlinguaDocument:
    if not isinstance(obj, dict):
        raise InvalidArgumentError("sentence must be a JSON object")
    frame = obj.get("frame")
    if not isinstance(frame, str) or not frame:
        raise InvalidArgumentError("frame: missing or empty")
    elements: dict[str, Referent] = {}
    for role, filler in (obj.get("elements") or {}).items():
        path = f"elements.{role}"
        if not isinstance(filler, dict):
            raise InvalidArgumentError(f"{path}: must be an object")
        lemma = filler.get("lemma")
        if not isinstance(lemma, str) or not lemma:
            raise InvalidArgumentError(f"{path}.lemma: missing or empty")
        discourse_id = filler.get("id")
        if not isinstance(discourse_id, str) or not discourse_id:
            raise InvalidArgumentError(f"{path}.id: missing or empty")
        elements[role] = Referent(lemma, discourse_id)
    tense = obj.get("tense", "none")
    if tense not in TENSES:
        raise InvalidArgumentError(f"tense: {tense!r} not one of {TENSES}")
    polarity = obj.get("polarity", "affirmative")
    if polarity not in POLARITIES:
        raise InvalidArgumentError(f"polarity: {polarity!r} not one of {POLARITIES}")
    return InterlinguaDocument(frame, elements, tense, polarity)


def parse_interlingua(json_text: str) -> InterlinguaDocument:
    """Parse one sentence document; duplicate roles are rejected."""
    try:
        obj = json.loads(json_text, object_pairs_hook=no_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise InvalidArgumentError(f"invalid JSON: {exc}") from exc
    return document_from_obj(obj)


def parse_interlingua_many(json_text: str) -> list[InterlinguaDocument]:
    """Parse a sentence array (a single object is accepted as one sentence)."""
    try:
        data = json.loads(json_text, object_pairs_hook=no_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise InvalidArgumentError(f"invalid JSON: {exc}") from exc
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise InvalidArgumentError("expected a sentence object or array of sentences")
    return [document_from_obj(obj) for obj in data]


def allocate_loci(doc: InterlinguaDocument, existing: LociMap) -> LociMap:
    """Assign signing-space slots to new referents; old ones keep theirs.

    New referents take slots in role-name alphabetical order; a discourse
    id already present keeps its point for the rest of the discourse.
    """
    points = dict(existing.points)
    order = list(existing.order)
    new_ids: list[str] = []
    for role in sorted(doc.elements):
        ref = doc.elements[role]
        if ref.discourse_id not in points and ref.discourse_id not in new_ids:
            new_ids.append(ref.discourse_id)
    if len(order) + len(new_ids) > len(SLOT_AZIMUTHS_DEG):
        raise LociCapacityError(
            f"{len(new_ids)} new referents but only "
            f"{len(SLOT_AZIMUTHS_DEG) - len(order)} free signing-space slots"
        )
    for discourse_id in new_ids:
        points[discourse_id] = slot_point(len(order))
        order.append(discourse_id)
    return LociMap(points, tuple(order))


def apply_agreement(verb: SignEntry, subj_locus: Vec3, obj_locus: Vec3) -> SignItem:
    """Plan item for an agreeing verb moving subject locus -> object locus."""
    if verb.syntax.agreement != "subject-object":
        raise PlanningError(f"sign {verb.gloss!r} is not a subject-object agreeing verb")
    return SignItem(verb.gloss, start=subj_locus, end=obj_locus)


def strip_diacritics(word: str) -> str:
    return "".join(ch for ch in word if ch not in ARABIC_DIACRITICS)


def fingerspell(word: str, lex: Lexicon) -> FingerspellItem:
    """Letter-by-letter plan item for an out-of-vocabulary word."""
    letters = strip_diacritics(word)
    if not letters:
        raise InvalidArgumentError("cannot fingerspell an empty word")
    glosses: list[str] = []
    for letter in letters:
        gloss = lex.alphabet.get(letter)
        if gloss is None:
            raise UnspellableWordError(letter, word)
        glosses.append(gloss)
    return FingerspellItem(word, tuple(glosses))


def _noun_item(lemma: str, lex: Lexicon) -> PlanItem:
    glosses = lex.lemma_index.get(lemma, ())
    if glosses:
        return SignItem(glosses[0])
    return fingerspell(lemma, lex)


def _verb_item(doc: InterlinguaDocument, lex: Lexicon, loci: LociMap) -> PlanItem:
    candidates = [
        lex.signs[g] for g in lex.frame_index.get(doc.frame, ()) if lex.signs[g].syntax.category == "verb"
    ]
    if not candidates:
        try:
            return fingerspell(doc.frame, lex)
        except (UnspellableWordError, InvalidArgumentError) as exc:
            raise PlanningError(
                f"frame {doc.frame!r} has no verb sign and cannot be fingerspelled"
            ) from exc
    verb = candidates[0]
    roles = list(doc.elements)
    if verb.syntax.agreement == "subject-object":
        if len(roles) < 2:
            raise PlanningError(
                f"agreeing verb {verb.gloss!r} needs two referents, got {len(roles)}"
            )
        subj = loci.locus(doc.elements[roles[0]].discourse_id)
        obj = loci.locus(doc.elements[roles[1]].discourse_id)
        return apply_agreement(verb, subj, obj)
    if verb.syntax.agreement == "subject":
        if not roles:
            raise PlanningError(f"agreeing verb {verb.gloss!r} needs a subject referent")
        return SignItem(verb.gloss, start=loci.locus(doc.elements[roles[0]].discourse_id))
    return SignItem(verb.gloss)


def plan_sentence(doc: InterlinguaDocument, lex: Lexicon, loci: LociMap) -> SentencePlan:
    """Order: optional tense sign, referent nouns (document order: subject
    first), frame verb last, negation sign appended when polarity is
    negative (head-shake overlay when no NEG sign exists)."""
    items: list[PlanItem] = []
    warnings: list[str] = []
    headshake = False

    if doc.tense in ("past", "future"):
        tense_gloss = doc.tense.upper()
        if tense_gloss in lex.signs:
            items.append(SignItem(tense_gloss))
        else:
            warnings.append(f"no lexical sign for tense {doc.tense!r}; marker dropped")

    for role in doc.elements:
        items.append(_noun_item(doc.elements[role].lemma, lex))

    items.append(_verb_item(doc, lex, loci))

    if doc.polarity == "negative":
        if NEGATION_GLOSS in lex.signs:
            items.append(SignItem(NEGATION_GLOSS))
        else:
            headshake = True

    return SentencePlan(tuple(items), headshake, tuple(warnings))


def citation_item(entry: SignEntry) -> SignItem:
    """Citation-form plan item: placeholder anchors get default loci."""
    start = end = None
    for kind in ("start", "end"):
        anchor = entry.anchor_of(kind)
        if anchor is not None and anchor.ref is not None:
            point = slot_point(0) if kind == "start" else slot_point(1)
            if kind == "start":
                start = point
            else:
                end = point
    return SignItem(entry.gloss, start, end)


def compile_plan_item(
    item: PlanItem, lex: Lexicon, policy: TransitionPolicy = TransitionPolicy()
) -> list[AnimationDocument]:
    """Lower one plan item to local-timeline documents.

    Simple signs yield one document, compounds one per flattened component,
    and fingerspelling runs one pre-concatenated document whose letters are
    each retimed to the run's hold duration.
    """
    if isinstance(item, SignItem):
        entry = lex.signs.get(item.gloss)
        if entry is None:
            raise PlanningError(f"plan references unknown gloss {item.gloss!r}")
        if entry.is_compound:
            return expand_compound(entry, lex)
        return [compile_sign(entry, lex, item.start, item.end)]
    letter_docs: list[AnimationDocument] = []
    for gloss in item.letter_glosses:
        entry = lex.signs.get(gloss)
        if entry is None:
            raise PlanningError(f"alphabet references unknown sign {gloss!r}")
        doc = compile_sign(entry, lex)
        letter_docs.append(retime(doc, item.hold / doc.duration))
    return [concatenate(letter_docs, policy, neutral_return=False)]


def _headshake_overlay(duration: float) -> AnimationDocument:
    return AnimationDocument(
        duration=duration,
        nonmanual=[
            NonManualEvent(0.0, "head_tilt", 1.0),
            NonManualEvent(duration, "head_tilt", 0.0),
        ],
    )


def translate(
    doc: InterlinguaDocument,
    lex: Lexicon,
    existing: LociMap = LociMap(),
    policy: TransitionPolicy = TransitionPolicy(),
) -> tuple[AnimationDocument, LociMap]:
    """Full pipeline for one sentence; returns the updated loci map.

    Failures carry the stage that produced them (allocation, planning,
    compilation, assembly).
    """
    try:
        loci = allocate_loci(doc, existing)
    except SignforgeError as exc:
        raise TranslationStageError("allocation", exc) from exc
    try:
        plan = plan_sentence(doc, lex, loci)
    except SignforgeError as exc:
        raise TranslationStageError("planning", exc) from exc
    try:
        docs: list[AnimationDocument] = []
        for item in plan.items:
            docs.extend(compile_plan_item(item, lex, policy))
    except SignforgeError as exc:
        raise TranslationStageError("compilation", exc) from exc
    try:
        out = concatenate(docs, policy, neutral_return=True)
        if plan.headshake_negation:
            out = merge_simultaneous(out, _headshake_overlay(out.duration))
    except SignforgeError as exc:
        raise TranslationStageError("assembly", exc) from exc
    return out, loci


def translate_many(
    sentences: list[InterlinguaDocument],
    lex: Lexicon,
    existing: LociMap = LociMap(),
    policy: TransitionPolicy = TransitionPolicy(),
) -> tuple[AnimationDocument, LociMap]:
    """Translate a sentence sequence with one threaded loci map."""
    if not sentences:
        raise InvalidArgumentError("no sentences to translate")
    loci = existing
    docs: list[AnimationDocument] = []
    for sentence in sentences:
        doc, loci = translate(sentence, lex, loci, policy)
        docs.append(doc)
    if len(docs) == 1:
        return docs[0], loci
    return concatenate(docs, policy, neutral_return=False), loci
