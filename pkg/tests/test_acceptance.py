"""Acceptance gate: every criterion at its stated tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS line per
criterion. Each test exercises exactly one criterion; tolerances are
pinned in the assertions, not configurable.
"""

import json
import math
from pathlib import Path

import numpy as np
from fastapi.testclient import TestClient

from genlex import assert_lexicon_equal, random_lexicon
from oracles import BASIS, matrix_to_quaternion, quaternion_to_matrix, ypr_matrix
from signforge.cli import main
from signforge.compiler import TransitionPolicy, compile_sign, concatenate
from signforge.lexicon import parse_lexicon, serialize_lexicon, validate_lexicon
from signforge.planner import (
    LociMap,
    citation_item,
    compile_plan_item,
    fingerspell,
    parse_interlingua,
    slot_point,
    translate,
)
from signforge.rotation import (
    AxisAngle,
    EulerYPR,
    Quaternion,
    angular_distance,
    axis_angle_to_quaternion,
    quaternion_to_axis_angle,
    quaternion_to_ypr,
    sample_track,
    slerp,
    ypr_to_quaternion,
)
from signforge.service import create_app
from signforge.x3d import EmissionOptions, emit_x3d, validate_emission

GOLDEN = Path(__file__).parent / "golden" / "help_citation.x3d"

ASSIST_JSON = (
    '{"frame": "Assistance", "elements": {'
    '"Helper": {"lemma": "الولد", "id": "r1"}, '
    '"Benefited": {"lemma": "البنت", "id": "r2"}}}'
)
ASSIST_SWAPPED_JSON = (
    '{"frame": "Assistance", "elements": {'
    '"Benefited": {"lemma": "البنت", "id": "r2"}, '
    '"Helper": {"lemma": "الولد", "id": "r1"}}}'
)


def _passed(name: str) -> None:
    print(f"ACCEPTANCE PASS: {name}")


def _random_unit(rng) -> Quaternion:
    v = rng.normal(size=4)
    v = v / np.linalg.norm(v)
    return Quaternion(*(float(c) for c in v))


def test_rotation_suite():
    rng = np.random.default_rng(2024)
    # 10^4 yaw-pitch-roll round-trips within 1e-9 rad per component.
    for _ in range(10_000):
        yaw, roll = rng.uniform(-math.pi, math.pi, size=2)
        pitch = rng.uniform(-(math.pi / 2 - 0.1), math.pi / 2 - 0.1)
        e = quaternion_to_ypr(ypr_to_quaternion(EulerYPR(float(yaw), float(pitch), float(roll))))
        assert abs(e.yaw - yaw) <= 1e-9
        assert abs(e.pitch - pitch) <= 1e-9
        assert abs(e.roll - roll) <= 1e-9
    # 10^4 axis-angle round-trips preserving the action on basis vectors.
    for _ in range(10_000):
        v = rng.normal(size=3)
        axis = tuple(float(c) for c in (v / np.linalg.norm(v)))
        angle = float(rng.uniform(0.0, math.pi))
        q = axis_angle_to_quaternion(AxisAngle(axis, angle))
        back = axis_angle_to_quaternion(quaternion_to_axis_angle(q))
        m0 = quaternion_to_matrix(q.w, q.x, q.y, q.z)
        m1 = quaternion_to_matrix(back.w, back.x, back.y, back.z)
        for basis in BASIS:
            assert float(np.max(np.abs(m0 @ basis - m1 @ basis))) <= 1e-9
    # Slerp endpoints within 1e-12 and constant angular velocity within 1e-9.
    for _ in range(2_000):
        q0, q1 = _random_unit(rng), _random_unit(rng)
        assert angular_distance(slerp(q0, q1, 0.0), q0) <= 1e-12
        assert angular_distance(slerp(q0, q1, 1.0), q1) <= 1e-12
        total = angular_distance(q0, q1)
        t = float(rng.uniform())
        assert abs(angular_distance(slerp(q0, q1, t), q0) - t * total) <= 1e-9
    _passed("rotation suite (round-trips, slerp endpoints, constant velocity)")


def test_composition_oracle():
    rng = np.random.default_rng(2025)
    for _ in range(1_000):
        yaw, pitch, roll = (float(v) for v in rng.uniform(-math.pi, math.pi, size=3))
        q = ypr_to_quaternion(EulerYPR(yaw, pitch, roll))
        expect = matrix_to_quaternion(ypr_matrix(yaw, pitch, roll))
        assert angular_distance(q, Quaternion(*expect).normalized()) <= 1e-9
    _passed("composition agrees with independent matrix pipeline (1e3 samples)")


def test_lexicon_round_trip():
    rng = np.random.default_rng(2026)
    for _ in range(100):
        lex = random_lexicon(rng)
        assert [d for d in validate_lexicon(lex) if d.severity == "error"] == []
        back = parse_lexicon(serialize_lexicon(lex))
        assert_lexicon_equal(lex, back, rot_tol=1e-6)
    _passed("lexicon round-trip (100 random lexica, rotations within 1e-6)")


def test_compiled_sentence_continuity(lexicon):
    rng = np.random.default_rng(2027)
    glosses = ["BOY", "GIRL", "WATER", "TEACHER", "BOOK", "HOUSE", "NEG", "HOME", "PAST", "ABOVE"]
    policy = TransitionPolicy()
    eps = 1e-4
    for _ in range(50):
        picks = rng.choice(glosses, size=3, replace=False)
        docs = [compile_sign(lexicon.signs[g], lexicon) for g in picks]
        out = concatenate(docs, policy)
        for joint, keys in out.tracks.items():
            times = [k.time for k in keys]
            assert all(t1 > t0 for t0, t1 in zip(times, times[1:])), (joint, times)
            omega = max(
                (
                    angular_distance(k0.rotation, k1.rotation) / (k1.time - k0.time)
                    for k0, k1 in zip(keys, keys[1:])
                ),
                default=0.0,
            )
            bound = omega * eps * (1 + 1e-6) + 1e-12
            # Fine sweep around every key time (the only places a
            # discontinuity could appear) plus the document ends.
            probes = set(times) | {0.0, out.duration}
            for t0 in probes:
                for t in np.arange(t0 - 5 * eps, t0 + 5 * eps, eps):
                    a = sample_track(keys, float(t))
                    b = sample_track(keys, float(t) + eps)
                    assert angular_distance(a, b) <= bound
        # Explicit zero-discontinuity check at each sign boundary.
        for marker in out.markers:
            for joint, keys in out.tracks.items():
                omega = max(
                    (
                        angular_distance(k0.rotation, k1.rotation) / (k1.time - k0.time)
                        for k0, k1 in zip(keys, keys[1:])
                    ),
                    default=0.0,
                )
                before = sample_track(keys, marker.time - eps)
                at = sample_track(keys, marker.time)
                after = sample_track(keys, marker.time + eps)
                assert angular_distance(before, at) <= omega * eps * (1 + 1e-6) + 1e-12
                assert angular_distance(at, after) <= omega * eps * (1 + 1e-6) + 1e-12
    _passed("compiled-sentence continuity (50 sentences, eps=1e-4 sweep)")


def test_agreement_correctness(lexicon):
    doc, loci = translate(parse_interlingua(ASSIST_JSON), lexicon, LociMap())
    anchors = {a.kind: a for a in doc.anchors}
    # Slot geometry: slot 1 as quoted, slot 2 mirrored across the x axis.
    s0, s1 = slot_point(0), slot_point(1)
    assert abs(s0[0] - 0.175) < 5e-4 and abs(s0[1] - 1.2) < 1e-12 and abs(s0[2] - 0.303) < 5e-4
    assert s1 == (-s0[0], s0[1], s0[2])
    # Benefited allocates first (alphabetical), Helper is the subject.
    assert loci.points["r2"] == s0
    assert loci.points["r1"] == s1
    # Verb anchors equal the allocated loci exactly (same floats).
    assert anchors["start"].point == loci.points["r1"]
    assert anchors["end"].point == loci.points["r2"]
    # Swapping the roles swaps the anchors.
    swapped_doc, swapped_loci = translate(parse_interlingua(ASSIST_SWAPPED_JSON), lexicon, LociMap())
    swapped = {a.kind: a for a in swapped_doc.anchors}
    assert swapped_loci.points == loci.points
    assert swapped["start"].point == anchors["end"].point
    assert swapped["end"].point == anchors["start"].point
    _passed("agreement correctness (anchors equal loci exactly; swap symmetry)")


def test_fingerspelling_arithmetic(lexicon):
    run = compile_plan_item(fingerspell("باب", lexicon), lexicon, TransitionPolicy())[0]
    assert abs(run.duration - (3 * 0.5 + 2 * 0.15)) <= 1e-9
    assert len(run.markers) == 3
    _passed("fingerspelling arithmetic (3 letters -> 1.8 s, 3 markers)")


def test_emission_determinism_and_validity(lexicon):
    policy = TransitionPolicy()
    opts = EmissionOptions()
    fixtures = []
    for glosses in (["HELP"], ["BOY", "GIRL"], ["CEILING"], ["WATER", "NEG", "BOOK"]):
        docs = []
        for g in glosses:
            docs.extend(compile_plan_item(citation_item(lexicon.signs[g]), lexicon, policy))
        fixtures.append(concatenate(docs, policy))
    for doc in fixtures:
        first = emit_x3d(doc, opts)
        assert first == emit_x3d(doc, opts)
        assert validate_emission(first) == []
        # Parse emitted keyValues back and compare with the source track.
        import xml.etree.ElementTree as ET

        root = ET.fromstring(first)
        cycle = doc.duration + opts.cycle_padding
        for interp in root.iter("OrientationInterpolator"):
            joint = interp.get("DEF").removeprefix("Signer_").removesuffix("_rot")
            floats = [float(v) for v in interp.get("keyValue").split()]
            keys = doc.tracks[joint]
            assert len(floats) == 4 * len(keys)
            for i, key in enumerate(keys):
                x, y, z, angle = floats[4 * i : 4 * i + 4]
                n = math.sqrt(x * x + y * y + z * z)
                axis = (x / n, y / n, z / n) if n > 0 else (0.0, 0.0, 1.0)
                back = axis_angle_to_quaternion(AxisAngle(axis, angle))
                assert angular_distance(back, key.rotation) <= 5e-6
    # Golden scene: byte-for-byte.
    docs = compile_plan_item(citation_item(lexicon.signs["HELP"]), lexicon, policy)
    xml = emit_x3d(concatenate(docs, policy), opts)
    assert xml == GOLDEN.read_text("utf-8")
    _passed("emission determinism, validity, 5e-6 readback, golden diff")


def test_cli_and_service_contract(lexicon_file, tmp_path, capsys):
    # Exit-code table: 0 success, 1 domain error, 2 usage error.
    assert main(["validate", str(lexicon_file)]) == 0
    out = tmp_path / "o.x3d"
    assert main(["compile", "--lexicon", str(lexicon_file), "--signs", "HELP", "--out", str(out)]) == 0
    assert validate_emission(out.read_text("utf-8")) == []
    assert main(["compile", "--lexicon", str(lexicon_file), "--signs", "NOPE", "--out", str(out)]) == 1
    assert main(["validate", "/missing/file.xml"]) == 1
    sentences = tmp_path / "bad.json"
    sentences.write_text(
        json.dumps([{"frame": "Quantum", "elements": {"X": {"lemma": "xyz", "id": "q"}}}]),
        encoding="utf-8",
    )
    assert (
        main(
            ["translate", "--lexicon", str(lexicon_file), "--in", str(sentences), "--out", str(out)]
        )
        == 1
    )
    assert main(["frobnicate"]) == 2
    assert main(["validate", "--bogus-flag", "x"]) == 2
    capsys.readouterr()

    # Failed PUT leaves the served lexicon unchanged.
    with TestClient(create_app(lexicon_file)) as client:
        before = client.get("/signs/BOY").text
        revision = client.get("/lexicon").json()["revision"]
        corrupted = before.replace('<key t="0.400000"', '<key t="-1.000000"')
        response = client.put("/signs/BOY", content=corrupted.encode())
        assert response.status_code == 400
        assert client.get("/signs/BOY").text == before
        assert client.get("/lexicon").json()["revision"] == revision
        # Successful compile/translate bodies pass the structural check.
        compiled = client.post("/compile", json={"signs": ["HELP", "CEILING"]})
        assert compiled.status_code == 200 and validate_emission(compiled.text) == []
        translated = client.post(
            "/translate", json={"session": "acc", "sentences": [json.loads(ASSIST_JSON)]}
        )
        assert translated.status_code == 200 and validate_emission(translated.text) == []
    _passed("CLI exit codes and service write atomicity")
