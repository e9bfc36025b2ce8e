import { describe, expect, it } from 'vitest';

import { cloneModel, modelsEqual, parseSignFragment, serializeSignFragment } from '../src/signModel.js';

// Shape matches the service's canonical fragment serialization.
export const HELP_FRAGMENT = `<sign gloss="HELP">
  <semantics lemma="ساعد" frame="Assistance"/>
  <syntax category="verb" agreement="subject-object"/>
  <phonology>
    <channel joint="r_shoulder">
      <key t="0.000000" ypr="0.000000 0.400000 0.000000"/>
      <key t="0.600000" ypr="0.300000 0.900000 0.000000"/>
    </channel>
    <channel joint="r_elbow">
      <key t="0.000000" ypr="0.000000 0.200000 0.000000"/>
      <key t="0.600000" ypr="0.100000 0.500000 0.000000"/>
    </channel>
    <handshapeEvent t="0.000000" side="right" name="FLAT"/>
    <anchor kind="start" ref="SUBJ_LOCUS"/>
    <anchor kind="end" ref="OBJ_LOCUS"/>
    <nonmanual t="0.100000" cue="eye_gaze_right" intensity="0.800000"/>
  </phonology>
</sign>`;

const COMPOUND_FRAGMENT = `<sign gloss="CEILING">
  <semantics lemma="سقف" frame="Buildings"/>
  <syntax category="noun" agreement="none"/>
  <compound>
    <ref gloss="FLAT_SURFACE"/>
    <ref gloss="ABOVE"/>
  </compound>
</sign>`;

describe('parseSignFragment', () => {
  it('reads all three layers of a sign', () => {
    const model = parseSignFragment(HELP_FRAGMENT);
    expect(model.gloss).toBe('HELP');
    expect(model.lemma).toBe('ساعد');
    expect(model.frame).toBe('Assistance');
    expect(model.category).toBe('verb');
    expect(model.agreement).toBe('subject-object');
    expect(model.channels.map((c) => c.joint)).toEqual(['r_shoulder', 'r_elbow']);
    expect(model.channels[0].keys[1]).toEqual({ t: 0.6, yaw: 0.3, pitch: 0.9, roll: 0 });
    expect(model.handshapeEvents).toEqual([{ t: 0, side: 'right', name: 'FLAT' }]);
    expect(model.anchors).toEqual([
      { kind: 'start', ref: 'SUBJ_LOCUS' },
      { kind: 'end', ref: 'OBJ_LOCUS' },
    ]);
    expect(model.nonmanual).toEqual([{ t: 0.1, cue: 'eye_gaze_right', intensity: 0.8 }]);
    expect(model.compound).toEqual([]);
  });

  it('reads compound reference lists', () => {
    const model = parseSignFragment(COMPOUND_FRAGMENT);
    expect(model.compound).toEqual(['FLAT_SURFACE', 'ABOVE']);
    expect(model.channels).toEqual([]);
  });

  it('rejects non-sign roots', () => {
    expect(() => parseSignFragment('<lexicon/>')).toThrow(/expected <sign>/);
  });
});

describe('serializeSignFragment', () => {
  it('round-trips the model through XML', () => {
    for (const fragment of [HELP_FRAGMENT, COMPOUND_FRAGMENT]) {
      const model = parseSignFragment(fragment);
      const back = parseSignFragment(serializeSignFragment(model));
      expect(modelsEqual(model, back)).toBe(true);
    }
  });

  it('escapes attribute values', () => {
    const model = parseSignFragment(HELP_FRAGMENT);
    model.lemma = 'a & "b"';
    const xml = serializeSignFragment(model);
    expect(xml).toContain('lemma="a &amp; &quot;b&quot;"');
    expect(parseSignFragment(xml).lemma).toBe('a & "b"');
  });

  it('clones are independent', () => {
    const model = parseSignFragment(HELP_FRAGMENT);
    const copy = cloneModel(model);
    copy.channels[0].keys[0].pitch = 9;
    expect(model.channels[0].keys[0].pitch).toBe(0.4);
    expect(modelsEqual(model, copy)).toBe(false);
  });
});
