/**
 * Round-trip against a live local service: spawns `signforge serve` on a
 * scratch copy of the sample lexicon, edits a key through the editor-state
 * logic, saves with If-Match, reloads, and previews a sentence twice in
 * one session. Requires the Python package to be installed (pip install -e .).
 */

import { spawn, ChildProcess } from 'node:child_process';
import { copyFileSync, mkdtempSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { fileURLToPath } from 'node:url';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { StudioApi } from '../src/api.js';
import { canSave, committed, openSession, setKeyYpr, workingFragment } from '../src/editorState.js';
import { parseSignFragment } from '../src/signModel.js';
import { parseSceneMeta } from '../src/x3dMeta.js';

const PORT = 8741;
const BASE = `http://127.0.0.1:${PORT}`;
const LEXICON = fileURLToPath(new URL('../../src/signforge/data/lexicon_lsa.xml', import.meta.url));

let server: ChildProcess;

async function waitForService(): Promise<void> {
  for (let i = 0; i < 60; i++) {
    try {
      const r = await fetch(`${BASE}/lexicon`);
      if (r.ok) return;
    } catch {
      /* not up yet */
    }
    await new Promise((resolve) => setTimeout(resolve, 500));
  }
  throw new Error('service did not come up');
}

beforeAll(async () => {
  const dir = mkdtempSync(join(tmpdir(), 'signforge-studio-'));
  const lexicon = join(dir, 'lexicon.xml');
  copyFileSync(LEXICON, lexicon);
  server = spawn('python3', ['-m', 'signforge.cli', 'serve', '--lexicon', lexicon, '--port', String(PORT)], {
    stdio: 'ignore',
  });
  await waitForService();
}, 45_000);

afterAll(() => {
  server?.kill();
});

describe('studio round-trip against a live service', () => {
  const api = new StudioApi(BASE);

  it('edits a key, saves with If-Match, and re-fetches the edit', async () => {
    const fragment = await api.getSign('BOY');
    const session = openSession('BOY', fragment.xml, fragment.revision);

    setKeyYpr(session, 'r_shoulder', 1, 'pitch', -0.33);
    expect(canSave(session)).toBe(true);

    const result = await api.putSign('BOY', workingFragment(session), session.revision);
    expect(result.ok).toBe(true);
    if (result.ok) committed(session, result.revision);

    const reloaded = await api.getSign('BOY');
    const model = parseSignFragment(reloaded.xml);
    expect(model.channels.find((c) => c.joint === 'r_shoulder')?.keys[1].pitch).toBeCloseTo(-0.33, 6);
    expect(reloaded.revision).toBe(session.revision);
  });

  it('rejects invalid edits with inline diagnostics and keeps the lexicon', async () => {
    const fragment = await api.getSign('GIRL');
    const session = openSession('GIRL', fragment.xml, fragment.revision);
    session.working.channels[0].keys[1].t = -1; // violates the invariant
    expect(canSave(session)).toBe(false); // the editor already refuses

    // Bypassing the editor guard still cannot corrupt the server.
    const result = await api.putSign('GIRL', workingFragment(session), session.revision);
    expect(result.ok).toBe(false);
    if (!result.ok) expect(result.diagnostics.length).toBeGreaterThan(0);
    const after = await api.getSign('GIRL');
    expect(after.xml).toBe(fragment.xml);
  });

  it('stale revision surfaces a conflict (409)', async () => {
    const fragment = await api.getSign('WATER');
    const result = await api.putSign('WATER', fragment.xml, '"999"');
    expect(result.ok).toBe(false);
    if (!result.ok) expect(result.status).toBe(409);
  });

  it('previews two sentences in one session with identical loci tables', async () => {
    const sentence = {
      frame: 'Assistance',
      elements: {
        Helper: { lemma: 'الولد', id: 'p1' },
        Benefited: { lemma: 'البنت', id: 'p2' },
      },
    };
    const first = await api.translate('studio-it', [sentence]);
    const second = await api.translate('studio-it', [sentence]);
    expect(second.loci).toEqual(first.loci);
    expect(Object.keys(first.loci).sort()).toEqual(['p1', 'p2']);

    const meta = parseSceneMeta(second.body);
    expect(meta.markers.map((m) => m.gloss)).toEqual(['BOY', 'GIRL', 'HELP']);
    expect(meta.cycleInterval).toBeGreaterThan(0);
  });

  it('fingerspelling preview shows one marker per letter', async () => {
    const scene = await api.fingerspell('باب');
    const meta = parseSceneMeta(scene);
    expect(meta.markers).toHaveLength(3);
  });
});
