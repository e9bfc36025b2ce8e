import { describe, expect, it } from 'vitest';

import {
  addKey,
  canSave,
  committed,
  deleteKey,
  duration,
  isDirty,
  moveKey,
  openSession,
  setKeyYpr,
  violations,
  workingFragment,
} from '../src/editorState.js';
import { parseSignFragment } from '../src/signModel.js';
import { HELP_FRAGMENT } from './signModel.test.js';

const open = () => openSession('HELP', HELP_FRAGMENT, '"1"');

describe('dirty flag', () => {
  it('is clean right after opening', () => {
    const session = open();
    expect(isDirty(session)).toBe(false);
    expect(canSave(session)).toBe(false); // nothing to save
  });

  it('turns dirty on an edit and clean when reverted', () => {
    const session = open();
    setKeyYpr(session, 'r_shoulder', 1, 'pitch', 1.0);
    expect(isDirty(session)).toBe(true);
    setKeyYpr(session, 'r_shoulder', 1, 'pitch', 0.9);
    expect(isDirty(session)).toBe(false);
  });

  it('clears after a successful commit', () => {
    const session = open();
    setKeyYpr(session, 'r_shoulder', 1, 'pitch', 1.1);
    committed(session, '"2"');
    expect(isDirty(session)).toBe(false);
    expect(session.revision).toBe('"2"');
  });
});

describe('key-time invariants', () => {
  it('flags decreasing times and disables save', () => {
    const session = open();
    session.working.channels[0].keys[1].t = 0; // duplicate of the first key
    expect(violations(session).length).toBeGreaterThan(0);
    expect(canSave(session)).toBe(false);
  });

  it('flags a first key away from zero', () => {
    const session = open();
    session.working.channels[0].keys[0].t = 0.1;
    expect(violations(session).some((v) => v.message.includes('t=0'))).toBe(true);
  });

  it('passes a valid edit', () => {
    const session = open();
    setKeyYpr(session, 'r_shoulder', 1, 'pitch', 1.0);
    expect(violations(session)).toEqual([]);
    expect(canSave(session)).toBe(true);
  });
});

describe('key operations', () => {
  it('addKey keeps order and copies the previous pose', () => {
    const session = open();
    addKey(session, 'r_shoulder', 0.3);
    const keys = session.working.channels[0].keys;
    expect(keys.map((k) => k.t)).toEqual([0, 0.3, 0.6]);
    expect(keys[1].pitch).toBe(0.4); // copied from the key at t=0
  });

  it('moveKey re-sorts', () => {
    const session = open();
    moveKey(session, 'r_shoulder', 0, 0.9);
    expect(session.working.channels[0].keys.map((k) => k.t)).toEqual([0.6, 0.9]);
  });

  it('deleteKey drops empty channels', () => {
    const session = open();
    deleteKey(session, 'r_elbow', 1);
    deleteKey(session, 'r_elbow', 0);
    expect(session.working.channels.map((c) => c.joint)).toEqual(['r_shoulder']);
  });

  it('duration follows the last key', () => {
    const session = open();
    expect(duration(session.working)).toBe(0.6);
    addKey(session, 'r_shoulder', 1.4);
    expect(duration(session.working)).toBe(1.4);
  });
});

describe('workingFragment', () => {
  it('serializes the edited copy, not the server copy', () => {
    const session = open();
    setKeyYpr(session, 'r_shoulder', 1, 'pitch', 1.25);
    const model = parseSignFragment(workingFragment(session));
    expect(model.channels[0].keys[1].pitch).toBe(1.25);
  });
});
