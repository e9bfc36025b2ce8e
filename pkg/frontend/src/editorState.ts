/**
 * Sign editor session state: server copy vs working copy, the dirty flag,
 * key-time invariants, and key editing operations. Pure logic -- the DOM
 * layer renders from this and calls back into it.
 */

import { cloneModel, modelsEqual, parseSignFragment, serializeSignFragment, SignModel } from './signModel.js';

export interface Violation {
  channel: string;
  message: string;
}

export interface EditorSession {
  gloss: string;
  revision: string;
  serverCopy: SignModel;
  working: SignModel;
  playing: boolean;
  timeCursor: number;
}

export function openSession(gloss: string, fragmentXml: string, revision: string): EditorSession {
  const serverCopy = parseSignFragment(fragmentXml);
  return {
    gloss,
    revision,
    serverCopy,
    working: cloneModel(serverCopy),
    playing: false,
    timeCursor: 0,
  };
}

export function isDirty(session: EditorSession): boolean {
  return !modelsEqual(session.working, session.serverCopy);
}

/** Key-time invariants the editor enforces before allowing a save. */
export function violations(session: EditorSession): Violation[] {
  const out: Violation[] = [];
  for (const channel of session.working.channels) {
    const times = channel.keys.map((k) => k.t);
    if (times.length === 0) {
      out.push({ channel: channel.joint, message: 'channel has no keys' });
      continue;
    }
    if (times[0] !== 0) {
      out.push({ channel: channel.joint, message: 'first key must be at t=0' });
    }
    for (let i = 1; i < times.length; i++) {
      if (times[i] <= times[i - 1]) {
        out.push({
          channel: channel.joint,
          message: `key times must strictly increase (${times[i - 1]} -> ${times[i]})`,
        });
      }
    }
  }
  return out;
}

export function canSave(session: EditorSession): boolean {
  return isDirty(session) && violations(session).length === 0;
}

export function workingFragment(session: EditorSession): string {
  return serializeSignFragment(session.working);
}

/** Mark the session clean after a successful save. */
export function committed(session: EditorSession, revision: string): void {
  session.serverCopy = cloneModel(session.working);
  session.revision = revision;
}

export function setKeyYpr(
  session: EditorSession,
  joint: string,
  index: number,
  part: 'yaw' | 'pitch' | 'roll',
  value: number,
): void {
  const channel = session.working.channels.find((c) => c.joint === joint);
  if (!channel || !channel.keys[index]) throw new Error(`no key ${index} on ${joint}`);
  channel.keys[index][part] = value;
}

export function moveKey(session: EditorSession, joint: string, index: number, t: number): void {
  const channel = session.working.channels.find((c) => c.joint === joint);
  if (!channel || !channel.keys[index]) throw new Error(`no key ${index} on ${joint}`);
  channel.keys[index].t = t;
  channel.keys.sort((a, b) => a.t - b.t);
}

export function addKey(session: EditorSession, joint: string, t: number): void {
  let channel = session.working.channels.find((c) => c.joint === joint);
  if (!channel) {
    channel = { joint, keys: [] };
    session.working.channels.push(channel);
  }
  const at = channel.keys.filter((k) => k.t <= t).pop();
  channel.keys.push({ t, yaw: at?.yaw ?? 0, pitch: at?.pitch ?? 0, roll: at?.roll ?? 0 });
  channel.keys.sort((a, b) => a.t - b.t);
}

export function deleteKey(session: EditorSession, joint: string, index: number): void {
  const channel = session.working.channels.find((c) => c.joint === joint);
  if (!channel || !channel.keys[index]) throw new Error(`no key ${index} on ${joint}`);
  channel.keys.splice(index, 1);
  if (channel.keys.length === 0) {
    session.working.channels = session.working.channels.filter((c) => c !== channel);
  }
}

export function duration(model: SignModel): number {
  let end = 0;
  for (const channel of model.channels) {
    for (const key of channel.keys) end = Math.max(end, key.t);
  }
  return end;
}
