/**
 * Editable in-memory form of one sign, converted to and from the service's
 * XML fragment. Only the shape matters on the way back: the service
 * validates and re-serializes canonically, so the studio's serializer just
 * has to produce a valid fragment.
 */

import { childrenOf, encodeAttribute, firstChild, parseXml, XmlElement } from './xml.js';

export interface KeyYpr {
  t: number;
  yaw: number;
  pitch: number;
  roll: number;
}

export interface ChannelModel {
  joint: string;
  keys: KeyYpr[];
}

export interface HandshapeEventModel {
  t: number;
  side: 'left' | 'right';
  name: string;
}

export interface AnchorModel {
  kind: 'start' | 'end';
  ref?: string;
  point?: [number, number, number];
}

export interface NonManualModel {
  t: number;
  cue: string;
  intensity: number;
}

export interface SignModel {
  gloss: string;
  lemma: string | null;
  frame: string | null;
  role: string | null;
  category: string;
  agreement: string;
  channels: ChannelModel[];
  handshapeEvents: HandshapeEventModel[];
  anchors: AnchorModel[];
  nonmanual: NonManualModel[];
  compound: string[];
}

function num(element: XmlElement, attr: string): number {
  const raw = element.attrs[attr];
  const value = Number(raw);
  if (raw === undefined || Number.isNaN(value)) {
    throw new Error(`<${element.tag}> has bad numeric attribute ${attr}=${raw}`);
  }
  return value;
}

function triple(element: XmlElement, attr: string): [number, number, number] {
  const parts = (element.attrs[attr] ?? '').trim().split(/\s+/).map(Number);
  if (parts.length !== 3 || parts.some(Number.isNaN)) {
    throw new Error(`<${element.tag}> has bad triple ${attr}=${element.attrs[attr]}`);
  }
  return [parts[0], parts[1], parts[2]];
}

export function parseSignFragment(xml: string): SignModel {
  const root = parseXml(xml);
  if (root.tag !== 'sign') throw new Error(`expected <sign>, got <${root.tag}>`);
  const gloss = root.attrs['gloss'];
  if (!gloss) throw new Error('<sign> is missing gloss');

  const semantics = firstChild(root, 'semantics');
  const syntax = firstChild(root, 'syntax');
  const phonology = firstChild(root, 'phonology');
  const compound = firstChild(root, 'compound');

  const model: SignModel = {
    gloss,
    lemma: semantics?.attrs['lemma'] ?? null,
    frame: semantics?.attrs['frame'] ?? null,
    role: semantics?.attrs['role'] ?? null,
    category: syntax?.attrs['category'] ?? 'noun',
    agreement: syntax?.attrs['agreement'] ?? 'none',
    channels: [],
    handshapeEvents: [],
    anchors: [],
    nonmanual: [],
    compound: compound ? childrenOf(compound, 'ref').map((r) => r.attrs['gloss'] ?? '') : [],
  };

  if (phonology) {
    for (const ch of childrenOf(phonology, 'channel')) {
      model.channels.push({
        joint: ch.attrs['joint'] ?? '',
        keys: childrenOf(ch, 'key').map((k) => {
          const [yaw, pitch, roll] = triple(k, 'ypr');
          return { t: num(k, 't'), yaw, pitch, roll };
        }),
      });
    }
    for (const ev of childrenOf(phonology, 'handshapeEvent')) {
      model.handshapeEvents.push({
        t: num(ev, 't'),
        side: (ev.attrs['side'] as 'left' | 'right') ?? 'right',
        name: ev.attrs['name'] ?? '',
      });
    }
    for (const anchor of childrenOf(phonology, 'anchor')) {
      const kind = anchor.attrs['kind'] as 'start' | 'end';
      if (anchor.attrs['ref'] !== undefined) {
        model.anchors.push({ kind, ref: anchor.attrs['ref'] });
      } else {
        model.anchors.push({ kind, point: triple(anchor, 'point') });
      }
    }
    for (const nm of childrenOf(phonology, 'nonmanual')) {
      model.nonmanual.push({ t: num(nm, 't'), cue: nm.attrs['cue'] ?? '', intensity: num(nm, 'intensity') });
    }
  }
  return model;
}

const fmt = (x: number): string => (Object.is(x, -0) ? 0 : x).toFixed(6);

export function serializeSignFragment(model: SignModel): string {
  const lines: string[] = [`<sign gloss="${encodeAttribute(model.gloss)}">`];
  if (model.lemma !== null || model.frame !== null || model.role !== null) {
    const attrs = [
      model.lemma !== null ? ` lemma="${encodeAttribute(model.lemma)}"` : '',
      model.frame !== null ? ` frame="${encodeAttribute(model.frame)}"` : '',
      model.role !== null ? ` role="${encodeAttribute(model.role)}"` : '',
    ].join('');
    lines.push(`  <semantics${attrs}/>`);
  }
  lines.push(
    `  <syntax category="${encodeAttribute(model.category)}" agreement="${encodeAttribute(model.agreement)}"/>`,
  );
  if (model.compound.length > 0) {
    lines.push('  <compound>');
    for (const ref of model.compound) lines.push(`    <ref gloss="${encodeAttribute(ref)}"/>`);
    lines.push('  </compound>');
  } else {
    lines.push('  <phonology>');
    for (const channel of model.channels) {
      lines.push(`    <channel joint="${encodeAttribute(channel.joint)}">`);
      for (const key of channel.keys) {
        lines.push(
          `      <key t="${fmt(key.t)}" ypr="${fmt(key.yaw)} ${fmt(key.pitch)} ${fmt(key.roll)}"/>`,
        );
      }
      lines.push('    </channel>');
    }
    for (const ev of model.handshapeEvents) {
      lines.push(
        `    <handshapeEvent t="${fmt(ev.t)}" side="${ev.side}" name="${encodeAttribute(ev.name)}"/>`,
      );
    }
    for (const anchor of model.anchors) {
      if (anchor.ref !== undefined) {
        lines.push(`    <anchor kind="${anchor.kind}" ref="${encodeAttribute(anchor.ref)}"/>`);
      } else if (anchor.point) {
        lines.push(`    <anchor kind="${anchor.kind}" point="${anchor.point.map(fmt).join(' ')}"/>`);
      }
    }
    for (const nm of model.nonmanual) {
      lines.push(
        `    <nonmanual t="${fmt(nm.t)}" cue="${encodeAttribute(nm.cue)}" intensity="${fmt(nm.intensity)}"/>`,
      );
    }
    lines.push('  </phonology>');
  }
  lines.push('</sign>');
  return lines.join('\n');
}

export function cloneModel(model: SignModel): SignModel {
  return JSON.parse(JSON.stringify(model));
}

export function modelsEqual(a: SignModel, b: SignModel): boolean {
  return JSON.stringify(a) === JSON.stringify(b);
}
