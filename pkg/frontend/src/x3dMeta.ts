/**
 * Pulls playback metadata out of an emitted X3D scene: the time sensor's
 * cycle interval and the sign boundary markers the scrub bar displays.
 */

import { descendants, parseXml } from './xml.js';

export interface BoundaryMarker {
  gloss: string;
  time: number;
}

export interface SceneMeta {
  cycleInterval: number;
  loop: boolean;
  markers: BoundaryMarker[];
  timeSensorDef: string | null;
}

export function parseSceneMeta(x3dText: string): SceneMeta {
  const root = parseXml(x3dText);
  const meta: SceneMeta = { cycleInterval: 0, loop: false, markers: [], timeSensorDef: null };

  const sensor = descendants(root, 'TimeSensor')[0];
  if (sensor) {
    meta.cycleInterval = Number(sensor.attrs['cycleInterval'] ?? 0);
    meta.loop = sensor.attrs['loop'] === 'true';
    meta.timeSensorDef = sensor.attrs['DEF'] ?? null;
  }

  for (const set of descendants(root, 'MetadataSet')) {
    if (set.attrs['name'] !== 'boundaries') continue;
    for (const entry of set.children) {
      if (entry.tag !== 'MetadataDouble') continue;
      meta.markers.push({
        gloss: entry.attrs['name'] ?? '',
        time: Number(entry.attrs['value'] ?? 0),
      });
    }
  }
  meta.markers.sort((a, b) => a.time - b.time);
  return meta;
}
