// Wire protocol types shared with the session server, plus a defensive
// parser for incoming frames. All timestamps are simulated-clock ms.

export type Phase = 'down' | 'move' | 'up';

export interface TouchMessage {
  type: 'touch';
  t: number;
  id: number;
  phase: Phase;
  x: number;
  y: number;
}

export type ClientMessage = { type: 'hello' } | TouchMessage | { type: 'flush' };

export interface PointGeometry {
  type: 'point';
  x: number;
  y: number;
}

export interface PathGeometry {
  type: 'polyline' | 'polygon';
  points: [number, number][];
}

export type Geometry = PointGeometry | PathGeometry;

export interface MapElement {
  id: string;
  kind: string;
  name: string;
  geometry: Geometry;
  description?: string;
}

export interface MapMessage {
  type: 'map';
  source: string;
  bounds: [number, number, number, number];
  elements: MapElement[];
  mode: string;
  params: [number, number, number, number];
}

export interface GestureMessage {
  type: 'gesture';
  kind: string;
  x: number;
  y: number;
  t: number;
}

export interface AnnouncementMessage {
  type: 'announcement';
  text: string;
  element_id: string | null;
  t: number;
}

export interface ErrorMessage {
  type: 'error';
  message: string;
}

export type ServerMessage = MapMessage | GestureMessage | AnnouncementMessage | ErrorMessage;

export function hello(): ClientMessage {
  return { type: 'hello' };
}

export function touch(t: number, id: number, phase: Phase, x: number, y: number): TouchMessage {
  return { type: 'touch', t, id, phase, x, y };
}

export function flush(): ClientMessage {
  return { type: 'flush' };
}

function isNum(v: unknown): v is number {
  return typeof v === 'number' && Number.isFinite(v);
}

// Returns null for frames that are not valid server messages; the caller
// decides whether to surface that (we log and drop).
export function parseServerMessage(raw: string): ServerMessage | null {
  let msg: unknown;
  try {
    msg = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof msg !== 'object' || msg === null) return null;
  const m = msg as Record<string, unknown>;
  switch (m.type) {
    case 'map': {
      if (typeof m.source !== 'string' || !Array.isArray(m.bounds) || !Array.isArray(m.elements)) {
        return null;
      }
      if (m.bounds.length !== 4 || !m.bounds.every(isNum)) return null;
      return m as unknown as MapMessage;
    }
    case 'gesture':
      if (typeof m.kind !== 'string' || !isNum(m.x) || !isNum(m.y) || !isNum(m.t)) return null;
      return m as unknown as GestureMessage;
    case 'announcement':
      if (typeof m.text !== 'string' || !isNum(m.t)) return null;
      return m as unknown as AnnouncementMessage;
    case 'error':
      if (typeof m.message !== 'string') return null;
      return m as unknown as ErrorMessage;
    default:
      return null;
  }
}
