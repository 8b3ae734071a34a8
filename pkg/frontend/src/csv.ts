// Session-log CSV export, byte-compatible with the engine's own files so
// an exported session replays through the CLI without modification.

import { Phase } from './protocol.js';

export interface LoggedEvent {
  t: number;
  id: number;
  phase: Phase;
  x: number;
  y: number;
}

// Matches the server's number formatting: integral values print without a
// decimal part (JS numbers do this natively) and everything else as the
// shortest round-tripping decimal, which String() produces for the map's
// coordinate range.
export function fmtNum(v: number): string {
  return String(v);
}

export interface SessionHeader {
  mapName: string;
  mode: string;
  params: [number, number, number, number];
}

// The browser client always runs against the server's identity calibration.
const IDENTITY_CAL = '1,0,0,0,1,0';

export function sessionCsv(header: SessionHeader, events: LoggedEvent[]): string {
  const lines = [
    `# map=${header.mapName}`,
    `# cal=${IDENTITY_CAL}`,
    `# mode=${header.mode}`,
    `# params=${header.params.map(fmtNum).join(',')}`,
    'timestamp_ms,contact_id,phase,x,y',
  ];
  for (const e of events) {
    lines.push(`${e.t},${e.id},${e.phase},${fmtNum(e.x)},${fmtNum(e.y)}`);
  }
  return lines.join('\n') + '\n';
}
