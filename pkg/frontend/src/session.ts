// Pure session state: simulated contacts, the event log, and the feed of
// server messages. No DOM, no sockets; the UI layer drives the clock and
// forwards the wire messages this produces. All gesture and hit semantics
// live on the server; this class never interprets touches itself.

import { LoggedEvent, SessionHeader, sessionCsv } from './csv.js';
import {
  AnnouncementMessage,
  GestureMessage,
  MapMessage,
  Phase,
  ServerMessage,
  TouchMessage,
  touch,
} from './protocol.js';

export interface SimContact {
  id: number;
  x: number;
  y: number;
  pinned: boolean;
  downT: number;
}

export class SessionCore {
  clock = 0;
  map: MapMessage | null = null;
  feed: AnnouncementMessage[] = [];
  gestures: GestureMessage[] = [];
  errors: string[] = [];
  contacts = new Map<number, SimContact>();

  private events: LoggedEvent[] = [];
  private nextId = 0;

  // The clock only moves forward; the server rejects time travel.
  setClock(ms: number): void {
    this.clock = Math.max(this.clock, Math.round(ms));
  }

  get eventCount(): number {
    return this.events.length;
  }

  private emit(id: number, phase: Phase, x: number, y: number): TouchMessage {
    this.events.push({ t: this.clock, id, phase, x, y });
    return touch(this.clock, id, phase, x, y);
  }

  contactDown(x: number, y: number, pinned = false): { id: number; msg: TouchMessage } {
    const id = this.nextId++;
    this.contacts.set(id, { id, x, y, pinned, downT: this.clock });
    return { id, msg: this.emit(id, 'down', x, y) };
  }

  contactMove(id: number, x: number, y: number): TouchMessage | null {
    const c = this.contacts.get(id);
    if (!c) return null; // stale drags are inert
    c.x = x;
    c.y = y;
    return this.emit(id, 'move', x, y);
  }

  contactUp(id: number): TouchMessage | null {
    const c = this.contacts.get(id);
    if (!c) return null;
    this.contacts.delete(id);
    return this.emit(id, 'up', c.x, c.y);
  }

  pinnedContactAt(x: number, y: number, radius: number): SimContact | null {
    let best: SimContact | null = null;
    let bestD = radius;
    for (const c of this.contacts.values()) {
      if (!c.pinned) continue;
      const d = Math.hypot(c.x - x, c.y - y);
      if (d <= bestD) {
        best = c;
        bestD = d;
      }
    }
    return best;
  }

  // Modifier-click: pin a resting finger, or lift the one already there.
  togglePin(x: number, y: number, radius = 8): TouchMessage[] {
    const existing = this.pinnedContactAt(x, y, radius);
    if (existing) {
      const up = this.contactUp(existing.id);
      return up ? [up] : [];
    }
    return [this.contactDown(x, y, true).msg];
  }

  onServer(msg: ServerMessage): void {
    switch (msg.type) {
      case 'map':
        this.map = msg;
        break;
      case 'gesture':
        this.gestures.push(msg);
        break;
      case 'announcement':
        this.feed.push(msg);
        break;
      case 'error':
        this.errors.push(msg.message);
        break;
    }
  }

  header(): SessionHeader {
    if (!this.map) throw new Error('no map received yet');
    return {
      mapName: this.map.source,
      mode: this.map.mode,
      params: this.map.params,
    };
  }

  exportCsv(): string {
    return sessionCsv(this.header(), this.events);
  }

  // Fresh session after a reconnect: cleared feed, clock restarted.
  reset(): void {
    this.clock = 0;
    this.map = null;
    this.feed = [];
    this.gestures = [];
    this.errors = [];
    this.contacts.clear();
    this.events = [];
    this.nextId = 0;
  }
}
