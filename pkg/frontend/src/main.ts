// Entry point: wires pointer input, the session core, the transport and
// the renderers together. Click+release taps, modifier-click pins a
// resting finger, dragging moves it; the server decides everything else.

import { flush, hello } from './protocol.js';
import {
  appendAnnouncement,
  clearFeed,
  hideError,
  renderMap,
  setStatus,
  showError,
  updateMarkers,
} from './render.js';
import { SessionCore } from './session.js';
import { speak, speechAvailable } from './speech.js';
import { Transport } from './transport.js';

const GRAB_RADIUS = 8; // map units within which a click grabs a pinned contact

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
}

function defaultUrl(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get('server') ?? 'ws://127.0.0.1:8700/ws';
}

function main(): void {
  const svg = byId<HTMLElement>('map') as unknown as SVGSVGElement;
  const feedList = byId<HTMLElement>('feed');
  const status = byId<HTMLElement>('status');
  const banner = byId<HTMLElement>('error-banner');
  const urlInput = byId<HTMLInputElement>('server-url');
  const speechToggle = byId<HTMLInputElement>('speech-toggle');
  const connectBtn = byId<HTMLButtonElement>('connect');
  const retryBtn = byId<HTMLButtonElement>('retry');
  const exportBtn = byId<HTMLButtonElement>('export');
  const flushBtn = byId<HTMLButtonElement>('flush');

  urlInput.value = defaultUrl();
  speechToggle.disabled = !speechAvailable();

  const core = new SessionCore();
  let transport: Transport | null = null;
  let t0 = performance.now();
  let drag: { id: number; pinned: boolean } | null = null;

  const tick = () => core.setClock(performance.now() - t0);

  function toMapCoords(ev: PointerEvent): [number, number] | null {
    const ctm = svg.getScreenCTM();
    if (!ctm) return null;
    const p = new DOMPoint(ev.clientX, ev.clientY).matrixTransform(ctm.inverse());
    return [p.x, p.y];
  }

  function connect(): void {
    transport?.close();
    core.reset();
    clearFeed(feedList);
    hideError(banner);
    const t = new Transport(urlInput.value);
    transport = t;
    t.onstate = (state) => {
      setStatus(status, state);
      if (state === 'open') {
        t0 = performance.now();
        t.send(hello());
      } else if (state === 'closed') {
        showError(banner, 'connection lost');
      }
    };
    t.onmessage = (msg) => {
      core.onServer(msg);
      switch (msg.type) {
        case 'map': {
          const [x0, y0, x1, y1] = msg.bounds;
          if (x1 <= x0 || y1 <= y0) {
            showError(banner, 'map has empty bounds');
            return;
          }
          hideError(banner);
          renderMap(svg, msg);
          exportBtn.disabled = false;
          break;
        }
        case 'announcement':
          appendAnnouncement(feedList, msg);
          if (speechToggle.checked) speak(msg.text);
          break;
        case 'error':
          showError(banner, msg.message);
          break;
        case 'gesture':
          break; // markers already track the contacts themselves
      }
    };
    t.connect();
  }

  svg.addEventListener('pointerdown', (ev) => {
    if (!transport || transport.state !== 'open' || !core.map) return;
    const pos = toMapCoords(ev);
    if (!pos) return;
    ev.preventDefault();
    tick();
    const [x, y] = pos;
    if (ev.ctrlKey || ev.metaKey) {
      for (const msg of core.togglePin(x, y, GRAB_RADIUS)) transport.send(msg);
    } else {
      const pinned = core.pinnedContactAt(x, y, GRAB_RADIUS);
      if (pinned) {
        drag = { id: pinned.id, pinned: true }; // grab without lifting
      } else {
        const { id, msg } = core.contactDown(x, y);
        transport.send(msg);
        drag = { id, pinned: false };
      }
      svg.setPointerCapture(ev.pointerId);
    }
    updateMarkers(svg, core.contacts.values());
  });

  svg.addEventListener('pointermove', (ev) => {
    if (!drag || !transport) return;
    const pos = toMapCoords(ev);
    if (!pos) return;
    tick();
    const msg = core.contactMove(drag.id, pos[0], pos[1]);
    if (msg) transport.send(msg);
    updateMarkers(svg, core.contacts.values());
  });

  const endDrag = (ev: PointerEvent) => {
    if (!drag || !transport) return;
    tick();
    if (!drag.pinned) {
      const msg = core.contactUp(drag.id);
      if (msg) transport.send(msg);
    }
    drag = null;
    updateMarkers(svg, core.contacts.values());
  };
  svg.addEventListener('pointerup', endDrag);
  svg.addEventListener('pointercancel', endDrag);

  connectBtn.addEventListener('click', connect);
  retryBtn.addEventListener('click', connect);

  flushBtn.addEventListener('click', () => {
    tick();
    transport?.send(flush());
  });

  exportBtn.addEventListener('click', () => {
    if (!core.map) return;
    const blob = new Blob([core.exportCsv()], { type: 'text/csv' });
    const a = document.createElement('a');
    a.href = URL.createObjectURL(blob);
    a.download = 'session.csv';
    a.click();
    URL.revokeObjectURL(a.href);
  });

  connect();
}

document.addEventListener('DOMContentLoaded', main);
