// Thin WebSocket wrapper: JSON framing, state callbacks, manual retry.
// The socket object is injectable so tests can drive a fake.

import { ClientMessage, ServerMessage, parseServerMessage } from './protocol.js';

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  onerror: ((ev?: unknown) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;
export type ConnectionState = 'connecting' | 'open' | 'closed';

const browserFactory: SocketFactory = (url) => new WebSocket(url) as unknown as SocketLike;

export class Transport {
  state: ConnectionState = 'closed';
  onmessage: ((msg: ServerMessage) => void) | null = null;
  onstate: ((state: ConnectionState) => void) | null = null;

  private sock: SocketLike | null = null;

  constructor(
    readonly url: string,
    private readonly factory: SocketFactory = browserFactory,
  ) {}

  connect(): void {
    if (this.sock) this.sock.close();
    this.setState('connecting');
    const sock = this.factory(this.url);
    this.sock = sock;
    sock.onopen = () => this.setState('open');
    sock.onclose = () => {
      if (this.sock === sock) this.setState('closed');
    };
    sock.onerror = () => {
      if (this.sock === sock) this.setState('closed');
    };
    sock.onmessage = (ev) => {
      const msg = parseServerMessage(String(ev.data));
      if (msg === null) {
        console.warn('dropped unparseable frame', ev.data);
        return;
      }
      this.onmessage?.(msg);
    };
  }

  send(msg: ClientMessage): void {
    if (this.state !== 'open' || !this.sock) return; // inert while disconnected
    this.sock.send(JSON.stringify(msg));
  }

  close(): void {
    this.sock?.close();
    this.sock = null;
    this.setState('closed');
  }

  private setState(state: ConnectionState): void {
    this.state = state;
    this.onstate?.(state);
  }
}
