// Thin session-socket client. Works in the browser (native WebSocket) and
// headless (inject the `ws` constructor), pushing every server message
// through a single ordered queue.

import {
  CalibrationFields,
  PointerSampleJson,
  ServerMessage,
  SessionConfigFields,
  calibrationPointMessage,
  pointerMoveMessage,
  startSessionMessage,
} from "./protocol.js";

// Structural overlap of the browser WebSocket and the `ws` package client,
// so either plugs in unchanged.
export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev: any) => void) | null;
  onmessage: ((ev: any) => void) | null;
  onclose: ((ev: any) => void) | null;
  onerror: ((ev: any) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

// Calibration for clients that send viewport-normalized coordinates in
// [0,1]^2: maps x,y straight onto the continuous grid, with the depth
// slider's +-100 range covering all four opacity bands.
export function normalizedCalibration(width = 24, height = 14): CalibrationFields {
  return {
    a: width, b: 0, c: 0,
    d: 0, e: height, f: 0,
    z_ref: 0, z_span: 200, z_sign: 1,
  };
}

export class SessionClient {
  private socket: SocketLike | null = null;
  private queue: ServerMessage[] = [];
  private waiters: ((message: ServerMessage) => void)[] = [];
  connected = false;
  onStatusChange: ((connected: boolean) => void) | null = null;
  onMessage: ((message: ServerMessage) => void) | null = null;

  constructor(
    private url: string,
    private socketFactory: SocketFactory,
  ) {}

  connect(): Promise<void> {
    return new Promise((resolve, reject) => {
      const socket = this.socketFactory(this.url);
      this.socket = socket;
      socket.onopen = () => {
        this.connected = true;
        this.onStatusChange?.(true);
        resolve();
      };
      socket.onerror = (err) => {
        if (!this.connected) reject(err instanceof Error ? err : new Error("socket error"));
      };
      socket.onclose = () => {
        this.connected = false;
        this.onStatusChange?.(false);
      };
      socket.onmessage = (ev) => {
        const message = JSON.parse(String(ev.data)) as ServerMessage;
        this.onMessage?.(message);
        const waiter = this.waiters.shift();
        if (waiter) waiter(message);
        else this.queue.push(message);
      };
    });
  }

  // Next server message, in arrival order.
  next(timeoutMs = 5000): Promise<ServerMessage> {
    const queued = this.queue.shift();
    if (queued) return Promise.resolve(queued);
    return new Promise((resolve, reject) => {
      const timer = setTimeout(() => {
        const index = this.waiters.indexOf(waiter);
        if (index >= 0) this.waiters.splice(index, 1);
        reject(new Error(`no server message within ${timeoutMs}ms`));
      }, timeoutMs);
      const waiter = (message: ServerMessage) => {
        clearTimeout(timer);
        resolve(message);
      };
      this.waiters.push(waiter);
    });
  }

  pending(): number {
    return this.queue.length;
  }

  startSession(config: SessionConfigFields, calibration?: CalibrationFields): void {
    this.send(startSessionMessage(config, calibration));
  }

  sendCalibrationPoint(corner: number, sample: PointerSampleJson): void {
    this.send(calibrationPointMessage(corner, sample));
  }

  sendPointer(sample: PointerSampleJson): void {
    this.send(pointerMoveMessage(sample));
  }

  close(): void {
    this.socket?.close();
  }

  private send(data: string): void {
    if (!this.socket || !this.connected) throw new Error("socket not connected");
    this.socket.send(data);
  }
}
