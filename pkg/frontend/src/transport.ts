/**
 * Gateway transports. The playground speaks the gateway's exact line
 * protocol; the WebSocket endpoint mirrors it one text message per line.
 */

export type TransportStatus = "connecting" | "open" | "closed";

export interface Transport {
  send(line: string): void;
  close(): void;
  onLine(cb: (line: string) => void): void;
  onStatus(cb: (status: TransportStatus) => void): void;
}

/** Buffers text chunks and emits complete lines. */
export function createLineSplitter(onLine: (line: string) => void): (chunk: string) => void {
  let buffer = "";
  return (chunk: string) => {
    buffer += chunk;
    let idx: number;
    while ((idx = buffer.indexOf("\n")) !== -1) {
      const line = buffer.slice(0, idx);
      buffer = buffer.slice(idx + 1);
      if (line.trim().length > 0) onLine(line);
    }
  };
}

export class WebSocketTransport implements Transport {
  private ws: WebSocket | null = null;
  private lineCbs: Array<(line: string) => void> = [];
  private statusCbs: Array<(status: TransportStatus) => void> = [];
  private closedByUser = false;
  private retryMs = 500;

  constructor(private readonly url: string) {
    this.connect();
  }

  private connect(): void {
    this.emitStatus("connecting");
    const ws = new WebSocket(this.url);
    this.ws = ws;
    const split = createLineSplitter((line) => this.lineCbs.forEach((cb) => cb(line)));
    ws.onopen = () => {
      this.retryMs = 500;
      this.emitStatus("open");
    };
    ws.onmessage = (event) => split(String(event.data) + "\n");
    ws.onclose = () => {
      this.emitStatus("closed");
      if (!this.closedByUser) {
        setTimeout(() => this.connect(), this.retryMs);
        this.retryMs = Math.min(this.retryMs * 2, 5000);
      }
    };
    ws.onerror = () => ws.close();
  }

  send(line: string): void {
    if (this.ws && this.ws.readyState === WebSocket.OPEN) {
      this.ws.send(line);
    }
  }

  close(): void {
    this.closedByUser = true;
    this.ws?.close();
  }

  onLine(cb: (line: string) => void): void {
    this.lineCbs.push(cb);
  }

  onStatus(cb: (status: TransportStatus) => void): void {
    this.statusCbs.push(cb);
  }

  private emitStatus(status: TransportStatus): void {
    this.statusCbs.forEach((cb) => cb(status));
  }
}
