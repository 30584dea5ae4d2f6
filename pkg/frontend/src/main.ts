/**
 * Playground entry: wires virtual controls to the gateway socket and the
 * incoming line stream to the panels. Also supports loading a trace file
 * and playing it through the same pipeline for parity with batch replay.
 */

import { FrameSampler } from "./controls.js";
import { PlaygroundModel } from "./model.js";
import { Transport, WebSocketTransport } from "./transport.js";
import { Views } from "./views.js";

const model = new PlaygroundModel();
const views = new Views();

let transport: Transport | null = null;
let sampler: FrameSampler | null = null;
let pumpTimer: number | null = null;

function byId<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

function setBanner(text: string, visible: boolean): void {
  const banner = byId<HTMLDivElement>("connection-banner");
  banner.textContent = text;
  banner.style.display = visible ? "block" : "none";
}

function bindControls(s: FrameSampler): void {
  const c = s.controls;
  const slider = (id: string, apply: (v: number) => void) => {
    const input = byId<HTMLInputElement>(id);
    input.addEventListener("input", () => apply(Number(input.value)));
    apply(Number(input.value));
  };
  slider("ctl-face-x", (v) => (c.faceX = v));
  slider("ctl-face-y", (v) => (c.faceY = v));
  slider("ctl-face-scale", (v) => (c.faceScale = v));
  slider("ctl-face-angle", (v) => (c.faceAngle = v));
  slider("ctl-tilt", (v) => (c.tiltDeg = v));
  slider("ctl-roll", (v) => (c.rollDeg = v));
  byId<HTMLInputElement>("ctl-face-present").addEventListener("change", (e) => {
    c.facePresent = (e.target as HTMLInputElement).checked;
  });
  byId<HTMLButtonElement>("ctl-swipe-left").addEventListener("click", () => s.triggerSwipe(-1));
  byId<HTMLButtonElement>("ctl-swipe-right").addEventListener("click", () => s.triggerSwipe(1));

  const pad = byId<HTMLDivElement>("ctl-pad");
  const updateFromPointer = (e: PointerEvent) => {
    const rect = pad.getBoundingClientRect();
    c.touchX = Math.max(0, Math.min(639, ((e.clientX - rect.left) / rect.width) * 640));
    c.touchY = Math.max(0, Math.min(1135, ((e.clientY - rect.top) / rect.height) * 1136));
  };
  pad.addEventListener("pointerdown", (e) => {
    pad.setPointerCapture(e.pointerId);
    updateFromPointer(e);
    c.touchDown = true;
  });
  pad.addEventListener("pointermove", (e) => {
    if (c.touchDown) updateFromPointer(e);
  });
  const release = () => (c.touchDown = false);
  pad.addEventListener("pointerup", release);
  pad.addEventListener("pointercancel", release);
}

function connect(): void {
  const url = byId<HTMLInputElement>("gateway-url").value;
  transport?.close();
  if (pumpTimer !== null) clearInterval(pumpTimer);

  const ws = new WebSocketTransport(url);
  transport = ws;
  ws.onLine((line) => {
    model.applyLine(line);
    views.render(model);
  });
  ws.onStatus((status) => {
    if (status === "open") {
      setBanner("", false);
      sampler = new FrameSampler((line) => ws.send(line), () => performance.now());
      bindControls(sampler);
      sampler.start();
      pumpTimer = window.setInterval(() => sampler?.pump(), 8);
    } else {
      setBanner(status === "connecting" ? "connecting to gateway..." : "connection lost, retrying...", true);
      if (pumpTimer !== null) clearInterval(pumpTimer);
      pumpTimer = null;
    }
  });
}

function playEventLog(text: string): void {
  // Render a recorded event log directly: EVT/STATE lines update panels,
  // anything else lands in the console.
  for (const line of text.split("\n")) {
    if (line.trim()) model.applyLine(line);
  }
  views.render(model);
}

function streamTraceThroughGateway(text: string): void {
  // Replay parity: the trace's frame lines go to the gateway on a dedicated
  // connection and the panels render whatever comes back. All gesture
  // decisions stay server-side.
  const url = byId<HTMLInputElement>("gateway-url").value;
  const ws = new WebSocket(url);
  ws.onopen = () => {
    for (const line of text.split("\n")) {
      if (line.trim()) ws.send(line);
    }
    ws.send("END");
  };
  ws.onmessage = (event) => {
    model.applyLine(String(event.data));
    views.render(model);
  };
  ws.onerror = () => setBanner("trace playback connection failed", true);
}

window.addEventListener("DOMContentLoaded", () => {
  byId<HTMLButtonElement>("connect").addEventListener("click", connect);
  byId<HTMLInputElement>("log-file").addEventListener("change", async (e) => {
    const file = (e.target as HTMLInputElement).files?.[0];
    if (file) playEventLog(await file.text());
  });
  byId<HTMLInputElement>("trace-file").addEventListener("change", async (e) => {
    const file = (e.target as HTMLInputElement).files?.[0];
    if (file) streamTraceThroughGateway(await file.text());
  });
  views.render(model);
});
