/**
 * Render model for the playground panels.
 *
 * Every displayed decision originates from a gateway EVT or STATE line; this
 * module holds no gesture logic of its own. Unknown technique events land in
 * the raw console verbatim, never dropped.
 */

import { GatewayLine, parseGatewayLine } from "./protocol.js";

export interface ScrollPanel {
  multiplier: number;
  offsetPx: number; // accumulated content displacement, display only
}

export interface TextPanel {
  cursor: number;
  lastDirection: string | null;
}

export interface MapPanel {
  mode: "TwoD" | "ThreeD";
  glimpseDeg: number;
}

export interface MenuPanel {
  item: number | null;
  dwellMs: number;
  selected: number | null;
  selectedAt: number | null;
}

export interface FlickPanel {
  kind: string;
  rank: number;
  direction: string;
}

export interface NavPanel {
  panX: number;
  panY: number;
  zoom: number;
  rotationDeg: number;
  anchor: { x: number; y: number } | null;
}

export interface SensorsPanel {
  facePresent: boolean;
  fx: number | null;
  fy: number | null;
  fs: number | null;
  fa: number | null;
  level: number | null;
  tiltDeg: number | null;
  rollDeg: number | null;
  touchDown: boolean;
}

const CONSOLE_LIMIT = 400;

export class PlaygroundModel {
  scroll: ScrollPanel = { multiplier: 1, offsetPx: 0 };
  text: TextPanel = { cursor: 20, lastDirection: null };
  map: MapPanel = { mode: "TwoD", glimpseDeg: 0 };
  menu: MenuPanel = { item: null, dwellMs: 0, selected: null, selectedAt: null };
  flick: FlickPanel | null = null;
  nav: NavPanel = { panX: 0, panY: 0, zoom: 1, rotationDeg: 0, anchor: null };
  sensors: SensorsPanel = {
    facePresent: false,
    fx: null,
    fy: null,
    fs: null,
    fa: null,
    level: null,
    tiltDeg: null,
    rollDeg: null,
    touchDown: false,
  };
  consoleLines: string[] = [];
  lastError: string | null = null;
  version = 0; // bumped on every change so views can re-render lazily

  applyLine(raw: string): void {
    if (!raw.trim()) return;
    const line = parseGatewayLine(raw);
    this.consoleLines.push(line.raw);
    if (this.consoleLines.length > CONSOLE_LIMIT) {
      this.consoleLines.splice(0, this.consoleLines.length - CONSOLE_LIMIT);
    }
    this.dispatch(line);
    this.version += 1;
  }

  private dispatch(line: GatewayLine): void {
    switch (line.kind) {
      case "EVT":
        this.applyEvent(line.technique, line.event, line.payload, line.t);
        return;
      case "STATE":
        this.applyState(line.fields);
        return;
      case "ERR":
        this.lastError = line.reason;
        return;
      default:
        return; // already in the console
    }
  }

  private applyEvent(
    technique: string,
    event: string,
    p: Record<string, string>,
    t: number,
  ): void {
    const num = (key: string): number => Number(p[key]);
    if (technique === "multi_scale_scroll") {
      if (event === "RATE") this.scroll.multiplier = num("multiplier");
      else if (event === "SCROLL") this.scroll.offsetPx += num("dy");
    } else if (technique === "text_edit") {
      if (event === "CURSOR") {
        this.text.cursor = num("index");
        this.text.lastDirection = null;
      } else if (event === "CURSOR_MOVED") {
        this.text.cursor = num("index");
        this.text.lastDirection = p["direction"] ?? null;
      }
    } else if (technique === "map_viewer") {
      if (event === "VIEW_MODE") {
        this.map.mode = p["mode"] === "ThreeD" ? "ThreeD" : "TwoD";
        if (this.map.mode === "TwoD") this.map.glimpseDeg = 0;
      } else if (event === "GLIMPSE") {
        this.map.glimpseDeg = num("angle");
      }
    } else if (technique === "touch_free_menu") {
      if (event === "HIGHLIGHT") {
        this.menu.item = num("item");
        this.menu.dwellMs = 0;
      } else if (event === "SELECTED") {
        this.menu.selected = num("item");
        this.menu.selectedAt = t;
        this.menu.dwellMs = 0;
      }
    } else if (technique === "expressive_flick") {
      if (event === "CLASS") {
        this.flick = {
          kind: p["kind"] ?? "?",
          rank: num("rank"),
          direction: p["direction"] ?? "?",
        };
      }
    } else if (technique === "one_hand_navigator") {
      // zoom/rotation payloads carry the cumulative view transform; the
      // factor/deg keys are the per-gesture values
      if (event === "PAN") {
        this.nav.panX += num("dx");
        this.nav.panY += num("dy");
      } else if (event === "ZOOM") {
        this.nav.zoom = num("zoom");
        this.nav.anchor = { x: num("anchor_x"), y: num("anchor_y") };
      } else if (event === "ROTATE") {
        this.nav.rotationDeg = num("rotation");
        this.nav.anchor = { x: num("anchor_x"), y: num("anchor_y") };
      } else if (event === "COMMIT") {
        this.nav.zoom = num("zoom");
        this.nav.rotationDeg = num("rotation");
        this.nav.anchor = null;
      }
    }
    // unknown techniques/kinds stay console-only by design
  }

  private applyState(fields: Record<string, string>): void {
    const s = this.sensors;
    if ("face" in fields) {
      s.facePresent = fields["face"] === "PRESENT";
      if (!s.facePresent) {
        s.fx = s.fy = s.fs = s.fa = s.level = null;
      }
    }
    const numOrNull = (key: string): number | null => {
      const v = fields[key];
      if (v === undefined || v === "NA") return null;
      const n = Number(v);
      return Number.isFinite(n) ? n : null;
    };
    if (s.facePresent) {
      s.fx = numOrNull("fx") ?? s.fx;
      s.fy = numOrNull("fy") ?? s.fy;
      s.fs = numOrNull("fs") ?? s.fs;
      s.fa = numOrNull("fa") ?? s.fa;
      s.level = numOrNull("level") ?? s.level;
    }
    s.tiltDeg = numOrNull("tilt");
    s.rollDeg = numOrNull("roll");
    if ("touch" in fields) s.touchDown = fields["touch"] === "DOWN";
    const dwell = numOrNull("dwell_ms");
    if (dwell !== null) this.menu.dwellMs = dwell;
    const menuItem = numOrNull("menu_item");
    if (menuItem !== null) this.menu.item = menuItem;
  }
}
