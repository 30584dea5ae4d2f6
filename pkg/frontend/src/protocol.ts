/**
 * The gateway's newline-delimited text protocol.
 *
 * Outbound (client -> gateway) lines reuse the trace grammar:
 *   <t> TOUCH <id> <BEGAN|MOVED|ENDED|CANCELLED> <x> <y>
 *   <t> IMU <ax> <ay> <az> <rx> <ry> <rz>        (6 decimal places)
 *   <t> FACE NONE | <t> FACE DET <fx> <fy> <fs> <fa> <rot>
 *
 * Inbound lines:
 *   <t> EVT <technique> <KIND> key=value ...
 *   STATE <t> key=value ...
 *   ERR <reason ...>
 */

export interface EvtLine {
  kind: "EVT";
  t: number;
  technique: string;
  event: string;
  payload: Record<string, string>;
  raw: string;
}

export interface StateLine {
  kind: "STATE";
  t: number;
  fields: Record<string, string>;
  raw: string;
}

export interface ErrLine {
  kind: "ERR";
  reason: string;
  raw: string;
}

export interface UnknownLine {
  kind: "UNKNOWN";
  raw: string;
}

export type GatewayLine = EvtLine | StateLine | ErrLine | UnknownLine;

function parsePairs(tokens: string[]): Record<string, string> {
  const out: Record<string, string> = {};
  for (const token of tokens) {
    const eq = token.indexOf("=");
    if (eq > 0) {
      out[token.slice(0, eq)] = token.slice(eq + 1);
    }
  }
  return out;
}

export function parseGatewayLine(raw: string): GatewayLine {
  const line = raw.trim();
  const tokens = line.split(/\s+/);
  if (tokens[0] === "ERR") {
    return { kind: "ERR", reason: tokens.slice(1).join(" "), raw: line };
  }
  if (tokens[0] === "STATE" && tokens.length >= 2) {
    const t = Number(tokens[1]);
    if (Number.isFinite(t)) {
      return { kind: "STATE", t, fields: parsePairs(tokens.slice(2)), raw: line };
    }
  }
  if (tokens.length >= 4 && tokens[1] === "EVT") {
    const t = Number(tokens[0]);
    if (Number.isFinite(t)) {
      return {
        kind: "EVT",
        t,
        technique: tokens[2],
        event: tokens[3],
        payload: parsePairs(tokens.slice(4)),
        raw: line,
      };
    }
  }
  return { kind: "UNKNOWN", raw: line };
}

const f6 = (v: number): string => (Object.is(v, -0) ? 0 : v).toFixed(6);

export type TouchPhase = "BEGAN" | "MOVED" | "ENDED" | "CANCELLED";

export function formatTouch(t: number, id: number, phase: TouchPhase, x: number, y: number): string {
  return `${t} TOUCH ${id} ${phase} ${f6(x)} ${f6(y)}`;
}

export function formatImu(
  t: number,
  ax: number,
  ay: number,
  az: number,
  rx = 0,
  ry = 0,
  rz = 0,
): string {
  return `${t} IMU ${f6(ax)} ${f6(ay)} ${f6(az)} ${f6(rx)} ${f6(ry)} ${f6(rz)}`;
}

export function nearestRotationBucket(fa: number): number {
  let best = 0;
  let bestDist = Infinity;
  for (const bucket of [-45, 0, 45]) {
    const d = Math.abs(fa - bucket);
    if (d < bestDist - 1e-12 || (Math.abs(d - bestDist) <= 1e-12 && Math.abs(bucket) < Math.abs(best))) {
      best = bucket;
      bestDist = d;
    }
  }
  return best;
}

export function formatFaceDet(t: number, fx: number, fy: number, fs: number, fa: number): string {
  return `${t} FACE DET ${f6(fx)} ${f6(fy)} ${f6(fs)} ${f6(fa)} ${nearestRotationBucket(fa)}`;
}

export function formatFaceNone(t: number): string {
  return `${t} FACE NONE`;
}
