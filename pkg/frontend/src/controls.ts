/**
 * Virtual controls and the channel-rate frame sampler.
 *
 * The sampler emits trace-format lines with monotonically increasing
 * timestamps taken from the page clock: IMU at 60 Hz, FACE at 16 Hz, and
 * TOUCH transitions/moves as they happen (bounded by the 60 Hz pump).
 */

import { attitudeToAccel, SwipePulse } from "./imu.js";
import {
  formatFaceDet,
  formatFaceNone,
  formatImu,
  formatTouch,
} from "./protocol.js";

export interface ControlState {
  facePresent: boolean;
  faceX: number; // camera px
  faceY: number;
  faceScale: number;
  faceAngle: number; // deg, clockwise in image
  tiltDeg: number;
  rollDeg: number;
  touchDown: boolean;
  touchX: number; // screen px
  touchY: number;
}

export function defaultControls(): ControlState {
  return {
    facePresent: true,
    faceX: 240,
    faceY: 320,
    faceScale: 110,
    faceAngle: 0,
    tiltDeg: 90,
    rollDeg: 0,
    touchDown: false,
    touchX: 320,
    touchY: 568,
  };
}

// integer sample grids (same arithmetic as the trace tooling): exact
// timestamps keep the (t, channel) ordering valid with no float drift
const imuGridMs = (k: number): number => Math.floor((k * 1000 + 30) / 60);
const faceGridMs = (i: number): number => Math.floor((i * 1000 + 8) / 16);

export class FrameSampler {
  readonly controls: ControlState;
  readonly swipe = new SwipePulse();
  private readonly send: (line: string) => void;
  private readonly now: () => number;
  private epoch: number | null = null;
  private imuIndex = 0;
  private faceIndex = 0;
  private touchWasDown = false;
  private lastSentTouch: { x: number; y: number } | null = null;

  constructor(send: (line: string) => void, now: () => number, controls?: ControlState) {
    this.send = send;
    this.now = now;
    this.controls = controls ?? defaultControls();
  }

  /** Reset the session clock; timestamps restart from 0. */
  start(): void {
    this.epoch = this.now();
    this.imuIndex = 0;
    this.faceIndex = 0;
    this.touchWasDown = false;
    this.lastSentTouch = null;
  }

  triggerSwipe(direction: 1 | -1): void {
    if (this.epoch === null) return;
    this.swipe.trigger(this.now() - this.epoch, direction);
  }

  /** Emit everything due at the current clock; call at >= 60 Hz. */
  pump(): void {
    if (this.epoch === null) return;
    const t = this.now() - this.epoch;
    const c = this.controls;
    const due: Array<{ at: number; rank: number }> = [];
    while (imuGridMs(this.imuIndex) <= t) {
      due.push({ at: imuGridMs(this.imuIndex), rank: 1 });
      this.imuIndex += 1;
    }
    while (faceGridMs(this.faceIndex) <= t) {
      due.push({ at: faceGridMs(this.faceIndex), rank: 2 });
      this.faceIndex += 1;
    }
    due.sort((a, b) => a.at - b.at || a.rank - b.rank);
    for (const item of due) {
      if (item.rank === 1) {
        this.emitTouch(item.at); // touch precedes IMU at an equal timestamp
        const { ax, ay, az } = attitudeToAccel(c.tiltDeg, c.rollDeg);
        this.send(formatImu(item.at, ax + this.swipe.sample(item.at), ay, az));
      } else if (c.facePresent) {
        this.send(formatFaceDet(item.at, c.faceX, c.faceY, c.faceScale, c.faceAngle));
      } else {
        this.send(formatFaceNone(item.at));
      }
    }
  }

  private emitTouch(t: number): void {
    const c = this.controls;
    if (c.touchDown && !this.touchWasDown) {
      this.send(formatTouch(t, 0, "BEGAN", c.touchX, c.touchY));
      this.lastSentTouch = { x: c.touchX, y: c.touchY };
    } else if (!c.touchDown && this.touchWasDown) {
      const last = this.lastSentTouch ?? { x: c.touchX, y: c.touchY };
      this.send(formatTouch(t, 0, "ENDED", last.x, last.y));
      this.lastSentTouch = null;
    } else if (c.touchDown && this.lastSentTouch) {
      if (c.touchX !== this.lastSentTouch.x || c.touchY !== this.lastSentTouch.y) {
        this.send(formatTouch(t, 0, "MOVED", c.touchX, c.touchY));
        this.lastSentTouch = { x: c.touchX, y: c.touchY };
      }
    }
    this.touchWasDown = c.touchDown;
  }
}
