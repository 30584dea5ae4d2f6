/**
 * Virtual IMU synthesis: the tilt/roll dials define a steady attitude, and
 * swipe buttons inject the canned accelerate-then-brake pulse pair the
 * motion detector expects (+/-0.8 g for 60 ms, opposite 0.5 g at +200 ms).
 *
 * Accelerometer convention (matches the trace format): the reading in g is
 * the world-down unit vector in device coordinates; flat face-up = (0,0,-1),
 * upright portrait = (0,-1,0).
 */

export interface Accel {
  ax: number;
  ay: number;
  az: number;
}

export function attitudeToAccel(tiltDeg: number, rollDeg: number): Accel {
  const tilt = (tiltDeg * Math.PI) / 180;
  const roll = (rollDeg * Math.PI) / 180;
  const s = Math.sin(tilt);
  return {
    ax: -s * Math.sin(roll),
    ay: -s * Math.cos(roll),
    az: -Math.cos(tilt),
  };
}

const PULSE_G = 0.8;
const PULSE_MS = 60;
const BRAKE_G = 0.5;
const BRAKE_AT_MS = 200;
const BRAKE_MS = 34;

export class SwipePulse {
  private startT: number | null = null;
  private sign = 1;

  /** direction: +1 swipes right (+x pulse), -1 swipes left. */
  trigger(t: number, direction: 1 | -1): void {
    this.startT = t;
    this.sign = direction;
  }

  get active(): boolean {
    return this.startT !== null;
  }

  /** Lateral acceleration to add onto ax at time t. */
  sample(t: number): number {
    if (this.startT === null) return 0;
    const dt = t - this.startT;
    if (dt < 0) return 0;
    if (dt < PULSE_MS) return PULSE_G * this.sign;
    if (dt >= BRAKE_AT_MS && dt < BRAKE_AT_MS + BRAKE_MS) return -BRAKE_G * this.sign;
    if (dt >= BRAKE_AT_MS + BRAKE_MS) this.startT = null;
    return 0;
  }
}
