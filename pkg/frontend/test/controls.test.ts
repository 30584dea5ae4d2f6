import { describe, expect, it } from "vitest";

import { FrameSampler } from "../src/controls.js";
import { attitudeToAccel } from "../src/imu.js";

/** Manual clock so channel rates are measured without wall time. */
function makeClock() {
  let t = 0;
  return {
    now: () => t,
    advance(ms: number) {
      t += ms;
    },
  };
}

function runSampler(
  durationMs: number,
  pumpEveryMs = 8,
  mutate?: (sampler: FrameSampler, t: number) => void,
): string[] {
  const clock = makeClock();
  const lines: string[] = [];
  const sampler = new FrameSampler((line) => lines.push(line), clock.now);
  sampler.start();
  for (let t = 0; t <= durationMs; t += pumpEveryMs) {
    mutate?.(sampler, t);
    sampler.pump();
    clock.advance(pumpEveryMs);
  }
  return lines;
}

const channel = (line: string) => line.split(/\s+/)[1];

describe("channel sampling rates", () => {
  it("sends IMU at 60 Hz and FACE at 16 Hz within 10%", () => {
    const lines = runSampler(1000);
    const imu = lines.filter((l) => channel(l) === "IMU").length;
    const face = lines.filter((l) => channel(l) === "FACE").length;
    expect(imu).toBeGreaterThanOrEqual(54);
    expect(imu).toBeLessThanOrEqual(66);
    expect(face).toBeGreaterThanOrEqual(15);
    expect(face).toBeLessThanOrEqual(18);
  });

  it("keeps rates when the pump is irregular", () => {
    const clock = makeClock();
    const lines: string[] = [];
    const sampler = new FrameSampler((line) => lines.push(line), clock.now);
    sampler.start();
    const steps = [3, 20, 8, 40, 5, 16, 30, 8, 8, 62];
    let total = 0;
    while (total < 2000) {
      for (const step of steps) {
        clock.advance(step);
        total += step;
        sampler.pump();
      }
    }
    const imu = lines.filter((l) => channel(l) === "IMU").length;
    const face = lines.filter((l) => channel(l) === "FACE").length;
    expect(Math.abs(imu - total * 0.06)).toBeLessThanOrEqual(total * 0.006)
    expect(Math.abs(face - total * 0.016)).toBeLessThanOrEqual(total * 0.0016 + 1);
  });

  it("timestamps are monotone and channel-ordered at equal times", () => {
    const lines = runSampler(1500, 16);
    const rank: Record<string, number> = { TOUCH: 0, IMU: 1, FACE: 2 };
    let last: [number, number] = [-1, -1];
    for (const line of lines) {
      const tokens = line.split(/\s+/);
      const key: [number, number] = [Number(tokens[0]), rank[tokens[1]]];
      expect(key[0]).toBeGreaterThanOrEqual(last[0]);
      if (key[0] === last[0]) expect(key[1]).toBeGreaterThanOrEqual(last[1]);
      last = key;
    }
  });
});

describe("virtual sensors", () => {
  it("face presence toggle switches DET and NONE lines", () => {
    const lines = runSampler(1000, 8, (s, t) => {
      s.controls.facePresent = t < 500;
    });
    const det = lines.filter((l) => l.includes("FACE DET"));
    const none = lines.filter((l) => l.includes("FACE NONE"));
    expect(det.length).toBeGreaterThan(0);
    expect(none.length).toBeGreaterThan(0);
  });

  it("touch pad emits BEGAN/MOVED/ENDED transitions", () => {
    const lines = runSampler(600, 8, (s, t) => {
      if (t === 96) {
        s.controls.touchDown = true;
        s.controls.touchX = 300;
        s.controls.touchY = 500;
      }
      if (t === 200) s.controls.touchX = 340;
      if (t === 400) s.controls.touchDown = false;
    });
    const touch = lines.filter((l) => channel(l) === "TOUCH");
    expect(touch[0]).toContain("BEGAN");
    expect(touch.some((l) => l.includes("MOVED"))).toBe(true);
    expect(touch[touch.length - 1]).toContain("ENDED");
  });

  it("swipe button injects the pulse pair onto the lateral axis", () => {
    const lines = runSampler(1200, 8, (s, t) => {
      if (t === 400) s.triggerSwipe(1);
    });
    const ax = lines
      .filter((l) => channel(l) === "IMU")
      .map((l) => Number(l.split(/\s+/)[2]));
    expect(Math.max(...ax)).toBeCloseTo(0.8, 5);
    expect(Math.min(...ax)).toBeCloseTo(-0.5, 5);
  });

  it("attitude dials produce the documented accelerometer poses", () => {
    expect(attitudeToAccel(0, 0).az).toBeCloseTo(-1, 9); // flat face-up
    const upright = attitudeToAccel(90, 0);
    expect(upright.ay).toBeCloseTo(-1, 9);
    expect(upright.az).toBeCloseTo(0, 9);
    const rolled = attitudeToAccel(90, 45);
    expect(rolled.ax).toBeCloseTo(-Math.SQRT1_2, 9);
    expect(rolled.ay).toBeCloseTo(-Math.SQRT1_2, 9);
  });
});
