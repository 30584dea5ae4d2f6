import { describe, expect, it } from "vitest";

import {
  formatFaceDet,
  formatFaceNone,
  formatImu,
  formatTouch,
  nearestRotationBucket,
  parseGatewayLine,
} from "../src/protocol.js";

describe("parseGatewayLine", () => {
  it("parses EVT lines with payload", () => {
    const line = parseGatewayLine("2067 EVT touch_free_menu SELECTED item=2");
    expect(line.kind).toBe("EVT");
    if (line.kind === "EVT") {
      expect(line.t).toBe(2067);
      expect(line.technique).toBe("touch_free_menu");
      expect(line.event).toBe("SELECTED");
      expect(line.payload["item"]).toBe("2");
    }
  });

  it("parses STATE lines", () => {
    const line = parseGatewayLine(
      "STATE 1200 face=PRESENT fx=240.0 fy=320.0 fs=110.0 fa=0.0 level=2 tilt=90.0 roll=0.0 touch=UP menu_item=2 dwell_ms=400",
    );
    expect(line.kind).toBe("STATE");
    if (line.kind === "STATE") {
      expect(line.t).toBe(1200);
      expect(line.fields["menu_item"]).toBe("2");
      expect(line.fields["face"]).toBe("PRESENT");
    }
  });

  it("parses ERR lines", () => {
    const line = parseGatewayLine("ERR parse line 0: unknown channel 'XYZ'");
    expect(line.kind).toBe("ERR");
    if (line.kind === "ERR") expect(line.reason).toContain("parse");
  });

  it("keeps unknown lines verbatim", () => {
    const line = parseGatewayLine("?? noise");
    expect(line.kind).toBe("UNKNOWN");
    expect(line.raw).toBe("?? noise");
  });
});

describe("frame formatting", () => {
  it("renders the trace grammar with six decimals", () => {
    expect(formatImu(0, 0, -1, 0)).toBe(
      "0 IMU 0.000000 -1.000000 0.000000 0.000000 0.000000 0.000000",
    );
    expect(formatTouch(5, 0, "BEGAN", 320, 568)).toBe("5 TOUCH 0 BEGAN 320.000000 568.000000");
    expect(formatFaceNone(16)).toBe("16 FACE NONE");
    expect(formatFaceDet(16, 240, 320, 110, 0)).toBe(
      "16 FACE DET 240.000000 320.000000 110.000000 0.000000 0",
    );
  });

  it("tags the nearest rotation bucket", () => {
    expect(nearestRotationBucket(0)).toBe(0);
    expect(nearestRotationBucket(30)).toBe(45);
    expect(nearestRotationBucket(-40)).toBe(-45);
    expect(formatFaceDet(16, 240, 320, 110, -38)).toContain(" -45");
  });
});
