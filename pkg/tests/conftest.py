"""Shared builders for unit tests: snapshots, strokes, randomized traces."""

from __future__ import annotations

import math

from facefuse.engine import FusedSnapshot
from facefuse.face import FaceState
from facefuse.model import SensorFrame, TouchPhase
from facefuse.motion import DeviceAttitude
from facefuse.rng import Xoshiro256StarStar
from facefuse.touch import TouchPipeline
from facefuse.trace import Trace, face_frame, face_none_frame, imu_frame, q6, touch_frame


def make_face(
    present: bool = True,
    fx: float = 240.0,
    fy: float = 320.0,
    fs: float = 110.0,
    fa: float = 0.0,
    level: int = 2,
    last_detection_t: int | None = None,
) -> FaceState:
    return FaceState(
        present=present,
        last_event=None,
        fx=fx if present else None,
        fy=fy if present else None,
        fs=fs if present else None,
        fa=fa if present else None,
        scale_level=level if present else None,
        last_detection_t=last_detection_t,
        reference_scale=None,
    )


def make_attitude(tilt: float = 90.0, roll: float = 0.0, reliable: bool = True) -> DeviceAttitude:
    tr = math.radians(tilt)
    rr = math.radians(roll)
    gravity = (-math.sin(tr) * math.sin(rr), -math.sin(tr) * math.cos(rr), -math.cos(tr))
    return DeviceAttitude(gravity, tilt, roll, reliable)


def make_snapshot(
    t: int,
    face: FaceState | None = None,
    attitude: DeviceAttitude | None = None,
    touch: TouchPipeline | None = None,
    face_event=None,
    flick=None,
    swipe=None,
) -> FusedSnapshot:
    if face is None:
        face = make_face(present=False)
    if face.present and face.last_detection_t is None:
        face = FaceState(
            present=face.present,
            last_event=face.last_event,
            fx=face.fx,
            fy=face.fy,
            fs=face.fs,
            fa=face.fa,
            scale_level=face.scale_level,
            last_detection_t=t,
            reference_scale=face.reference_scale,
        )
    return FusedSnapshot(
        t=t,
        face=face,
        attitude=attitude if attitude is not None else make_attitude(),
        touch=touch if touch is not None else TouchPipeline(),
        face_event=face_event,
        flick=flick,
        swipe=swipe,
    )


def random_trace(seed: int, with_touch: bool = True) -> Trace:
    """Randomized but valid trace: wandering attitude and face, optional strokes."""
    rng = Xoshiro256StarStar(seed)
    duration = 800 + int(rng.uniform() * 700)
    frames: list[SensorFrame] = []

    tilt, roll = 90.0, 0.0
    k = 0
    while (t := (k * 1000 + 30) // 60) <= duration:
        tilt = min(170.0, max(5.0, tilt + rng.gauss(1.5)))
        roll = roll + rng.gauss(1.5)
        tr, rr = math.radians(tilt), math.radians(roll)
        ax = -math.sin(tr) * math.sin(rr) + rng.gauss(0.02)
        ay = -math.sin(tr) * math.cos(rr) + rng.gauss(0.02)
        az = -math.cos(tr) + rng.gauss(0.02)
        frames.append(imu_frame(t, ax, ay, az, 0.0, 0.0, 0.0))
        k += 1

    fx, fy, fs, fa = 240.0, 320.0, 110.0, 0.0
    i = 0
    while (t := (i * 1000 + 8) // 16) <= duration:
        if rng.uniform() < 0.08:
            frames.append(face_none_frame(t))
        else:
            fx = min(479.0, max(0.0, fx + rng.gauss(4.0)))
            fy = min(639.0, max(0.0, fy + rng.gauss(4.0)))
            fs = min(200.0, max(20.0, fs + rng.gauss(2.0)))
            fa = min(90.0, max(-90.0, fa + rng.gauss(2.0)))
            frames.append(face_frame(t, fx, fy, fs, fa))
        i += 1

    if with_touch and rng.uniform() < 0.8:
        start = 100 + int(rng.uniform() * 300)
        end = min(duration - 50, start + 150 + int(rng.uniform() * 400))
        x, y = 100.0 + rng.uniform() * 400, 200.0 + rng.uniform() * 700
        frames.append(touch_frame(start, 0, TouchPhase.BEGAN, x, y))
        t = start
        while t + 32 < end:
            t += 32
            x = min(639.0, max(0.0, x + rng.gauss(12.0)))
            y = min(1135.0, max(0.0, y + rng.gauss(12.0)))
            frames.append(touch_frame(t, 0, TouchPhase.MOVED, x, y))
        frames.append(touch_frame(end, 0, TouchPhase.ENDED, q6(x), q6(y)))

    frames.sort(key=lambda f: (f.t, f.channel_rank))
    return Trace(config={"seed": str(seed)}, frames=frames)
