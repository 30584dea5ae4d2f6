"""Shared domain types, units, coordinate conventions, and frame validation.

Conventions used throughout the engine:

* Timestamps are integer milliseconds since session start (bit-exact replay,
  no floating-point time).
* Screen coordinates: x grows right, y grows down, origin top-left.
  Default screen is 640x1136 px (portrait).
* Camera image: 480x640 px, face center (fx, fy) in image pixels, face
  scale fs = inter-eye distance in pixels, face angle fa in degrees
  (0 = upright, positive = clockwise in the image).
* Device axes: +X right, +Y up (portrait), +Z out of the screen toward the
  user. The accelerometer reading (in g) equals the world-down unit vector
  expressed in device coordinates: flat face-up reads (0, 0, -1), upright
  portrait reads (0, -1, 0).
* Gyro rates are degrees/second about the device axes (right-hand rule).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

DEFAULT_SCREEN = (640, 1136)
DEFAULT_CAMERA = (480, 640)
ROTATION_BUCKETS = (-45, 0, 45)


class ValidationError(ValueError):
    """Base for frame/sequence validation failures."""


class OutOfRange(ValidationError):
    """A coordinate or magnitude lies outside its documented bounds."""


class NonMonotonicTime(ValidationError):
    """Frame timestamp (or same-timestamp channel order) went backwards."""


class BadPhase(ValidationError):
    """Touch phase order violated for a pointer (Began -> Moved* -> Ended|Cancelled)."""


class TouchPhase(Enum):
    BEGAN = "BEGAN"
    MOVED = "MOVED"
    ENDED = "ENDED"
    CANCELLED = "CANCELLED"


class Direction(Enum):
    LEFT = "Left"
    RIGHT = "Right"
    UP = "Up"
    DOWN = "Down"


@dataclass(frozen=True)
class TouchSample:
    pointer_id: int
    phase: TouchPhase
    x: float
    y: float


@dataclass(frozen=True)
class ImuSample:
    ax: float  # g
    ay: float
    az: float
    rx: float  # deg/s
    ry: float
    rz: float

    @property
    def accel_magnitude(self) -> float:
        return math.sqrt(self.ax * self.ax + self.ay * self.ay + self.az * self.az)


@dataclass(frozen=True)
class CalibrationConstants:
    """Per-user constant product of face scale and face-to-screen distance.

    product_constant = d_eye * d_image, in (camera px * mm): inter-pupil
    distance times camera focal length. Face scale fs at distance d satisfies
    fs * d = product_constant.
    """

    d_eye_mm: float
    d_image_px: float

    def __post_init__(self) -> None:
        if not (self.d_eye_mm > 0 and self.d_image_px > 0):
            raise OutOfRange("calibration constants must be positive")

    @property
    def product_constant(self) -> float:
        return self.d_eye_mm * self.d_image_px

    def distance_mm(self, face_scale_px: float) -> float:
        if face_scale_px <= 0:
            raise OutOfRange(f"face scale {face_scale_px} must be positive")
        return self.product_constant / face_scale_px

    def face_scale_px(self, distance_mm: float) -> float:
        if distance_mm <= 0:
            raise OutOfRange(f"distance {distance_mm} must be positive")
        return self.product_constant / distance_mm


@dataclass(frozen=True)
class FaceObservation:
    detected: bool
    fx: float = 0.0
    fy: float = 0.0
    fs: float = 0.0
    fa: float = 0.0
    rotation_class: int = 0

    @staticmethod
    def none() -> "FaceObservation":
        return FaceObservation(detected=False)


Payload = TouchSample | ImuSample | FaceObservation

# Same-timestamp frames must appear in this channel order.
_CHANNEL_RANK = {TouchSample: 0, ImuSample: 1, FaceObservation: 2}


@dataclass(frozen=True)
class SensorFrame:
    t: int
    payload: Payload

    @property
    def channel_rank(self) -> int:
        return _CHANNEL_RANK[type(self.payload)]


def nearest_rotation_bucket(fa: float) -> int:
    return min(ROTATION_BUCKETS, key=lambda b: (abs(fa - b), abs(b)))


def validate_frame(
    frame: SensorFrame,
    screen: tuple[int, int] = DEFAULT_SCREEN,
    camera: tuple[int, int] = DEFAULT_CAMERA,
) -> SensorFrame:
    """Check the stateless per-frame invariants; returns the frame unchanged.

    Sequence-level invariants (monotonic time, touch phase order) live in
    SequenceValidator.
    """
    if frame.t < 0:
        raise OutOfRange(f"negative timestamp {frame.t}")
    p = frame.payload
    if isinstance(p, TouchSample):
        w, h = screen
        if not (0 <= p.x < w) or not (0 <= p.y < h):
            raise OutOfRange(f"touch position ({p.x}, {p.y}) outside {w}x{h} screen")
        if p.pointer_id < 0:
            raise OutOfRange(f"negative pointer id {p.pointer_id}")
    elif isinstance(p, ImuSample):
        for v in (p.ax, p.ay, p.az, p.rx, p.ry, p.rz):
            if not math.isfinite(v):
                raise OutOfRange("non-finite IMU component")
    elif isinstance(p, FaceObservation):
        if p.detected:
            w, h = camera
            if not (0 <= p.fx < w) or not (0 <= p.fy < h):
                raise OutOfRange(f"face center ({p.fx}, {p.fy}) outside {w}x{h} camera image")
            if not p.fs > 0:
                raise OutOfRange(f"face scale {p.fs} must be positive")
            if not -90 <= p.fa <= 90:
                raise OutOfRange(f"face angle {p.fa} outside [-90, 90]")
            best = min(abs(p.fa - b) for b in ROTATION_BUCKETS)
            if p.rotation_class not in ROTATION_BUCKETS or abs(p.fa - p.rotation_class) > best + 1e-9:
                raise OutOfRange(
                    f"rotation class {p.rotation_class} is not the bucket nearest to fa={p.fa}"
                )
    else:
        raise ValidationError(f"unknown payload type {type(p).__name__}")
    return frame


class SequenceValidator:
    """Stateful validator for an ordered frame stream.

    Enforces non-decreasing (t, channel) order and per-pointer touch phase
    legality; collects non-fatal warnings (IMU arrival rate outside
    30-120 Hz).
    """

    def __init__(
        self,
        screen: tuple[int, int] = DEFAULT_SCREEN,
        camera: tuple[int, int] = DEFAULT_CAMERA,
    ) -> None:
        self.screen = screen
        self.camera = camera
        self.warnings: list[str] = []
        self._last_key: tuple[int, int] | None = None
        self._down: set[int] = set()
        self._last_imu_t: int | None = None
        self._imu_rate_warned = False

    def validate(self, frame: SensorFrame) -> SensorFrame:
        validate_frame(frame, self.screen, self.camera)
        key = (frame.t, frame.channel_rank)
        if self._last_key is not None and key < self._last_key:
            raise NonMonotonicTime(
                f"frame at t={frame.t} (channel rank {frame.channel_rank}) "
                f"arrives after t={self._last_key[0]} (rank {self._last_key[1]})"
            )
        self._last_key = key
        p = frame.payload
        if isinstance(p, TouchSample):
            if p.phase is TouchPhase.BEGAN:
                if p.pointer_id in self._down:
                    raise BadPhase(f"pointer {p.pointer_id} Began while already down")
                self._down.add(p.pointer_id)
            else:
                if p.pointer_id not in self._down:
                    raise BadPhase(f"pointer {p.pointer_id} {p.phase.value} without Began")
                if p.phase in (TouchPhase.ENDED, TouchPhase.CANCELLED):
                    self._down.discard(p.pointer_id)
        elif isinstance(p, ImuSample):
            if self._last_imu_t is not None and not self._imu_rate_warned:
                dt = frame.t - self._last_imu_t
                # 30-120 Hz nominal window -> 8.33..33.3 ms between samples
                if dt > 0 and not (8 <= dt <= 34):
                    self.warnings.append(
                        f"IMU interval {dt} ms at t={frame.t} outside nominal 30-120 Hz"
                    )
                    self._imu_rate_warned = True
            self._last_imu_t = frame.t
        return frame
