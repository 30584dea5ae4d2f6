"""Motion pipeline: gravity-based device attitude and phone-swipe detection.

Attitude comes from a first-order low-pass of the accelerometer (gravity
estimate), optionally sharpened on the roll axis by blending integrated gyro
rate. Swipes are impulsive lateral translations: a strong pulse on the x axis
followed by an opposite braking pulse shortly after.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .angles import circular_diff, wrap_signed
from .config import MotionConfig, SwipeConfig
from .model import Direction, ImuSample

MAX_SWIPE_WINDOW_MS = 700


class DegenerateGravity(ValueError):
    """Sustained near-zero acceleration; gravity direction is unreliable."""


@dataclass(frozen=True)
class DeviceAttitude:
    gravity: tuple[float, float, float]  # unit vector, device frame
    tilt_deg: float   # 0 = flat face-up, 90 = upright, 180 = flat face-down
    roll_deg: float   # 0 = portrait-upright, (-180, 180]
    reliable: bool = True


@dataclass(frozen=True)
class SwipeDetection:
    direction: Direction  # LEFT or RIGHT
    peak_accel_g: float
    t_start: int
    t_end: int

    def __post_init__(self) -> None:
        if not self.t_start < self.t_end:
            raise ValueError(f"swipe window ({self.t_start}, {self.t_end}) must be increasing")
        if self.t_end - self.t_start > MAX_SWIPE_WINDOW_MS:
            raise ValueError(f"swipe window longer than {MAX_SWIPE_WINDOW_MS} ms")


def _tilt_roll(gravity: tuple[float, float, float]) -> tuple[float, float]:
    gx, gy, gz = gravity
    tilt = 180.0 - math.degrees(math.acos(max(-1.0, min(1.0, gz))))
    roll = wrap_signed(math.degrees(math.atan2(-gx, -gy)))
    return tilt, roll


def _lp_alpha(dt_s: float, cutoff_hz: float) -> float:
    rc = 1.0 / (2.0 * math.pi * cutoff_hz)
    return dt_s / (rc + dt_s)


class _SwipeDetector:
    """Streaming pulse-pair detector over high-passed lateral acceleration."""

    def __init__(self, config: SwipeConfig) -> None:
        self.config = config
        self._first_t: int | None = None
        self._run_sign = 0
        self._run_start: int | None = None
        self._run_last: int | None = None
        self._run_peak = 0.0
        # qualified primary pulse: (t_start, t_end, sign, peak)
        self._primary: tuple[int, int, int, float] | None = None
        self._refractory_until: int | None = None

    def feed(self, t: int, hp: float) -> SwipeDetection | None:
        cfg = self.config
        if self._first_t is None:
            self._first_t = t
        if self._refractory_until is not None and t < self._refractory_until:
            self._run_sign = 0
            self._primary = None
            return None
        sign = 0
        if hp >= cfg.primary_g:
            sign = 1
        elif hp <= -cfg.primary_g:
            sign = -1
        if sign != 0:
            if sign == self._run_sign:
                self._run_last = t
                self._run_peak = max(self._run_peak, abs(hp))
            else:
                self._run_sign = sign
                self._run_start = t
                self._run_last = t
                self._run_peak = abs(hp)
            if self._run_last - self._run_start >= cfg.sustain_ms:
                self._primary = (self._run_start, self._run_last, self._run_sign, self._run_peak)
        else:
            self._run_sign = 0
        if self._primary is not None:
            p_start, p_end, p_sign, p_peak = self._primary
            if t - p_end > cfg.couple_ms:
                self._primary = None
            elif (
                hp * p_sign <= -cfg.opposite_g
                and t > p_end
                and t - p_start <= cfg.max_window_ms
                and t - self._first_t >= cfg.min_buffer_ms
            ):
                self._primary = None
                self._run_sign = 0
                self._refractory_until = t + cfg.refractory_ms
                direction = Direction.RIGHT if p_sign > 0 else Direction.LEFT
                return SwipeDetection(direction, p_peak, p_start, t)
        return None


def detect_phone_swipe(
    samples: list[tuple[int, float]], config: SwipeConfig | None = None
) -> SwipeDetection | None:
    """Scan a buffered (t_ms, high-passed lateral g) window for one swipe.

    Requires at least 120 ms of samples (per config); returns the first
    detection or None.
    """
    cfg = config or SwipeConfig()
    if not samples or samples[-1][0] - samples[0][0] < cfg.min_buffer_ms:
        return None
    det = _SwipeDetector(cfg)
    # a pre-buffered window has already met the buffering precondition
    det._first_t = samples[0][0] - cfg.min_buffer_ms
    for t, hp in samples:
        found = det.feed(t, hp)
        if found is not None:
            return found
    return None


class MotionPipeline:
    """Single-session IMU consumer producing attitude and swipe detections."""

    def __init__(self, config: MotionConfig | None = None) -> None:
        self.config = config or MotionConfig()
        self._gravity: list[float] | None = None
        self._hp_baseline_x: float | None = None
        self._roll: float | None = None
        self._last_t: int | None = None
        self._low_mag_since: int | None = None
        self._reliable = True
        self._swipe = _SwipeDetector(self.config.swipe)
        self.attitude: DeviceAttitude | None = None

    def ingest(self, imu: ImuSample, t: int) -> SwipeDetection | None:
        cfg = self.config
        dt_s = 0.0
        if self._last_t is not None and t > self._last_t:
            dt_s = (t - self._last_t) / 1000.0

        mag = imu.accel_magnitude
        if mag < cfg.freefall_g:
            if self._low_mag_since is None:
                self._low_mag_since = t
            elif t - self._low_mag_since > cfg.freefall_ms:
                self._reliable = False
        else:
            self._low_mag_since = None
            self._reliable = True
            if self._gravity is None:
                self._gravity = [imu.ax, imu.ay, imu.az]
            else:
                a = _lp_alpha(dt_s, cfg.gravity_cutoff_hz) if dt_s > 0 else 0.0
                g = self._gravity
                g[0] += a * (imu.ax - g[0])
                g[1] += a * (imu.ay - g[1])
                g[2] += a * (imu.az - g[2])

        swipe = None
        if self._gravity is not None:
            norm = math.sqrt(sum(c * c for c in self._gravity))
            unit = tuple(c / norm for c in self._gravity)
            tilt, roll_accel = _tilt_roll(unit)
            if self._roll is None or not cfg.use_gyro:
                self._roll = roll_accel
            else:
                predicted = self._roll + imu.rz * dt_s
                self._roll = wrap_signed(
                    predicted + cfg.gyro_accel_weight * circular_diff(roll_accel, predicted)
                )
            self.attitude = DeviceAttitude(unit, tilt, self._roll, self._reliable)

            # swipe channel: slow baseline keeps short pulses intact
            if self._hp_baseline_x is None:
                self._hp_baseline_x = imu.ax
                hp = 0.0
            else:
                hp = imu.ax - self._hp_baseline_x
                a = _lp_alpha(dt_s, cfg.swipe_highpass_cutoff_hz) if dt_s > 0 else 0.0
                self._hp_baseline_x += a * (imu.ax - self._hp_baseline_x)
            swipe = self._swipe.feed(t, hp)

        self._last_t = t
        return swipe
