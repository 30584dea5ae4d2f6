"""Face pipeline: presence debouncing, smoothing, distance model, level quantization.

Raw FaceObservations (detector output) become debounced presence events plus
exponentially smoothed (fx, fy, fs, fa). Face scale maps to one of 6 discrete
distance levels with hysteresis so levels never flutter under detector noise;
level 0 is the closest face (largest fs), level 5 the farthest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .config import FaceConfig
from .model import FaceObservation


class NonPositiveScale(ValueError):
    """distance_ratio requires strictly positive face scales."""


class FaceEvent(Enum):
    ENTERING = "Entering"
    MOVING = "Moving"
    EXITING = "Exiting"


def distance_ratio(reference_scale: float, current_scale: float) -> float:
    """Face-to-screen distance ratio (current / reference).

    Face scale times distance is constant for an individual (the product of
    inter-pupil distance and camera focal length), so the distance ratio is
    the inverse scale ratio.
    """
    if reference_scale <= 0 or current_scale <= 0:
        raise NonPositiveScale(f"scales must be > 0, got ({reference_scale}, {current_scale})")
    return reference_scale / current_scale


def quantize_scale(
    fs: float,
    scale_range: tuple[float, float],
    prev_level: int | None = None,
    hysteresis_frac: float = 0.05,
) -> int:
    """Quantize face scale into 6 levels; 0 = closest (largest fs), 5 = farthest.

    With a previous level, the value must leave that level's bin by at least
    hysteresis_frac of one bin width before the level changes.
    """
    s_min, s_max = scale_range
    if not s_min < s_max:
        raise ValueError(f"scale range must satisfy min < max, got {scale_range}")
    width = (s_max - s_min) / 6.0
    fs = min(max(fs, s_min), s_max)
    raw = 5 - int((fs - s_min) / width)
    raw = max(0, min(5, raw))
    if prev_level is None or hysteresis_frac <= 0.0:
        return raw
    lo = s_min + (5 - prev_level) * width
    hi = lo + width
    margin = hysteresis_frac * width
    if fs < lo - margin or fs > hi + margin:
        return raw
    return prev_level


@dataclass(frozen=True)
class FaceState:
    """Snapshot view of the face channel at one engine tick."""

    present: bool
    last_event: FaceEvent | None
    fx: float | None
    fy: float | None
    fs: float | None
    fa: float | None
    scale_level: int | None
    last_detection_t: int | None
    reference_scale: float | None

    def staleness_ms(self, t: int) -> int | None:
        if self.last_detection_t is None:
            return None
        return t - self.last_detection_t

    def fresh(self, t: int, staleness_ms: int = 200) -> bool:
        age = self.staleness_ms(t)
        return self.present and age is not None and age <= staleness_ms

    def available(self, t: int, staleness_ms: int = 200) -> bool:
        return self.fresh(t, staleness_ms) and self.fx is not None


class FacePipeline:
    """Single-session face channel state machine (one observation at a time)."""

    def __init__(self, config: FaceConfig | None = None) -> None:
        self.config = config or FaceConfig()
        self.present = False
        self.last_event: FaceEvent | None = None
        self._hit_run = 0
        self._miss_run = 0
        self._smoothed: list[float] | None = None  # [fx, fy, fs, fa]
        self._scale_level: int | None = None
        self._last_detection_t: int | None = None
        self._move_anchor: tuple[float, float] | None = None
        self.reference_scale: float | None = None

    def ingest(self, obs: FaceObservation, t: int) -> FaceEvent | None:
        cfg = self.config
        event: FaceEvent | None = None
        if obs.detected:
            self._miss_run = 0
            self._last_detection_t = t
            if self._smoothed is None:
                self._smoothed = [obs.fx, obs.fy, obs.fs, obs.fa]
            else:
                a = cfg.ema_alpha
                s = self._smoothed
                for i, v in enumerate((obs.fx, obs.fy, obs.fs, obs.fa)):
                    s[i] += a * (v - s[i])
            self._scale_level = quantize_scale(
                self._smoothed[2],
                (cfg.scale_min, cfg.scale_max),
                self._scale_level,
                cfg.level_hysteresis_frac,
            )
            if not self.present:
                self._hit_run += 1
                if self._hit_run >= cfg.enter_count:
                    self.present = True
                    self._hit_run = 0
                    self._move_anchor = (self._smoothed[0], self._smoothed[1])
                    event = FaceEvent.ENTERING
            else:
                ax, ay = self._move_anchor  # set at Entering
                dx = self._smoothed[0] - ax
                dy = self._smoothed[1] - ay
                if math.hypot(dx, dy) > cfg.move_epsilon_px:
                    self._move_anchor = (self._smoothed[0], self._smoothed[1])
                    event = FaceEvent.MOVING
        else:
            self._hit_run = 0
            if self.present:
                self._miss_run += 1
                if self._miss_run >= cfg.exit_count:
                    self.present = False
                    self._miss_run = 0
                    self._smoothed = None
                    self._move_anchor = None
                    event = FaceEvent.EXITING
            else:
                self._smoothed = None  # broken pre-entry run re-seeds the EMA
        if event is not None:
            self.last_event = event
        return event

    def snapshot(self) -> FaceState:
        s = self._smoothed if self.present else None
        return FaceState(
            present=self.present,
            last_event=self.last_event,
            fx=s[0] if s else None,
            fy=s[1] if s else None,
            fs=s[2] if s else None,
            fa=s[3] if s else None,
            scale_level=self._scale_level if self.present else None,
            last_detection_t=self._last_detection_t,
            reference_scale=self.reference_scale,
        )
