"""Touch pipeline: per-pointer stroke tracking, flick detection, window queries.

Strokes keep their full polyline while active (and for a short retention
window after ending) so techniques can ask about travel, overlap, and hold
tolerance over arbitrary time windows, e.g. the span of a phone swipe.
Release velocity for flicks is a least-squares slope over the last 100 ms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .config import TouchConfig
from .model import Direction, TouchPhase, TouchSample, ValidationError


class UnknownPointer(ValidationError):
    """Moved/Ended/Cancelled (or a query) for a pointer that never Began."""


@dataclass(frozen=True)
class FlickDetection:
    direction: Direction
    speed_px_s: float
    pointer_id: int
    t: int  # release time


@dataclass
class Stroke:
    pointer_id: int
    began_t: int
    points: list[tuple[int, float, float]] = field(default_factory=list)
    ended_t: int | None = None
    cancelled: bool = False
    max_deviation_px: float = 0.0  # from start, latched over the stroke life
    travel_px: float = 0.0

    @property
    def start(self) -> tuple[float, float]:
        return self.points[0][1], self.points[0][2]

    @property
    def current(self) -> tuple[float, float]:
        return self.points[-1][1], self.points[-1][2]

    def overlaps(self, t0: int, t1: int) -> bool:
        end = self.ended_t if self.ended_t is not None else max(t1, self.points[-1][0])
        return self.began_t <= t1 and end >= t0

    def _clipped_segments(self, t0: int, t1: int):
        """Yield polyline segment endpoints clipped to [t0, t1] (lerped)."""
        pts = self.points
        for (ta, xa, ya), (tb, xb, yb) in zip(pts, pts[1:]):
            if tb < t0 or ta > t1:
                continue
            if ta == tb:
                yield (xa, ya), (xb, yb)
                continue
            lo, hi = max(ta, t0), min(tb, t1)
            fa = (lo - ta) / (tb - ta)
            fb = (hi - ta) / (tb - ta)
            yield (
                (xa + fa * (xb - xa), ya + fa * (yb - ya)),
                (xa + fb * (xb - xa), ya + fb * (yb - ya)),
            )

    def travel_during(self, t0: int, t1: int) -> float:
        total = 0.0
        for (xa, ya), (xb, yb) in self._clipped_segments(t0, t1):
            total += math.hypot(xb - xa, yb - ya)
        return total

    def max_deviation_during(self, t0: int, t1: int) -> float:
        """Max distance from the stroke start over [t0, t1].

        The max over a straight segment is attained at an endpoint, so the
        clipped endpoints are exact.
        """
        sx, sy = self.start
        worst = 0.0
        for pa, pb in self._clipped_segments(t0, t1):
            for (x, y) in (pa, pb):
                worst = max(worst, math.hypot(x - sx, y - sy))
        return worst


def _ls_velocity(points: list[tuple[int, float, float]]) -> tuple[float, float] | None:
    """Least-squares (vx, vy) in px/s; None when t has no spread."""
    n = len(points)
    if n < 2:
        return None
    tm = sum(p[0] for p in points) / n
    xm = sum(p[1] for p in points) / n
    ym = sum(p[2] for p in points) / n
    den = sum((p[0] - tm) ** 2 for p in points)
    if den == 0:
        return None
    vx = sum((p[0] - tm) * (p[1] - xm) for p in points) / den * 1000.0
    vy = sum((p[0] - tm) * (p[2] - ym) for p in points) / den * 1000.0
    return vx, vy


class TouchPipeline:
    """Single-session touch consumer; techniques query it read-only."""

    def __init__(self, config: TouchConfig | None = None) -> None:
        self.config = config or TouchConfig()
        self._active: dict[int, Stroke] = {}
        self._recent: list[Stroke] = []

    # -- ingestion ---------------------------------------------------------

    def ingest(self, sample: TouchSample, t: int) -> FlickDetection | None:
        cfg = self.config
        pid = sample.pointer_id
        self._prune(t)
        if sample.phase is TouchPhase.BEGAN:
            if pid in self._active:
                raise UnknownPointer(f"pointer {pid} Began while already down")
            self._active[pid] = Stroke(pid, t, [(t, sample.x, sample.y)])
            return None
        stroke = self._active.get(pid)
        if stroke is None:
            raise UnknownPointer(f"pointer {pid} {sample.phase.value} without Began")
        px, py = stroke.current
        stroke.travel_px += math.hypot(sample.x - px, sample.y - py)
        stroke.points.append((t, sample.x, sample.y))
        sx, sy = stroke.start
        stroke.max_deviation_px = max(
            stroke.max_deviation_px, math.hypot(sample.x - sx, sample.y - sy)
        )
        if sample.phase is TouchPhase.MOVED:
            return None
        stroke.ended_t = t
        stroke.cancelled = sample.phase is TouchPhase.CANCELLED
        del self._active[pid]
        self._recent.append(stroke)
        if stroke.cancelled:
            return None
        window = [p for p in stroke.points if p[0] >= t - cfg.velocity_window_ms]
        vel = _ls_velocity(window)
        if vel is None:
            return None
        vx, vy = vel
        speed = math.hypot(vx, vy)
        if speed < cfg.flick_speed_px_s:
            return None
        if abs(vx) >= abs(vy):
            direction = Direction.RIGHT if vx > 0 else Direction.LEFT
        else:
            direction = Direction.DOWN if vy > 0 else Direction.UP
        return FlickDetection(direction, speed, pid, t)

    def _prune(self, now: int) -> None:
        keep = self.config.stroke_retention_ms
        self._recent = [
            s for s in self._recent if s.ended_t is None or now - s.ended_t <= keep
        ]

    # -- queries -----------------------------------------------------------

    def is_down(self, pointer_id: int | None = None) -> bool:
        if pointer_id is None:
            return bool(self._active)
        return pointer_id in self._active

    def lowest_active_pointer(self) -> int | None:
        return min(self._active) if self._active else None

    def active_stroke(self, pointer_id: int) -> Stroke:
        stroke = self._active.get(pointer_id)
        if stroke is None:
            raise UnknownPointer(f"pointer {pointer_id} is not down")
        return stroke

    def position(self, pointer_id: int) -> tuple[float, float]:
        return self.active_stroke(pointer_id).current

    def within_hold_tolerance(self, pointer_id: int) -> bool:
        stroke = self.active_stroke(pointer_id)
        return stroke.max_deviation_px <= self.config.hold_tolerance_px

    def travel_during(self, pointer_id: int, t0: int, t1: int) -> float:
        if not t0 < t1:
            raise ValueError(f"window ({t0}, {t1}) must be increasing")
        total = 0.0
        for stroke in self._strokes_of(pointer_id):
            if stroke.overlaps(t0, t1):
                total += stroke.travel_during(t0, t1)
        return total

    def strokes_overlapping(self, t0: int, t1: int) -> list[Stroke]:
        found = [s for s in self._active.values() if s.overlaps(t0, t1)]
        found.extend(s for s in self._recent if s.overlaps(t0, t1))
        found.sort(key=lambda s: (s.began_t, s.pointer_id))
        return found

    def stroke_ended_at(self, pointer_id: int, t: int) -> Stroke | None:
        for stroke in reversed(self._recent):
            if stroke.pointer_id == pointer_id and stroke.ended_t == t:
                return stroke
        return None

    def _strokes_of(self, pointer_id: int):
        if pointer_id in self._active:
            yield self._active[pointer_id]
        for stroke in self._recent:
            if stroke.pointer_id == pointer_id:
                yield stroke
