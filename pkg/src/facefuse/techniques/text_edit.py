"""Coarse-to-fine text edit: tap for a rough cursor, lean the head to refine.

A tap places the cursor through a caller-supplied hit test; holding the
face-to-screen angle past the threshold then steps the cursor one character
per step interval in the leaned direction until the angle returns inside the
dead band.
"""

from __future__ import annotations

from collections.abc import Callable
from ..angles import wrap_signed
from ..config import SessionConfig, TextEditConfig
from ..engine import FusedSnapshot, Technique, TechniqueDescriptor, TechniqueEvent
from ..model import Direction
from .base import lateral_direction

DESCRIPTOR = TechniqueDescriptor.of("text_edit", face="D", touch="DC")

HitTest = Callable[[float, float], int]


def proportional_hit_test(screen_width: int, document_length: int) -> HitTest:
    def hit(x: float, y: float) -> int:
        index = int(x / screen_width * document_length)
        return max(0, min(document_length, index))

    return hit


class CoarseToFineTextEdit(Technique):
    descriptor = DESCRIPTOR

    def __init__(
        self,
        config: TextEditConfig | None = None,
        hit_test: HitTest | None = None,
        mirror_camera: bool = True,
        screen_width: int = 640,
        staleness_ms: int = 200,
    ) -> None:
        self.config = config or TextEditConfig()
        self.hit_test = hit_test or proportional_hit_test(
            screen_width, self.config.document_length
        )
        self.mirror_camera = mirror_camera
        self.staleness_ms = staleness_ms
        self.cursor = self.config.document_length // 2
        self.moving: Direction | None = None
        self._last_step_t: int | None = None
        self._prev_tick_t: int | None = None

    @classmethod
    def from_session(cls, session: SessionConfig, hit_test: HitTest | None = None) -> "CoarseToFineTextEdit":
        return cls(
            session.text_edit,
            hit_test,
            session.mirror_camera,
            session.screen[0],
            session.face.staleness_ms,
        )

    def _tap(self, snap: FusedSnapshot) -> tuple[float, float] | None:
        cfg = self.config
        since = self._prev_tick_t if self._prev_tick_t is not None else -1
        for stroke in snap.touch.strokes_overlapping(since + 1, snap.t):
            if stroke.ended_t is None or stroke.cancelled or not (since < stroke.ended_t <= snap.t):
                continue
            if (
                stroke.travel_px <= cfg.tap_max_travel_px
                and stroke.ended_t - stroke.began_t <= cfg.tap_max_ms
            ):
                return stroke.current
        return None

    def step(self, snap: FusedSnapshot) -> list[TechniqueEvent]:
        cfg = self.config
        events: list[TechniqueEvent] = []

        tap = self._tap(snap)
        if tap is not None:
            self.cursor = max(0, min(cfg.document_length, self.hit_test(*tap)))
            events.append(self._event(snap.t, "CURSOR", index=self.cursor))

        moving: Direction | None = None
        if snap.face_available(self.staleness_ms) and snap.attitude is not None:
            theta = wrap_signed(snap.face.fa - snap.attitude.roll_deg)
            if theta > cfg.angle_threshold_deg:
                moving = lateral_direction(+1, self.mirror_camera)
            elif theta < -cfg.angle_threshold_deg:
                moving = lateral_direction(-1, self.mirror_camera)
        if moving != self.moving:
            self.moving = moving
            self._last_step_t = snap.t if moving is not None else None
        elif moving is not None:
            while snap.t - self._last_step_t >= cfg.step_ms:
                self._last_step_t += cfg.step_ms
                step = 1 if moving is Direction.RIGHT else -1
                new = max(0, min(cfg.document_length, self.cursor + step))
                if new != self.cursor:
                    self.cursor = new
                    events.append(
                        self._event(
                            snap.t, "CURSOR_MOVED", direction=moving.value, index=new
                        )
                    )
        self._prev_tick_t = snap.t
        return events
