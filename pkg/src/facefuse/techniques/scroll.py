"""Multi-scale scrolling: face distance governs the scroll rate.

Relative mode (default) multiplies the rate by 2 per distance level the face
moves away while the user is actively scrolling (finger down, or within the
active gap of the last scroll action); the multiplier freezes whenever
scrolling is inactive. Absolute mode pins the multiplier per level.
"""

from __future__ import annotations

from ..config import ScrollConfig, SessionConfig
from ..engine import FusedSnapshot, Technique, TechniqueDescriptor, TechniqueEvent

RATE_SET = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0)

DESCRIPTOR = TechniqueDescriptor.of("multi_scale_scroll", face="C", touch="C")


def absolute_multiplier(level: int) -> float:
    """Fixed per-level rate; level 0 (closest) is slowest."""
    return 2.0 ** (level - 2)


class MultiScaleScroll(Technique):
    descriptor = DESCRIPTOR

    def __init__(self, config: ScrollConfig | None = None, staleness_ms: int = 200) -> None:
        self.config = config or ScrollConfig()
        self.staleness_ms = staleness_ms
        self.multiplier = 1.0
        self.last_scroll_t: int | None = None
        self._level_ref: int | None = None
        self._was_active = False
        self._last_pos: tuple[int, tuple[float, float]] | None = None  # (pointer, pos)

    @classmethod
    def from_session(cls, session: SessionConfig) -> "MultiScaleScroll":
        return cls(session.scroll, session.face.staleness_ms)

    def is_active(self, t: int, finger_down: bool) -> bool:
        recent = (
            self.last_scroll_t is not None
            and t - self.last_scroll_t <= self.config.active_gap_ms
        )
        return finger_down or recent

    def step(self, snap: FusedSnapshot) -> list[TechniqueEvent]:
        events: list[TechniqueEvent] = []
        pointer = snap.touch.lowest_active_pointer()
        active = self.is_active(snap.t, pointer is not None)
        level = (
            snap.face.scale_level
            if snap.face_available(self.staleness_ms)
            else None
        )

        if active and not self._was_active:
            # changes made while inactive never apply
            self._level_ref = level
        if active and level is not None:
            if self.config.mode == "relative":
                if self._level_ref is None:
                    self._level_ref = level
                elif level != self._level_ref:
                    delta = level - self._level_ref
                    new = min(8.0, max(0.25, self.multiplier * 2.0**delta))
                    self._level_ref = level
                    if new != self.multiplier:
                        self.multiplier = new
                        events.append(self._event(snap.t, "RATE", multiplier=new))
            else:
                new = absolute_multiplier(level)
                if new != self.multiplier:
                    self.multiplier = new
                    events.append(self._event(snap.t, "RATE", multiplier=new))

        if pointer is not None:
            pos = snap.touch.position(pointer)
            if self._last_pos is not None and self._last_pos[0] == pointer:
                dy = pos[1] - self._last_pos[1][1]
                if dy != 0.0:
                    self.last_scroll_t = snap.t
                    events.append(self._event(snap.t, "SCROLL", dy=dy * self.multiplier))
            self._last_pos = (pointer, pos)
        else:
            self._last_pos = None
        self._was_active = active
        return events
