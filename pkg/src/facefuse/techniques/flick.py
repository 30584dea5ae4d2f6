"""Expressive flicking: classifies flicks and phone swipes into four gestures.

NormalFlick (1) is a flick with no concurrent phone swipe. PhoneSwipe (2),
HoldAndSwipe (3) and FlickAndSwipe (4) are swipe windows distinguished by
touch involvement; all three require the face to be detected at the swipe
window start (face presence acts as the mode indicator). Ranks follow the
increasing intensity of the actions.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..config import FlickTechniqueConfig, SessionConfig, TouchConfig
from ..engine import FusedSnapshot, Technique, TechniqueDescriptor, TechniqueEvent
from ..motion import SwipeDetection
from ..touch import FlickDetection, Stroke

DESCRIPTOR = TechniqueDescriptor.of("expressive_flick", face="D", motion="D", touch="DC")

RANKS = {"NormalFlick": 1, "PhoneSwipe": 2, "HoldAndSwipe": 3, "FlickAndSwipe": 4}


@dataclass
class _PendingFlick:
    flick: FlickDetection
    stroke: Stroke | None
    deadline: int


@dataclass
class _PendingSwipe:
    swipe: SwipeDetection
    deadline: int


class ExpressiveFlick(Technique):
    descriptor = DESCRIPTOR

    def __init__(
        self,
        config: FlickTechniqueConfig | None = None,
        touch_config: TouchConfig | None = None,
    ) -> None:
        self.config = config or FlickTechniqueConfig()
        self.touch_config = touch_config or TouchConfig()
        self._presence: list[tuple[int, bool]] = []
        self._pending_flicks: list[_PendingFlick] = []
        self._pending_swipes: list[_PendingSwipe] = []
        self._recent_swipes: list[SwipeDetection] = []
        self.last_class: str | None = None

    @classmethod
    def from_session(cls, session: SessionConfig) -> "ExpressiveFlick":
        return cls(session.flick, session.touch)

    # -- helpers -----------------------------------------------------------

    def _face_at(self, t: int) -> bool:
        present = False
        for tick_t, value in self._presence:
            if tick_t > t:
                break
            present = value
        return present

    @staticmethod
    def _swipe_overlaps_stroke(swipe: SwipeDetection, stroke: Stroke | None) -> bool:
        if stroke is None:
            return False
        return stroke.overlaps(swipe.t_start, swipe.t_end)

    def _classify(self, swipe: SwipeDetection, strokes: list[Stroke], t: int) -> list[TechniqueEvent]:
        involved = [
            p for p in self._pending_flicks if self._swipe_overlaps_stroke(swipe, p.stroke)
        ]
        for p in involved:
            self._pending_flicks.remove(p)
        if not self._face_at(swipe.t_start):
            return []
        kind: str | None = None
        if not strokes:
            kind = "PhoneSwipe"
        elif any(
            s.max_deviation_during(swipe.t_start, swipe.t_end) <= self.touch_config.hold_tolerance_px
            for s in strokes
        ):
            kind = "HoldAndSwipe"
        else:
            for p in involved:
                if p.flick.direction is not swipe.direction or p.stroke is None:
                    continue
                if p.stroke.travel_during(swipe.t_start, swipe.t_end) >= self.config.min_travel_px:
                    kind = "FlickAndSwipe"
                    break
        if kind is None:
            return []
        self.last_class = kind
        return [
            self._event(
                t,
                "CLASS",
                kind=kind,
                direction=swipe.direction.value,
                rank=RANKS[kind],
            )
        ]

    # -- tick --------------------------------------------------------------

    def step(self, snap: FusedSnapshot) -> list[TechniqueEvent]:
        events: list[TechniqueEvent] = []
        self._presence.append((snap.t, snap.face.present))
        if len(self._presence) > 200:
            del self._presence[:-200]
        self._recent_swipes = [s for s in self._recent_swipes if snap.t - s.t_end <= 2000]

        if snap.flick is not None:
            stroke = snap.touch.stroke_ended_at(snap.flick.pointer_id, snap.flick.t)
            self._pending_flicks.append(
                _PendingFlick(snap.flick, stroke, snap.flick.t + self.config.grace_ms)
            )

        if snap.swipe is not None:
            self._recent_swipes.append(snap.swipe)
            strokes = snap.touch.strokes_overlapping(snap.swipe.t_start, snap.swipe.t_end)
            if any(s.ended_t is None for s in strokes):
                # a participating stroke is still down: wait for its release
                self._pending_swipes.append(
                    _PendingSwipe(snap.swipe, snap.swipe.t_end + self.config.grace_ms)
                )
            else:
                events.extend(self._classify(snap.swipe, strokes, snap.t))

        still_waiting: list[_PendingSwipe] = []
        for pending in self._pending_swipes:
            strokes = snap.touch.strokes_overlapping(pending.swipe.t_start, pending.swipe.t_end)
            if all(s.ended_t is not None for s in strokes) or snap.t >= pending.deadline:
                events.extend(self._classify(pending.swipe, strokes, snap.t))
            else:
                still_waiting.append(pending)
        self._pending_swipes = still_waiting

        remaining: list[_PendingFlick] = []
        for pending in self._pending_flicks:
            if snap.t < pending.deadline:
                remaining.append(pending)
                continue
            concurrent = any(
                self._swipe_overlaps_stroke(s, pending.stroke) for s in self._recent_swipes
            )
            if not concurrent:
                self.last_class = "NormalFlick"
                events.append(
                    self._event(
                        snap.t,
                        "CLASS",
                        kind="NormalFlick",
                        direction=pending.flick.direction.value,
                        rank=RANKS["NormalFlick"],
                    )
                )
        self._pending_flicks = remaining
        return events
