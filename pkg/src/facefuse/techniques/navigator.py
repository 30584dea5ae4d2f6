"""One-hand navigator: pan by sliding, zoom by face distance, rotate by device roll.

A finger down anchors the interaction and captures the face-distance level
and the relative face/device angle. The first channel to move a full level
locks the mode (zoom or rotate) until release; sliding with no locked mode
pans, sliding during a locked mode only adjusts the anchor. Rotation
counter-rotates the content so the view keeps its orientation relative to
the face.
"""

from __future__ import annotations

from ..angles import wrap_signed
from ..config import NavigatorConfig, SessionConfig
from ..engine import FusedSnapshot, Technique, TechniqueDescriptor, TechniqueEvent
from .base import quantize_level

DESCRIPTOR = TechniqueDescriptor.of("one_hand_navigator", face="DC", motion="C", touch="DC")


class OneHandNavigator(Technique):
    descriptor = DESCRIPTOR

    def __init__(self, config: NavigatorConfig | None = None, staleness_ms: int = 200) -> None:
        self.config = config or NavigatorConfig()
        self.staleness_ms = staleness_ms
        self.mode: str | None = None  # None (idle/pan) | "zoom" | "rotate"
        self.anchor: tuple[float, float] | None = None
        self.zoom_factor = 1.0           # current gesture, 1.25^k
        self.content_rotation_deg = 0.0  # current gesture, multiple of the step
        # committed view transform accumulates in integer steps so
        # complementary gestures cancel exactly
        self._view_zoom_exp = 0
        self._view_rot_steps = 0
        self._pointer: int | None = None
        self._zoom_ref_level: int | None = None
        self._level: int | None = None
        self._phi_ref: float | None = None
        self._rot_level = 0
        self._last_pos: tuple[float, float] | None = None

    @classmethod
    def from_session(cls, session: SessionConfig) -> "OneHandNavigator":
        return cls(session.navigator, session.face.staleness_ms)

    def _phi(self, snap: FusedSnapshot) -> float | None:
        if snap.attitude is None or not snap.face_available(self.staleness_ms):
            return None
        return snap.attitude.roll_deg - snap.face.fa

    @property
    def view_zoom(self) -> float:
        return self.config.zoom_step ** self._view_zoom_exp

    @property
    def view_rotation_deg(self) -> float:
        return self._view_rot_steps * self.config.rotation_step_deg

    @property
    def current_view_zoom(self) -> float:
        return self.config.zoom_step ** (self._view_zoom_exp + self._gesture_zoom_exp)

    @property
    def current_view_rotation_deg(self) -> float:
        return (self._view_rot_steps - self._rot_level) * self.config.rotation_step_deg

    @property
    def _gesture_zoom_exp(self) -> int:
        if self._zoom_ref_level is None or self._level is None:
            return 0
        return self._zoom_ref_level - self._level

    def step(self, snap: FusedSnapshot) -> list[TechniqueEvent]:
        cfg = self.config
        events: list[TechniqueEvent] = []
        pointer = snap.touch.lowest_active_pointer()

        if pointer is None:
            if self._pointer is not None:
                self._view_zoom_exp += self._gesture_zoom_exp
                self._view_rot_steps -= self._rot_level
                events.append(
                    self._event(
                        snap.t,
                        "COMMIT",
                        factor=self.zoom_factor,
                        deg=self.content_rotation_deg,
                        zoom=self.view_zoom,
                        rotation=self.view_rotation_deg,
                    )
                )
                self._reset()
            return events

        if pointer != self._pointer:
            # new stroke: capture references
            self._pointer = pointer
            self.anchor = snap.touch.position(pointer)
            self._last_pos = self.anchor
            self.mode = None
            self.zoom_factor = 1.0
            self.content_rotation_deg = 0.0
            level = snap.face.scale_level if snap.face_available(self.staleness_ms) else None
            self._zoom_ref_level = level
            self._level = level
            self._phi_ref = self._phi(snap)
            self._rot_level = 0
            return events

        if self._zoom_ref_level is not None and snap.face_available(self.staleness_ms):
            level = snap.face.scale_level
            if self.mode is None and level != self._zoom_ref_level:
                self.mode = "zoom"
            if self.mode == "zoom" and level != self._level:
                self._level = level
                self.zoom_factor = cfg.zoom_step ** (self._zoom_ref_level - level)
                events.append(
                    self._event(
                        snap.t,
                        "ZOOM",
                        factor=self.zoom_factor,
                        zoom=self.current_view_zoom,
                        anchor_x=self.anchor[0],
                        anchor_y=self.anchor[1],
                    )
                )

        phi = self._phi(snap)
        if self._phi_ref is not None and phi is not None:
            dphi = wrap_signed(phi - self._phi_ref)
            level = quantize_level(
                dphi, cfg.rotation_step_deg, self._rot_level, cfg.rotation_hysteresis_deg
            )
            if self.mode is None and level != 0:
                self.mode = "rotate"
            if self.mode == "rotate" and level != self._rot_level:
                self._rot_level = level
                self.content_rotation_deg = -level * cfg.rotation_step_deg
                events.append(
                    self._event(
                        snap.t,
                        "ROTATE",
                        deg=self.content_rotation_deg,
                        rotation=self.current_view_rotation_deg,
                        anchor_x=self.anchor[0],
                        anchor_y=self.anchor[1],
                    )
                )

        pos = snap.touch.position(pointer)
        if pos != self._last_pos:
            if self.mode is None:
                events.append(
                    self._event(
                        snap.t,
                        "PAN",
                        dx=pos[0] - self._last_pos[0],
                        dy=pos[1] - self._last_pos[1],
                    )
                )
            else:
                self.anchor = pos  # locked mode: sliding only moves the anchor
            self._last_pos = pos
        return events

    def _reset(self) -> None:
        self.mode = None
        self.anchor = None
        self.zoom_factor = 1.0
        self.content_rotation_deg = 0.0
        self._pointer = None
        self._zoom_ref_level = None
        self._level = None
        self._phi_ref = None
        self._rot_level = 0
        self._last_pos = None
