"""3D map viewer: tilt through the 45-degree band toggles 2D/3D, head leans glimpse.

Mode toggling is edge-triggered with an arming hysteresis: after a toggle the
tilt must leave the band by the re-arm margin before the band can fire again.
Glimpsing requires both a face-center offset and a face angle on the same
side (dual-variable veto) and maps the angle to 45/90/135 degrees.
"""

from __future__ import annotations

from ..config import MapViewerConfig, SessionConfig
from ..engine import FusedSnapshot, Technique, TechniqueDescriptor, TechniqueEvent
from .base import lateral_direction

DESCRIPTOR = TechniqueDescriptor.of("map_viewer", face="C", motion="D")


class MapViewer(Technique):
    descriptor = DESCRIPTOR

    def __init__(
        self,
        config: MapViewerConfig | None = None,
        camera_width: int = 480,
        mirror_camera: bool = True,
        staleness_ms: int = 200,
    ) -> None:
        self.config = config or MapViewerConfig()
        self.camera_center_x = camera_width / 2.0
        self.mirror_camera = mirror_camera
        self.staleness_ms = staleness_ms
        self.three_d = False
        self.armed = False
        self.glimpse = 0  # signed degrees, image-space sign

    @classmethod
    def from_session(cls, session: SessionConfig) -> "MapViewer":
        return cls(
            session.map_viewer,
            session.camera[0],
            session.mirror_camera,
            session.face.staleness_ms,
        )

    def _glimpse_target(self, snap: FusedSnapshot) -> int:
        cfg = self.config
        if not self.three_d or not snap.face_available(self.staleness_ms):
            return 0
        offset = snap.face.fx - self.camera_center_x
        fa = snap.face.fa
        min_angle = cfg.angle_levels[0][0]
        if offset >= cfg.min_offset_px and fa >= min_angle:
            sign = 1
        elif offset <= -cfg.min_offset_px and fa <= -min_angle:
            sign = -1
        else:
            return 0
        magnitude = 0
        for threshold, angle in cfg.angle_levels:
            if abs(fa) >= threshold:
                magnitude = angle
        return sign * magnitude

    def step(self, snap: FusedSnapshot) -> list[TechniqueEvent]:
        cfg = self.config
        att = snap.attitude
        if att is None or not att.reliable:
            return []
        events: list[TechniqueEvent] = []
        tilt = att.tilt_deg
        in_band = cfg.band_lo_deg <= tilt <= cfg.band_hi_deg
        if not self.armed:
            if tilt < cfg.band_lo_deg - cfg.rearm_margin_deg or tilt > cfg.band_hi_deg + cfg.rearm_margin_deg:
                self.armed = True
        elif in_band:
            self.three_d = not self.three_d
            self.armed = False
            events.append(
                self._event(snap.t, "VIEW_MODE", mode="ThreeD" if self.three_d else "TwoD")
            )
        target = self._glimpse_target(snap)
        if target != self.glimpse:
            self.glimpse = target
            side = (
                "Center"
                if target == 0
                else lateral_direction(1 if target > 0 else -1, self.mirror_camera).value
            )
            events.append(self._event(snap.t, "GLIMPSE", angle=target, side=side))
        return events
