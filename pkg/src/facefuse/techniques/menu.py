"""Touch-free pie menu: relative face/device angle highlights, dwell selects.

The highlighted item is the 45-degree sector of the device-roll minus
face-angle difference, with a hysteresis band at sector boundaries. Holding
one item for the timeout emits a selection and restarts the dwell.
"""

from __future__ import annotations

from ..angles import circular_diff, wrap_unsigned
from ..config import MenuConfig, SessionConfig
from ..engine import FusedSnapshot, Technique, TechniqueDescriptor, TechniqueEvent

DESCRIPTOR = TechniqueDescriptor.of("touch_free_menu", face="C", motion="C")


class TouchFreeMenu(Technique):
    descriptor = DESCRIPTOR

    def __init__(self, config: MenuConfig | None = None, staleness_ms: int = 200) -> None:
        self.config = config or MenuConfig()
        self.staleness_ms = staleness_ms
        self.highlighted: int | None = None
        self.dwell_start_t: int | None = None
        self.last_selected: int | None = None

    @classmethod
    def from_session(cls, session: SessionConfig) -> "TouchFreeMenu":
        return cls(session.menu, session.face.staleness_ms)

    def dwell_ms(self, t: int) -> int:
        return 0 if self.dwell_start_t is None else t - self.dwell_start_t

    def step(self, snap: FusedSnapshot) -> list[TechniqueEvent]:
        cfg = self.config
        if not snap.face_available(self.staleness_ms) or snap.attitude is None:
            self.dwell_start_t = None  # engagement lost: dwell restarts
            return []
        events: list[TechniqueEvent] = []
        sector_deg = 360.0 / cfg.item_count
        theta = wrap_unsigned(snap.attitude.roll_deg - snap.face.fa)
        if self.highlighted is None:
            item = int(theta / sector_deg + 0.5) % cfg.item_count
        else:
            center = self.highlighted * sector_deg
            if abs(circular_diff(theta, center)) <= sector_deg / 2.0 + cfg.hysteresis_deg:
                item = self.highlighted
            else:
                item = int(theta / sector_deg + 0.5) % cfg.item_count
        if item != self.highlighted:
            self.highlighted = item
            self.dwell_start_t = snap.t
            events.append(self._event(snap.t, "HIGHLIGHT", item=item))
        elif self.dwell_start_t is None:
            self.dwell_start_t = snap.t
        elif snap.t - self.dwell_start_t >= cfg.timeout_ms:
            self.dwell_start_t = snap.t
            self.last_selected = item
            events.append(self._event(snap.t, "SELECTED", item=item))
        return events
