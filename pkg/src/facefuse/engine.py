"""Centralized recognizer: fixed-rate clock, channel fusion, technique dispatch.

Frames are applied to their pipelines at their own timestamps; snapshots are
sampled at tick boundaries (default 60 Hz). Slow channels latch their last
value between arrivals, with staleness bounds marking them unavailable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import SessionConfig
from .face import FaceEvent, FacePipeline, FaceState
from .model import (
    FaceObservation,
    ImuSample,
    SensorFrame,
    TouchSample,
    ValidationError,
)
from .motion import DeviceAttitude, MotionPipeline, SwipeDetection
from .touch import FlickDetection, TouchPipeline


class DuplicateIdentifier(ValueError):
    """A technique with this identifier is already registered."""


@dataclass(frozen=True)
class TechniqueDescriptor:
    """Modality usage per channel: subsets of {"D", "C"} (discrete/continuous)."""

    identifier: str
    face: frozenset[str]
    motion: frozenset[str]
    touch: frozenset[str]

    @staticmethod
    def of(identifier: str, face: str = "", motion: str = "", touch: str = "") -> "TechniqueDescriptor":
        return TechniqueDescriptor(
            identifier, frozenset(face), frozenset(motion), frozenset(touch)
        )


@dataclass(frozen=True)
class TechniqueEvent:
    t: int
    technique: str
    kind: str
    payload: tuple[tuple[str, int | float | str], ...]

    @staticmethod
    def make(t: int, technique: str, kind: str, /, **payload) -> "TechniqueEvent":
        return TechniqueEvent(t, technique, kind, tuple(sorted(payload.items())))

    def get(self, key: str):
        for k, v in self.payload:
            if k == key:
                return v
        raise KeyError(key)

    def render(self) -> str:
        parts = [str(self.t), "EVT", self.technique, self.kind]
        for key, value in self.payload:
            parts.append(f"{key}={_fmt_value(value)}")
        return " ".join(parts)


def _fmt_value(value: int | float | str) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value + 0.0:.6f}"  # +0.0 normalizes -0.0
    return str(value)


@dataclass(frozen=True)
class FusedSnapshot:
    t: int
    face: FaceState
    attitude: DeviceAttitude | None
    touch: TouchPipeline
    face_event: FaceEvent | None = None
    flick: FlickDetection | None = None
    swipe: SwipeDetection | None = None

    def face_available(self, staleness_ms: int = 200) -> bool:
        return self.face.available(self.t, staleness_ms)


class Technique:
    """Base class for technique state machines driven by engine ticks."""

    descriptor: TechniqueDescriptor

    def step(self, snap: FusedSnapshot) -> list[TechniqueEvent]:
        raise NotImplementedError

    def _event(self, t: int, kind: str, /, **payload) -> TechniqueEvent:
        return TechniqueEvent.make(t, self.descriptor.identifier, kind, **payload)


@dataclass
class Diagnostic:
    t: int
    code: str
    message: str

    def render(self) -> str:
        return f"{self.t} DIAG {self.code} {self.message}"


class FusionEngine:
    """One engine per session; strictly single-threaded."""

    def __init__(self, config: SessionConfig | None = None) -> None:
        self.config = config or SessionConfig()
        self.face = FacePipeline(self.config.face)
        self.motion = MotionPipeline(self.config.motion)
        self.touch = TouchPipeline(self.config.touch)
        self.techniques: dict[str, Technique] = {}
        self.diagnostics: list[Diagnostic] = []
        self._tick_index = 0
        self._was_reliable = True

    def register(self, technique: Technique) -> None:
        ident = technique.descriptor.identifier
        if ident in self.techniques:
            raise DuplicateIdentifier(ident)
        self.techniques[ident] = technique

    def descriptors(self) -> list[TechniqueDescriptor]:
        return [t.descriptor for t in self.techniques.values()]

    def tick_time(self, index: int) -> int:
        hz = self.config.clock_hz
        return (index * 1000 + hz // 2) // hz

    @property
    def next_tick_time(self) -> int:
        return self.tick_time(self._tick_index)

    def tick(self, frames: list[SensorFrame]) -> tuple[FusedSnapshot, list[TechniqueEvent]]:
        t_tick = self.tick_time(self._tick_index)
        self._tick_index += 1
        face_event: FaceEvent | None = None
        flick: FlickDetection | None = None
        swipe: SwipeDetection | None = None
        for frame in frames:
            payload = frame.payload
            try:
                if isinstance(payload, TouchSample):
                    flick = self.touch.ingest(payload, frame.t) or flick
                elif isinstance(payload, ImuSample):
                    swipe = self.motion.ingest(payload, frame.t) or swipe
                elif isinstance(payload, FaceObservation):
                    face_event = self.face.ingest(payload, frame.t) or face_event
            except ValidationError as exc:
                self.diagnostics.append(Diagnostic(frame.t, type(exc).__name__, str(exc)))
        att = self.motion.attitude
        if att is not None and att.reliable != self._was_reliable:
            if not att.reliable:
                self.diagnostics.append(
                    Diagnostic(t_tick, "DegenerateGravity", "sustained near-zero acceleration")
                )
            self._was_reliable = att.reliable
        snapshot = FusedSnapshot(
            t=t_tick,
            face=self.face.snapshot(),
            attitude=att,
            touch=self.touch,
            face_event=face_event,
            flick=flick,
            swipe=swipe,
        )
        events: list[TechniqueEvent] = []
        for technique in self.techniques.values():
            events.extend(technique.step(snapshot))
        return snapshot, events
