"""The six face-engaged technique state machines and their registry."""

from __future__ import annotations

from ..config import SessionConfig
from ..engine import FusionEngine, Technique, TechniqueDescriptor
from .flick import ExpressiveFlick
from .map_viewer import MapViewer
from .menu import TouchFreeMenu
from .navigator import OneHandNavigator
from .scroll import MultiScaleScroll
from .text_edit import CoarseToFineTextEdit

__all__ = [
    "ExpressiveFlick",
    "MapViewer",
    "TouchFreeMenu",
    "OneHandNavigator",
    "MultiScaleScroll",
    "CoarseToFineTextEdit",
    "TECHNIQUE_CLASSES",
    "DESCRIPTORS",
    "build_technique",
    "build_engine",
]

TECHNIQUE_CLASSES: dict[str, type[Technique]] = {
    "multi_scale_scroll": MultiScaleScroll,
    "text_edit": CoarseToFineTextEdit,
    "map_viewer": MapViewer,
    "touch_free_menu": TouchFreeMenu,
    "expressive_flick": ExpressiveFlick,
    "one_hand_navigator": OneHandNavigator,
}

DESCRIPTORS: dict[str, TechniqueDescriptor] = {
    name: cls.descriptor for name, cls in TECHNIQUE_CLASSES.items()
}


def build_technique(identifier: str, session: SessionConfig) -> Technique:
    cls = TECHNIQUE_CLASSES[identifier]
    return cls.from_session(session)


def build_engine(session: SessionConfig | None = None) -> FusionEngine:
    """Engine with the session's enabled techniques registered in order."""
    session = session or SessionConfig()
    engine = FusionEngine(session)
    for identifier in session.techniques:
        engine.register(build_technique(identifier, session))
    return engine
