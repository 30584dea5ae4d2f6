"""facefuse: deterministic face + touch + device-motion gesture fusion."""

from .config import SessionConfig, load_config
from .engine import (
    DuplicateIdentifier,
    FusedSnapshot,
    FusionEngine,
    Technique,
    TechniqueDescriptor,
    TechniqueEvent,
)
from .face import FaceEvent, FacePipeline, FaceState, distance_ratio, quantize_scale
from .model import (
    BadPhase,
    CalibrationConstants,
    Direction,
    FaceObservation,
    ImuSample,
    NonMonotonicTime,
    OutOfRange,
    SensorFrame,
    SequenceValidator,
    TouchPhase,
    TouchSample,
    ValidationError,
    validate_frame,
)
from .motion import DeviceAttitude, MotionPipeline, SwipeDetection, detect_phone_swipe
from .replay import replay, replay_events
from .scenarios import EXPECTED_EVENT, UnknownScenario, generate, scenario_names
from .techniques import DESCRIPTORS, build_engine
from .touch import FlickDetection, TouchPipeline, UnknownPointer
from .trace import ParseError, Trace, parse, render

__version__ = "0.1.0"

__all__ = [
    "BadPhase",
    "CalibrationConstants",
    "DESCRIPTORS",
    "DeviceAttitude",
    "Direction",
    "DuplicateIdentifier",
    "EXPECTED_EVENT",
    "FaceEvent",
    "FaceObservation",
    "FacePipeline",
    "FaceState",
    "FlickDetection",
    "FusedSnapshot",
    "FusionEngine",
    "ImuSample",
    "MotionPipeline",
    "NonMonotonicTime",
    "OutOfRange",
    "ParseError",
    "SensorFrame",
    "SequenceValidator",
    "SessionConfig",
    "SwipeDetection",
    "Technique",
    "TechniqueDescriptor",
    "TechniqueEvent",
    "TouchPhase",
    "TouchPipeline",
    "TouchSample",
    "Trace",
    "UnknownPointer",
    "UnknownScenario",
    "ValidationError",
    "build_engine",
    "distance_ratio",
    "detect_phone_swipe",
    "generate",
    "load_config",
    "parse",
    "quantize_scale",
    "render",
    "replay",
    "replay_events",
    "scenario_names",
    "validate_frame",
]
