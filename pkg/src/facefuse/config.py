"""Session configuration: pipeline tunables, technique parameters, JSON loading.

Every threshold the engine uses lives here with its default. A session config
file (JSON) may override the documented subset; unknown keys and
out-of-range values are rejected with ConfigError.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from .model import DEFAULT_CAMERA, DEFAULT_SCREEN

TECHNIQUE_IDS = (
    "multi_scale_scroll",
    "text_edit",
    "map_viewer",
    "touch_free_menu",
    "expressive_flick",
    "one_hand_navigator",
)


class ConfigError(ValueError):
    """Unknown key or out-of-range value in a session config."""


@dataclass(frozen=True)
class FaceConfig:
    enter_count: int = 2          # consecutive detections before Entering
    exit_count: int = 5           # consecutive misses before Exiting
    ema_alpha: float = 0.4        # smoothing on fx/fy/fs/fa
    scale_min: float = 40.0       # camera px, far end of the 6-level range
    scale_max: float = 160.0      # camera px, near end
    move_epsilon_px: float = 8.0  # Moving event threshold on smoothed center
    staleness_ms: int = 200       # continuous consumers drop older values
    level_hysteresis_frac: float = 0.05  # of one bin width


@dataclass(frozen=True)
class SwipeConfig:
    primary_g: float = 0.6     # main pulse magnitude
    opposite_g: float = 0.4    # braking pulse magnitude
    sustain_ms: int = 50       # main pulse minimum span
    couple_ms: int = 500       # braking pulse must follow within this
    refractory_ms: int = 400   # dead time after a detection
    min_buffer_ms: int = 120   # samples required before any detection
    max_window_ms: int = 700   # whole gesture cap


@dataclass(frozen=True)
class MotionConfig:
    gravity_cutoff_hz: float = 1.0        # attitude low-pass
    swipe_highpass_cutoff_hz: float = 0.3  # slower baseline for pulse extraction
    use_gyro: bool = True
    gyro_accel_weight: float = 0.02       # accel correction weight per sample
    freefall_g: float = 0.2
    freefall_ms: int = 1000
    swipe: SwipeConfig = field(default_factory=SwipeConfig)


@dataclass(frozen=True)
class TouchConfig:
    flick_speed_px_s: float = 600.0
    velocity_window_ms: int = 100
    history_ms: int = 150          # velocity estimation window retention
    hold_tolerance_px: float = 15.0
    stroke_retention_ms: int = 2000  # ended strokes kept for window queries


@dataclass(frozen=True)
class ScrollConfig:
    mode: str = "relative"  # or "absolute"
    active_gap_ms: int = 500


@dataclass(frozen=True)
class TextEditConfig:
    step_ms: int = 200
    angle_threshold_deg: float = 15.0
    document_length: int = 40
    tap_max_travel_px: float = 10.0
    tap_max_ms: int = 250


@dataclass(frozen=True)
class MapViewerConfig:
    band_lo_deg: float = 35.0
    band_hi_deg: float = 55.0
    rearm_margin_deg: float = 5.0
    min_offset_px: float = 80.0
    # (face angle threshold, glimpse angle) pairs, ascending
    angle_levels: tuple[tuple[float, int], ...] = ((10.0, 45), (20.0, 90), (30.0, 135))


@dataclass(frozen=True)
class MenuConfig:
    item_count: int = 8
    timeout_ms: int = 2000
    hysteresis_deg: float = 5.0


@dataclass(frozen=True)
class FlickTechniqueConfig:
    min_travel_px: float = 40.0
    grace_ms: int = 500


@dataclass(frozen=True)
class NavigatorConfig:
    zoom_step: float = 1.25
    rotation_step_deg: float = 18.0
    rotation_hysteresis_deg: float = 5.0


@dataclass(frozen=True)
class SessionConfig:
    screen: tuple[int, int] = DEFAULT_SCREEN
    camera: tuple[int, int] = DEFAULT_CAMERA
    mirror_camera: bool = True
    clock_hz: int = 60
    state_hz: int = 20
    tail_ms: int = 600
    techniques: tuple[str, ...] = TECHNIQUE_IDS
    face: FaceConfig = field(default_factory=FaceConfig)
    motion: MotionConfig = field(default_factory=MotionConfig)
    touch: TouchConfig = field(default_factory=TouchConfig)
    scroll: ScrollConfig = field(default_factory=ScrollConfig)
    text_edit: TextEditConfig = field(default_factory=TextEditConfig)
    map_viewer: MapViewerConfig = field(default_factory=MapViewerConfig)
    menu: MenuConfig = field(default_factory=MenuConfig)
    flick: FlickTechniqueConfig = field(default_factory=FlickTechniqueConfig)
    navigator: NavigatorConfig = field(default_factory=NavigatorConfig)


# Overridable technique parameters: id -> {json key: (attr, type, lo, hi)}
_OVERRIDES = {
    "multi_scale_scroll": {
        "mode": ("mode", str, None, None),
        "active_gap_ms": ("active_gap_ms", int, 100, 2000),
    },
    "text_edit": {
        "step_ms": ("step_ms", int, 50, 1000),
        "angle_threshold_deg": ("angle_threshold_deg", float, 5.0, 45.0),
        "document_length": ("document_length", int, 1, 10000),
    },
    "map_viewer": {
        "band_lo_deg": ("band_lo_deg", float, 20.0, 80.0),
        "band_hi_deg": ("band_hi_deg", float, 20.0, 80.0),
        "rearm_margin_deg": ("rearm_margin_deg", float, 0.0, 20.0),
        "min_offset_px": ("min_offset_px", float, 10.0, 240.0),
    },
    "touch_free_menu": {
        "timeout_ms": ("timeout_ms", int, 500, 10000),
        "hysteresis_deg": ("hysteresis_deg", float, 0.0, 22.0),
    },
    "expressive_flick": {
        "min_travel_px": ("min_travel_px", float, 1.0, 500.0),
        "grace_ms": ("grace_ms", int, 50, 2000),
    },
    "one_hand_navigator": {
        "zoom_step": ("zoom_step", float, 1.01, 2.0),
        "rotation_step_deg": ("rotation_step_deg", float, 5.0, 90.0),
        "rotation_hysteresis_deg": ("rotation_hysteresis_deg", float, 0.0, 10.0),
    },
}

_TECH_FIELD = {
    "multi_scale_scroll": "scroll",
    "text_edit": "text_edit",
    "map_viewer": "map_viewer",
    "touch_free_menu": "menu",
    "expressive_flick": "flick",
    "one_hand_navigator": "navigator",
}

_TOP_KEYS = {"screen", "camera", "mirror_camera", "clock_hz", "state_hz", "tail_ms",
             "techniques", "overrides"}


def _dims(value, key: str) -> tuple[int, int]:
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(v, int) and v > 0 for v in value)):
        raise ConfigError(f"{key} must be a [width, height] pair of positive integers")
    return (value[0], value[1])


def config_from_dict(data: dict) -> SessionConfig:
    if not isinstance(data, dict):
        raise ConfigError("session config must be a JSON object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    cfg = SessionConfig()
    if "screen" in data:
        cfg = replace(cfg, screen=_dims(data["screen"], "screen"))
    if "camera" in data:
        cfg = replace(cfg, camera=_dims(data["camera"], "camera"))
    if "mirror_camera" in data:
        if not isinstance(data["mirror_camera"], bool):
            raise ConfigError("mirror_camera must be a boolean")
        cfg = replace(cfg, mirror_camera=data["mirror_camera"])
    for key, lo, hi in (("clock_hz", 10, 240), ("state_hz", 1, 60), ("tail_ms", 0, 5000)):
        if key in data:
            v = data[key]
            if not isinstance(v, int) or not lo <= v <= hi:
                raise ConfigError(f"{key} must be an integer in [{lo}, {hi}]")
            cfg = replace(cfg, **{key: v})
    if "techniques" in data:
        techs = data["techniques"]
        if not isinstance(techs, list) or not all(isinstance(t, str) for t in techs):
            raise ConfigError("techniques must be a list of technique identifiers")
        bad = [t for t in techs if t not in TECHNIQUE_IDS]
        if bad:
            raise ConfigError(f"unknown techniques: {bad}")
        cfg = replace(cfg, techniques=tuple(techs))
    if "overrides" in data:
        ov = data["overrides"]
        if not isinstance(ov, dict):
            raise ConfigError("overrides must be an object keyed by technique id")
        for tech, params in ov.items():
            if tech not in _OVERRIDES:
                raise ConfigError(f"unknown technique in overrides: {tech}")
            if not isinstance(params, dict):
                raise ConfigError(f"overrides for {tech} must be an object")
            spec = _OVERRIDES[tech]
            sub = getattr(cfg, _TECH_FIELD[tech])
            for key, value in params.items():
                if key not in spec:
                    raise ConfigError(f"unknown parameter {tech}.{key}")
                attr, typ, lo, hi = spec[key]
                if typ is float and isinstance(value, int):
                    value = float(value)
                if not isinstance(value, typ) or isinstance(value, bool):
                    raise ConfigError(f"{tech}.{key} must be {typ.__name__}")
                if lo is not None and not lo <= value <= hi:
                    raise ConfigError(f"{tech}.{key}={value} outside [{lo}, {hi}]")
                if tech == "multi_scale_scroll" and key == "mode" and value not in ("relative", "absolute"):
                    raise ConfigError("multi_scale_scroll.mode must be 'relative' or 'absolute'")
                if tech == "map_viewer" and key == "band_hi_deg":
                    pass  # cross-checked below
                sub = replace(sub, **{attr: value})
            cfg = replace(cfg, **{_TECH_FIELD[tech]: sub})
        if cfg.map_viewer.band_lo_deg >= cfg.map_viewer.band_hi_deg:
            raise ConfigError("map_viewer band_lo_deg must be below band_hi_deg")
    return cfg


def load_config(path: str | Path | None) -> SessionConfig:
    """Load a session config file; falls back to $FACEFUSE_CONFIG, then defaults."""
    if path is None:
        env = os.environ.get("FACEFUSE_CONFIG")
        if not env:
            return SessionConfig()
        path = env
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return config_from_dict(data)
