"""Seeded synthetic scenario generator producing canonical motion traces.

Each scenario mirrors one of the demo motions: approaching the face, leaning
the head, tilting into the 3D band, swiping the phone (alone, with a held
finger, with a synchronized flick), dwelling on a pie-menu item, zooming by
distance, rotating the device. IMU samples at 60 Hz, face at 16 Hz;
additive Gaussian noise comes from the named seeded generator recorded in
the trace header, so identical (name, params, seed) yields identical bytes.
"""

from __future__ import annotations

import math

from .model import SensorFrame, TouchPhase
from .rng import GENERATOR_NAME, Xoshiro256StarStar
from .trace import Trace, face_frame, face_none_frame, imu_frame, q6, touch_frame


class ScenarioError(ValueError):
    """Bad scenario parameters."""


class UnknownScenario(ScenarioError):
    """No built-in scenario with that name."""


def _attitude_accel(tilt_deg: float, roll_deg: float) -> tuple[float, float, float]:
    """Steady-state accelerometer reading for a tilt/roll attitude (in g)."""
    tr = math.radians(tilt_deg)
    rr = math.radians(roll_deg)
    gz = -math.cos(tr)
    s = math.sin(tr)
    return (-s * math.sin(rr), -s * math.cos(rr), gz)


def _ramp(t: float, t0: float, t1: float, v0: float, v1: float) -> float:
    if t <= t0:
        return v0
    if t >= t1:
        return v1
    return v0 + (v1 - v0) * (t - t0) / (t1 - t0)


def _imu_times(duration_ms: int):
    k = 0
    while True:
        t = (k * 1000 + 30) // 60
        if t > duration_ms:
            return
        yield t
        k += 1


def _face_times(duration_ms: int):
    i = 0
    while True:
        t = (i * 1000 + 8) // 16
        if t > duration_ms:
            return
        yield t
        i += 1


class _Builder:
    """Collects per-channel frames with a shared noise stream.

    Noise draws happen in a fixed order (IMU stream first, then face stream)
    so the byte output is a pure function of (scenario, params, seed).
    """

    def __init__(self, params: dict, rng: Xoshiro256StarStar) -> None:
        self.p = params
        self.rng = rng
        self.frames: list[SensorFrame] = []
        self.camera = (480, 640)

    def imu(self, duration_ms: int, profile) -> None:
        sigma = float(self.p.get("sigma_accel", 0.0))
        for t in _imu_times(duration_ms):
            ax, ay, az, rx, ry, rz = profile(t)
            ax += self.rng.gauss(sigma)
            ay += self.rng.gauss(sigma)
            az += self.rng.gauss(sigma)
            self.frames.append(imu_frame(t, ax, ay, az, rx, ry, rz))

    def face(self, duration_ms: int, profile) -> None:
        sigma_px = float(self.p.get("sigma_face_px", 0.0))
        sigma_deg = float(self.p.get("sigma_face_deg", 0.0))
        w, h = self.camera
        for t in _face_times(duration_ms):
            vals = profile(t)
            if vals is None:
                self.frames.append(face_none_frame(t))
                continue
            fx, fy, fs, fa = vals
            fx += self.rng.gauss(sigma_px)
            fy += self.rng.gauss(sigma_px)
            fs += self.rng.gauss(sigma_px)
            fa += self.rng.gauss(sigma_deg)
            fx = min(max(fx, 0.0), w - 1e-6)
            fy = min(max(fy, 0.0), h - 1e-6)
            fs = max(fs, 1.0)
            fa = min(max(fa, -90.0), 90.0)
            self.frames.append(face_frame(t, fx, fy, fs, fa))

    def touch(self, samples: list[tuple[int, int, str, float, float]]) -> None:
        for t, pid, phase, x, y in samples:
            self.frames.append(touch_frame(t, pid, TouchPhase(phase), x, y))


def _upright(t: float) -> tuple[float, float, float, float, float, float]:
    ax, ay, az = _attitude_accel(90.0, 0.0)
    return (ax, ay, az, 0.0, 0.0, 0.0)


def _centered_face(fs: float = 110.0, fa: float = 0.0):
    def profile(t: float):
        return (240.0, 320.0, fs, fa)

    return profile


# -- scenario builders --------------------------------------------------------

def _face_approach(b: _Builder) -> None:
    duration = int(b.p["duration_ms"])
    ramp0, ramp1 = 400, duration - 200

    def face(t):
        return (240.0, 320.0, _ramp(t, ramp0, ramp1, b.p["scale_from"], b.p["scale_to"]), 0.0)

    b.imu(duration, _upright)
    b.face(duration, face)
    b.touch(
        [
            (300, 0, "BEGAN", 320.0, 568.0),
            (duration - 100, 0, "ENDED", 320.0, 568.0),
        ]
    )


def _lean(side: int):
    def build(b: _Builder) -> None:
        hold = int(b.p["hold_ms"])
        duration = hold + 500
        amplitude = float(b.p["amplitude_deg"]) * side
        fx = 240.0 + float(b.p["offset_px"]) * side

        def face(t):
            if t < hold:
                return (fx, 320.0, 110.0, amplitude)
            return None

        b.imu(duration, _upright)
        b.face(duration, face)

    return build


def _tilt_to_3d(b: _Builder) -> None:
    duration = int(b.p["duration_ms"])
    ramp0, ramp1 = 300, 900
    target = float(b.p["target_tilt_deg"])
    rate = (target - 90.0) / ((ramp1 - ramp0) / 1000.0)

    def imu(t):
        tilt = _ramp(t, ramp0, ramp1, 90.0, target)
        ax, ay, az = _attitude_accel(tilt, 0.0)
        rx = rate if ramp0 <= t < ramp1 else 0.0
        return (ax, ay, az, rx, 0.0, 0.0)

    b.imu(duration, imu)
    b.face(duration, _centered_face())


def _menu_dwell(b: _Builder) -> None:
    duration = int(b.p["duration_ms"])
    theta = float(b.p["theta_deg"])

    def imu(t):
        ax, ay, az = _attitude_accel(90.0, theta)
        return (ax, ay, az, 0.0, 0.0, 0.0)

    b.imu(duration, imu)
    b.face(duration, _centered_face())


def _swipe_pulse(b: _Builder, duration: int) -> int:
    """Add the accelerate-then-brake pulse pair; returns the pulse start time."""
    t0 = int(b.p["pulse_start_ms"])
    sign = 1.0 if str(b.p["direction"]) == "Right" else -1.0
    pulse_g = float(b.p["pulse_g"])
    brake_g = float(b.p["brake_g"])
    pulse_ms = int(b.p["pulse_ms"])
    brake_at = t0 + int(b.p["brake_delay_ms"])

    def imu(t):
        ax, ay, az = _attitude_accel(90.0, 0.0)
        if t0 <= t < t0 + pulse_ms:
            ax += pulse_g * sign
        elif brake_at <= t < brake_at + 34:
            ax -= brake_g * sign
        return (ax, ay, az, 0.0, 0.0, 0.0)

    b.imu(duration, imu)
    return t0


def _face_profile_from_param(b: _Builder):
    if float(b.p.get("face_present", 1)) != 0:
        return _centered_face()
    return lambda t: None


def _phone_swipe(b: _Builder) -> None:
    duration = int(b.p["duration_ms"])
    _swipe_pulse(b, duration)
    b.face(duration, _face_profile_from_param(b))


def _hold_and_swipe(b: _Builder) -> None:
    duration = int(b.p["duration_ms"])
    _swipe_pulse(b, duration)
    b.face(duration, _face_profile_from_param(b))
    b.touch(
        [
            (300, 0, "BEGAN", 320.0, 568.0),
            (duration - 100, 0, "ENDED", 320.0, 568.0),
        ]
    )


def _flick_and_swipe(b: _Builder) -> None:
    duration = int(b.p["duration_ms"])
    t0 = _swipe_pulse(b, duration)
    b.face(duration, _face_profile_from_param(b))
    sign = 1.0 if str(b.p["direction"]) == "Right" else -1.0
    x0 = 200.0 if sign > 0 else 440.0
    step = 60.0 * sign
    b.touch(
        [
            (t0 - 40, 0, "BEGAN", x0, 800.0),
            (t0, 0, "MOVED", x0 + step, 800.0),
            (t0 + 40, 0, "MOVED", x0 + 2 * step, 800.0),
            (t0 + 80, 0, "MOVED", x0 + 3 * step, 800.0),
            (t0 + 80, 0, "ENDED", x0 + 3 * step, 800.0),
        ]
    )


def _zoom(direction: int):
    def build(b: _Builder) -> None:
        duration = int(b.p["duration_ms"])
        scale_from = float(b.p["scale_from"])
        scale_to = float(b.p["scale_to_in" if direction > 0 else "scale_to_out"])

        def face(t):
            return (240.0, 320.0, _ramp(t, 400, 900, scale_from, scale_to), 0.0)

        b.imu(duration, _upright)
        b.face(duration, face)
        b.touch(
            [
                (200, 0, "BEGAN", 320.0, 568.0),
                (duration - 100, 0, "ENDED", 320.0, 568.0),
            ]
        )

    return build


def _rotate_device(b: _Builder) -> None:
    # angle_deg is the peak device roll; a hand overshoots its target, and the
    # peak must clear the quantizer's hysteresis despite attitude filter lag.
    duration = int(b.p["duration_ms"])
    angle = float(b.p["angle_deg"])
    ramp0, ramp1 = 400, 1000
    rate = angle / ((ramp1 - ramp0) / 1000.0)

    def imu(t):
        roll = _ramp(t, ramp0, ramp1, 0.0, angle)
        ax, ay, az = _attitude_accel(90.0, roll)
        rz = rate if ramp0 <= t < ramp1 else 0.0
        return (ax, ay, az, 0.0, 0.0, rz)

    b.imu(duration, imu)
    b.face(duration, _centered_face())
    b.touch(
        [
            (200, 0, "BEGAN", 320.0, 568.0),
            (duration - 100, 0, "ENDED", 320.0, 568.0),
        ]
    )


_COMMON_DEFAULTS = {"sigma_accel": 0.0, "sigma_face_px": 0.0, "sigma_face_deg": 0.0}

_SWIPE_DEFAULTS = {
    "duration_ms": 1400,
    "pulse_start_ms": 600,
    "direction": "Right",
    "pulse_g": 0.8,
    "brake_g": 0.5,
    "pulse_ms": 60,
    "brake_delay_ms": 200,
    "face_present": 1,
}

SCENARIOS: dict[str, tuple[dict, object]] = {
    "face_approach": (
        {"duration_ms": 1600, "scale_from": 110.0, "scale_to": 160.0},
        _face_approach,
    ),
    "lean_left": ({"amplitude_deg": 20.0, "offset_px": 90.0, "hold_ms": 1000}, _lean(-1)),
    "lean_right": ({"amplitude_deg": 20.0, "offset_px": 90.0, "hold_ms": 1000}, _lean(+1)),
    "tilt_to_3d": ({"duration_ms": 1500, "target_tilt_deg": 45.0}, _tilt_to_3d),
    "phone_swipe": (dict(_SWIPE_DEFAULTS), _phone_swipe),
    "hold_and_swipe": (dict(_SWIPE_DEFAULTS), _hold_and_swipe),
    "flick_and_swipe": (dict(_SWIPE_DEFAULTS), _flick_and_swipe),
    "menu_dwell": ({"duration_ms": 2500, "theta_deg": 90.0}, _menu_dwell),
    "zoom_in": (
        {"duration_ms": 1300, "scale_from": 110.0, "scale_to_in": 130.0},
        _zoom(+1),
    ),
    "zoom_out": (
        {"duration_ms": 1300, "scale_from": 110.0, "scale_to_out": 88.0},
        _zoom(-1),
    ),
    "rotate_device": ({"duration_ms": 1300, "angle_deg": 40.0}, _rotate_device),
}

# Documented expected replay outcome per scenario at sigma = 0
# (technique, kind, payload subset that must appear exactly once as stated).
EXPECTED_EVENT = {
    "face_approach": ("multi_scale_scroll", "RATE", {"multiplier": 0.25}),
    "lean_left": ("text_edit", "CURSOR_MOVED", {"direction": "Left"}),
    "lean_right": ("text_edit", "CURSOR_MOVED", {"direction": "Right"}),
    "tilt_to_3d": ("map_viewer", "VIEW_MODE", {"mode": "ThreeD"}),
    "phone_swipe": ("expressive_flick", "CLASS", {"kind": "PhoneSwipe"}),
    "hold_and_swipe": ("expressive_flick", "CLASS", {"kind": "HoldAndSwipe"}),
    "flick_and_swipe": ("expressive_flick", "CLASS", {"kind": "FlickAndSwipe"}),
    "menu_dwell": ("touch_free_menu", "SELECTED", {"item": 2}),
    "zoom_in": ("one_hand_navigator", "ZOOM", {"factor": 1.25}),
    "zoom_out": ("one_hand_navigator", "ZOOM", {"factor": 0.8}),
    "rotate_device": ("one_hand_navigator", "ROTATE", {"deg": -36.0}),
}


def scenario_names() -> list[str]:
    return sorted(SCENARIOS)


def generate(name: str, params: dict | None = None, seed: int = 0) -> Trace:
    if name not in SCENARIOS:
        raise UnknownScenario(f"unknown scenario {name!r} (known: {', '.join(scenario_names())})")
    defaults, build = SCENARIOS[name]
    merged = dict(_COMMON_DEFAULTS)
    merged.update(defaults)
    if params:
        unknown = set(params) - set(merged)
        if unknown:
            raise ScenarioError(f"unknown parameters for {name}: {sorted(unknown)}")
        merged.update(params)
    rng = Xoshiro256StarStar(seed)
    builder = _Builder(merged, rng)
    build(builder)
    builder.frames.sort(key=lambda f: (f.t, f.channel_rank))
    config = {
        "scenario": name,
        "seed": str(seed),
        "generator": GENERATOR_NAME,
    }
    for key in sorted(merged):
        value = merged[key]
        config[key] = str(q6(value)) if isinstance(value, float) else str(value)
    return Trace(config=config, frames=builder.frames)
