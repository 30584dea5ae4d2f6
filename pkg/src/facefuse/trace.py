"""Bit-exact textual trace format: one sensor frame per line.

Grammar (space separated, `#` starts a comment line, blank lines ignored):

    HDR version 1
    HDR screen <w> <h>
    HDR camera <w> <h>
    HDR config <key>=<value>          (repeatable, sorted by key on render)
    <t_ms> TOUCH <id> <BEGAN|MOVED|ENDED|CANCELLED> <x> <y>
    <t_ms> IMU <ax> <ay> <az> <rx> <ry> <rz>
    <t_ms> FACE NONE
    <t_ms> FACE DET <fx> <fy> <fs> <fa> <rot>

All floats render with 6 decimal places so rendering is byte-identical
across platforms; builder helpers quantize values to that precision so
parse(render(trace)) == trace.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import (
    DEFAULT_CAMERA,
    DEFAULT_SCREEN,
    FaceObservation,
    ImuSample,
    SensorFrame,
    SequenceValidator,
    TouchPhase,
    TouchSample,
    ValidationError,
    nearest_rotation_bucket,
)

FORMAT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, line_no: int) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def q6(value: float) -> float:
    """Quantize to the trace format's 6-decimal precision."""
    return float(f"{value:.6f}")


def _f6(value: float) -> str:
    return f"{value + 0.0:.6f}"


@dataclass
class Trace:
    screen: tuple[int, int] = DEFAULT_SCREEN
    camera: tuple[int, int] = DEFAULT_CAMERA
    config: dict[str, str] = field(default_factory=dict)
    frames: list[SensorFrame] = field(default_factory=list)
    version: int = FORMAT_VERSION

    @property
    def duration_ms(self) -> int:
        return self.frames[-1].t if self.frames else 0


# -- frame builders (quantized) ---------------------------------------------

def touch_frame(t: int, pointer_id: int, phase: TouchPhase | str, x: float, y: float) -> SensorFrame:
    if isinstance(phase, str):
        phase = TouchPhase(phase)
    return SensorFrame(t, TouchSample(pointer_id, phase, q6(x), q6(y)))


def imu_frame(t: int, ax: float, ay: float, az: float, rx: float = 0.0, ry: float = 0.0, rz: float = 0.0) -> SensorFrame:
    return SensorFrame(t, ImuSample(q6(ax), q6(ay), q6(az), q6(rx), q6(ry), q6(rz)))


def face_frame(t: int, fx: float, fy: float, fs: float, fa: float, rotation_class: int | None = None) -> SensorFrame:
    fa = q6(fa)
    if rotation_class is None:
        rotation_class = nearest_rotation_bucket(fa)
    return SensorFrame(t, FaceObservation(True, q6(fx), q6(fy), q6(fs), fa, rotation_class))


def face_none_frame(t: int) -> SensorFrame:
    return SensorFrame(t, FaceObservation.none())


# -- rendering ---------------------------------------------------------------

def render_frame(frame: SensorFrame) -> str:
    p = frame.payload
    if isinstance(p, TouchSample):
        return f"{frame.t} TOUCH {p.pointer_id} {p.phase.value} {_f6(p.x)} {_f6(p.y)}"
    if isinstance(p, ImuSample):
        return (
            f"{frame.t} IMU {_f6(p.ax)} {_f6(p.ay)} {_f6(p.az)} "
            f"{_f6(p.rx)} {_f6(p.ry)} {_f6(p.rz)}"
        )
    if isinstance(p, FaceObservation):
        if not p.detected:
            return f"{frame.t} FACE NONE"
        return (
            f"{frame.t} FACE DET {_f6(p.fx)} {_f6(p.fy)} {_f6(p.fs)} "
            f"{_f6(p.fa)} {p.rotation_class}"
        )
    raise TypeError(f"unknown payload {type(p).__name__}")


def render(trace: Trace) -> str:
    lines = [
        f"HDR version {trace.version}",
        f"HDR screen {trace.screen[0]} {trace.screen[1]}",
        f"HDR camera {trace.camera[0]} {trace.camera[1]}",
    ]
    for key in sorted(trace.config):
        lines.append(f"HDR config {key}={trace.config[key]}")
    lines.extend(render_frame(frame) for frame in trace.frames)
    return "\n".join(lines) + "\n"


# -- parsing -----------------------------------------------------------------

def _parse_int(token: str, what: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", line_no) from None


def _parse_float(token: str, what: str, line_no: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"{what} must be a number, got {token!r}", line_no) from None


def parse_frame_line(line: str, line_no: int = 0) -> SensorFrame:
    tokens = line.split()
    if len(tokens) < 2:
        raise ParseError("frame line needs a timestamp and a channel", line_no)
    t = _parse_int(tokens[0], "timestamp", line_no)
    channel = tokens[1]
    body = tokens[2:]
    if channel == "TOUCH":
        if len(body) != 4:
            raise ParseError("TOUCH needs <id> <phase> <x> <y>", line_no)
        pid = _parse_int(body[0], "pointer id", line_no)
        try:
            phase = TouchPhase(body[1])
        except ValueError:
            raise ParseError(f"unknown touch phase {body[1]!r}", line_no) from None
        x = _parse_float(body[2], "x", line_no)
        y = _parse_float(body[3], "y", line_no)
        return SensorFrame(t, TouchSample(pid, phase, x, y))
    if channel == "IMU":
        if len(body) != 6:
            raise ParseError("IMU needs 6 components", line_no)
        values = [_parse_float(tok, "IMU component", line_no) for tok in body]
        return SensorFrame(t, ImuSample(*values))
    if channel == "FACE":
        if body and body[0] == "NONE" and len(body) == 1:
            return SensorFrame(t, FaceObservation.none())
        if body and body[0] == "DET":
            if len(body) != 6:
                raise ParseError("FACE DET needs <fx> <fy> <fs> <fa> <rot>", line_no)
            fx = _parse_float(body[1], "fx", line_no)
            fy = _parse_float(body[2], "fy", line_no)
            fs = _parse_float(body[3], "fs", line_no)
            fa = _parse_float(body[4], "fa", line_no)
            rot = _parse_int(body[5], "rotation class", line_no)
            return SensorFrame(t, FaceObservation(True, fx, fy, fs, fa, rot))
        raise ParseError("FACE needs NONE or DET ...", line_no)
    raise ParseError(f"unknown channel {channel!r}", line_no)


def parse(text: str, validate: bool = True) -> Trace:
    trace = Trace(config={}, frames=[])
    validator: SequenceValidator | None = None
    seen_frame = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("HDR "):
            if seen_frame:
                raise ParseError("HDR lines must precede all frames", line_no)
            tokens = line.split()
            if len(tokens) < 3:
                raise ParseError("incomplete HDR line", line_no)
            key = tokens[1]
            if key == "version":
                trace.version = _parse_int(tokens[2], "version", line_no)
                if trace.version != FORMAT_VERSION:
                    raise ParseError(f"unsupported format version {trace.version}", line_no)
            elif key in ("screen", "camera"):
                if len(tokens) != 4:
                    raise ParseError(f"HDR {key} needs <w> <h>", line_no)
                dims = (
                    _parse_int(tokens[2], "width", line_no),
                    _parse_int(tokens[3], "height", line_no),
                )
                if dims[0] <= 0 or dims[1] <= 0:
                    raise ParseError(f"{key} dimensions must be positive", line_no)
                setattr(trace, key, dims)
            elif key == "config":
                entry = line.split(None, 2)[2]
                if "=" not in entry:
                    raise ParseError("HDR config needs key=value", line_no)
                k, v = entry.split("=", 1)
                trace.config[k] = v
            else:
                raise ParseError(f"unknown HDR key {key!r}", line_no)
            continue
        frame = parse_frame_line(line, line_no)
        if validate:
            if validator is None:
                validator = SequenceValidator(trace.screen, trace.camera)
            try:
                validator.validate(frame)
            except ValidationError as exc:
                raise ParseError(str(exc), line_no) from exc
        seen_frame = True
        trace.frames.append(frame)
    return trace


def validate_trace(trace: Trace) -> list[str]:
    """Re-validate a trace's frames; returns accumulated warnings."""
    validator = SequenceValidator(trace.screen, trace.camera)
    for frame in trace.frames:
        validator.validate(frame)
    return validator.warnings
