"""Frame validation: bounds, monotonic time, touch phase order."""

import pytest
from hypothesis import given, strategies as st

from facefuse.model import (
    BadPhase,
    FaceObservation,
    ImuSample,
    NonMonotonicTime,
    OutOfRange,
    SensorFrame,
    SequenceValidator,
    TouchPhase,
    TouchSample,
    validate_frame,
)


def imu(t, ax, ay, az, rx=0.0, ry=0.0, rz=0.0):
    return SensorFrame(t, ImuSample(ax, ay, az, rx, ry, rz))


def touch(t, pid, phase, x, y):
    return SensorFrame(t, TouchSample(pid, phase, x, y))


def test_rest_pose_imu_is_valid():
    frame = imu(0, 0.0, 0.0, -1.0)
    assert validate_frame(frame) is frame


def test_touch_beyond_screen_width_rejected():
    with pytest.raises(OutOfRange):
        validate_frame(touch(0, 0, TouchPhase.BEGAN, 700.0, 100.0))


def test_negative_face_scale_rejected():
    frame = SensorFrame(0, FaceObservation(True, 240.0, 320.0, -3.0, 0.0, 0))
    with pytest.raises(OutOfRange):
        validate_frame(frame)


def test_face_bounds_and_rotation_class():
    ok = SensorFrame(0, FaceObservation(True, 240.0, 320.0, 100.0, 30.0, 45))
    validate_frame(ok)
    bad_bucket = SensorFrame(0, FaceObservation(True, 240.0, 320.0, 100.0, 30.0, 0))
    with pytest.raises(OutOfRange):
        validate_frame(bad_bucket)
    off_image = SensorFrame(0, FaceObservation(True, 480.0, 320.0, 100.0, 0.0, 0))
    with pytest.raises(OutOfRange):
        validate_frame(off_image)


def test_non_finite_imu_rejected():
    with pytest.raises(OutOfRange):
        validate_frame(imu(0, float("nan"), 0.0, -1.0))


def test_negative_timestamp_rejected():
    with pytest.raises(OutOfRange):
        validate_frame(imu(-5, 0.0, 0.0, -1.0))


class TestSequence:
    def test_time_must_not_go_backwards(self):
        v = SequenceValidator()
        v.validate(imu(100, 0, 0, -1))
        with pytest.raises(NonMonotonicTime):
            v.validate(imu(99, 0, 0, -1))

    def test_same_timestamp_channel_order(self):
        v = SequenceValidator()
        v.validate(imu(100, 0, 0, -1))
        # face after IMU at the same t is fine; touch after face is not
        v.validate(SensorFrame(100, FaceObservation.none()))
        with pytest.raises(NonMonotonicTime):
            v.validate(touch(100, 0, TouchPhase.BEGAN, 10.0, 10.0))

    def test_phase_order(self):
        v = SequenceValidator()
        with pytest.raises(BadPhase):
            v.validate(touch(0, 0, TouchPhase.MOVED, 10.0, 10.0))
        v.validate(touch(1, 0, TouchPhase.BEGAN, 10.0, 10.0))
        with pytest.raises(BadPhase):
            v.validate(touch(2, 0, TouchPhase.BEGAN, 10.0, 10.0))
        v.validate(touch(3, 0, TouchPhase.MOVED, 12.0, 10.0))
        v.validate(touch(4, 0, TouchPhase.ENDED, 12.0, 10.0))
        with pytest.raises(BadPhase):
            v.validate(touch(5, 0, TouchPhase.ENDED, 12.0, 10.0))

    def test_imu_rate_warning(self):
        v = SequenceValidator()
        v.validate(imu(0, 0, 0, -1))
        v.validate(imu(100, 0, 0, -1))  # 10 Hz, below the 30 Hz floor
        assert v.warnings


@st.composite
def legal_touch_sequences(draw):
    """Random legal per-pointer phase sequences on a shared clock."""
    events = []
    t = 0
    down: set[int] = set()
    for _ in range(draw(st.integers(min_value=1, max_value=30))):
        t += draw(st.integers(min_value=1, max_value=40))
        candidates = ["begin"] if len(down) < 3 else []
        if down:
            candidates.extend(["move", "end", "cancel"])
        action = draw(st.sampled_from(candidates))
        if action == "begin":
            pid = draw(st.integers(min_value=0, max_value=4).filter(lambda p: p not in down))
            down.add(pid)
            events.append(touch(t, pid, TouchPhase.BEGAN, 10.0, 10.0))
        else:
            pid = draw(st.sampled_from(sorted(down)))
            phase = {
                "move": TouchPhase.MOVED,
                "end": TouchPhase.ENDED,
                "cancel": TouchPhase.CANCELLED,
            }[action]
            if action != "move":
                down.discard(pid)
            events.append(touch(t, pid, phase, 10.0, 10.0))
    return events


@given(legal_touch_sequences())
def test_accepted_sequences_are_monotone_and_legal(events):
    v = SequenceValidator()
    last = -1
    for frame in events:
        v.validate(frame)
        assert frame.t >= last
        last = frame.t
