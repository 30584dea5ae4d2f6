"""One-hand navigator: mode locking, zoom/rotate quantization, anchor rules."""

import pytest

from conftest import make_attitude, make_face, make_snapshot
from facefuse.model import TouchPhase, TouchSample
from facefuse.techniques.navigator import OneHandNavigator
from facefuse.touch import TouchPipeline


def step(tech, t, touch, level=2, roll=0.0, fa=0.0, present=True):
    face = make_face(present=present, level=level, fa=fa)
    return tech.step(make_snapshot(t, face=face, attitude=make_attitude(roll=roll), touch=touch))


def finger_down(t=0, pos=(320.0, 568.0)):
    touch = TouchPipeline()
    touch.ingest(TouchSample(0, TouchPhase.BEGAN, *pos), t)
    return touch


def test_face_closer_one_level_zooms_125():
    tech = OneHandNavigator()
    touch = finger_down()
    step(tech, 0, touch, level=3)
    events = step(tech, 100, touch, level=2)
    assert [(e.kind, e.get("factor")) for e in events] == [("ZOOM", 1.25)]
    assert tech.mode == "zoom"
    assert events[0].get("anchor_x") == 320.0


def test_face_away_shrinks():
    tech = OneHandNavigator()
    touch = finger_down()
    step(tech, 0, touch, level=2)
    events = step(tech, 100, touch, level=4)
    assert [e.get("factor") for e in events] == [pytest.approx(0.64)]  # 1.25^-2


def test_roll_36_counter_rotates_in_two_steps():
    tech = OneHandNavigator()
    touch = finger_down()
    step(tech, 0, touch, roll=0.0)
    collected = []
    for t, roll in [(100, 10.0), (200, 15.0), (300, 24.0), (400, 33.0), (500, 36.0)]:
        collected.extend(step(tech, t, touch, roll=roll))
    rotations = [e.get("deg") for e in collected if e.kind == "ROTATE"]
    assert rotations == [-18.0, -36.0]
    assert tech.mode == "rotate"


def test_finger_up_face_motion_is_silent():
    tech = OneHandNavigator()
    empty = TouchPipeline()
    assert step(tech, 0, empty, level=3) == []
    assert step(tech, 100, empty, level=1) == []
    assert step(tech, 200, empty, level=5) == []


def test_release_commits_and_resets():
    tech = OneHandNavigator()
    touch = finger_down()
    step(tech, 0, touch, level=3)
    step(tech, 100, touch, level=2)
    touch.ingest(TouchSample(0, TouchPhase.ENDED, 320.0, 568.0), 150)
    events = step(tech, 167, touch, level=2)
    assert [(e.kind, e.get("factor"), e.get("deg")) for e in events] == [("COMMIT", 1.25, 0.0)]
    assert tech.mode is None and tech.anchor is None


def test_round_trip_commits_identity():
    tech = OneHandNavigator()
    touch = finger_down()
    step(tech, 0, touch, level=3, roll=0.0)
    step(tech, 100, touch, level=2, roll=0.0)
    step(tech, 200, touch, level=3, roll=0.0)  # back to the reference level
    touch.ingest(TouchSample(0, TouchPhase.ENDED, 320.0, 568.0), 250)
    events = step(tech, 267, touch, level=3)
    assert [(e.get("factor"), e.get("deg")) for e in events] == [(1.0, 0.0)]


def test_first_channel_locks_mode():
    tech = OneHandNavigator()
    touch = finger_down()
    step(tech, 0, touch, level=3, roll=0.0)
    step(tech, 100, touch, level=2, roll=0.0)  # zoom locks first
    events = step(tech, 200, touch, level=2, roll=36.0)
    assert [e for e in events if e.kind == "ROTATE"] == []
    assert tech.mode == "zoom"


def test_pan_when_no_mode_locked():
    tech = OneHandNavigator()
    touch = finger_down(pos=(300.0, 500.0))
    step(tech, 0, touch)
    touch.ingest(TouchSample(0, TouchPhase.MOVED, 310.0, 520.0), 50)
    events = step(tech, 67, touch)
    assert [(e.kind, e.get("dx"), e.get("dy")) for e in events] == [("PAN", 10.0, 20.0)]


def test_slide_during_locked_mode_moves_anchor_only():
    tech = OneHandNavigator()
    touch = finger_down(pos=(300.0, 500.0))
    step(tech, 0, touch, level=3)
    step(tech, 100, touch, level=2)  # zoom locked
    touch.ingest(TouchSample(0, TouchPhase.MOVED, 350.0, 540.0), 150)
    events = step(tech, 167, touch, level=2)
    assert [e for e in events if e.kind == "PAN"] == []
    assert tech.anchor == (350.0, 540.0)


def test_view_transform_composes_exactly_across_strokes():
    tech = OneHandNavigator()
    # stroke 1: zoom in one level, commit
    touch = finger_down(t=0)
    step(tech, 0, touch, level=3)
    step(tech, 100, touch, level=2)
    touch.ingest(TouchSample(0, TouchPhase.ENDED, 320.0, 568.0), 150)
    step(tech, 167, touch)
    assert tech.view_zoom == 1.25
    # stroke 2: zoom out one level, commit: back to exactly 1.0
    touch2 = finger_down(t=300)
    step(tech, 300, touch2, level=2)
    step(tech, 400, touch2, level=3)
    touch2.ingest(TouchSample(0, TouchPhase.ENDED, 320.0, 568.0), 450)
    events = step(tech, 467, touch2)
    assert tech.view_zoom == 1.0
    assert [e.get("zoom") for e in events if e.kind == "COMMIT"] == [1.0]


def test_face_absent_at_grab_disables_zoom_rotate_but_pans():
    tech = OneHandNavigator()
    touch = finger_down(pos=(300.0, 500.0))
    step(tech, 0, touch, present=False)
    events = step(tech, 100, touch, level=0, roll=40.0, present=True)
    assert [e for e in events if e.kind in ("ZOOM", "ROTATE")] == []
    touch.ingest(TouchSample(0, TouchPhase.MOVED, 320.0, 500.0), 150)
    events = step(tech, 167, touch, present=True)
    assert [e.kind for e in events] == ["PAN"]
