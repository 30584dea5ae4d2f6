"""Shared helpers for technique state machines."""

from __future__ import annotations

from ..model import Direction


def lateral_direction(image_sign: int, mirror_camera: bool) -> Direction:
    """Map an image-space lateral sign to a user-facing direction.

    Image sign +1 means "face center in the right half / face angle
    clockwise". With the default mirrored front camera a right head lean
    lands on the image's right half, so +1 reads as RIGHT; with an
    unmirrored camera the same image motion is a left lean. Every
    face-derived lateral direction funnels through here so the
    mirror_camera flag flips them all consistently.
    """
    if image_sign == 0:
        raise ValueError("lateral_direction needs a nonzero sign")
    positive = image_sign > 0
    if not mirror_camera:
        positive = not positive
    return Direction.RIGHT if positive else Direction.LEFT


def quantize_level(value: float, step: float, prev_level: int, margin: float) -> int:
    """Round value/step to an integer level with hysteresis.

    The level changes only once the value leaves the previous level's band
    (half a step either side of its center) by more than margin.
    """
    import math

    if abs(value - prev_level * step) <= step / 2.0 + margin:
        return prev_level
    return int(math.floor(value / step + 0.5))
