"""Deterministic offline replay: trace in, event log (and debug dumps) out.

The engine ticks from t=0 through the last frame plus a fixed tail so
time-driven machines (menu dwell, flick grace) flush. Identical traces and
configs produce byte-identical logs.
"""

from __future__ import annotations

from .config import SessionConfig
from .engine import FusedSnapshot, FusionEngine, TechniqueEvent
from .techniques import build_engine
from .trace import Trace


def iter_ticks(engine: FusionEngine, trace: Trace, tail_ms: int | None = None):
    """Yield (snapshot, events) per tick over the trace plus the tail."""
    if not trace.frames:
        return
    tail = engine.config.tail_ms if tail_ms is None else tail_ms
    end_t = trace.frames[-1].t + tail
    frames = trace.frames
    i = 0
    while engine.next_tick_time <= end_t:
        t_tick = engine.next_tick_time
        batch = []
        while i < len(frames) and frames[i].t <= t_tick:
            batch.append(frames[i])
            i += 1
        yield engine.tick(batch)


def replay_events(trace: Trace, config: SessionConfig | None = None) -> list[TechniqueEvent]:
    engine = build_engine(config or SessionConfig())
    events: list[TechniqueEvent] = []
    for _snapshot, tick_events in iter_ticks(engine, trace):
        events.extend(tick_events)
    return events


def render_event_log(events: list[TechniqueEvent]) -> str:
    if not events:
        return ""
    return "\n".join(event.render() for event in events) + "\n"


def replay(trace: Trace, config: SessionConfig | None = None) -> str:
    """Run the full engine over a trace; returns the event log text."""
    return render_event_log(replay_events(trace, config))


def _fmt_opt(value: float | None, spec: str) -> str:
    return "NA" if value is None else format(value, spec)


def snapshot_line(snap: FusedSnapshot) -> str:
    """Human-readable per-tick fused state (the debug dump)."""
    parts = [str(snap.t)]
    if snap.face.present:
        parts.append(
            "face=PRESENT"
            f" fx={snap.face.fx:.0f} fy={snap.face.fy:.0f}"
            f" fs={snap.face.fs:.0f} fa={snap.face.fa:.1f}"
            f" level={snap.face.scale_level}"
        )
    else:
        parts.append("face=ABSENT")
    att = snap.attitude
    if att is None:
        parts.append("tilt=NA roll=NA")
    else:
        parts.append(f"tilt={att.tilt_deg:.1f} roll={att.roll_deg:.1f}")
        if not att.reliable:
            parts.append("attitude=UNRELIABLE")
    pointer = snap.touch.lowest_active_pointer()
    if pointer is None:
        parts.append("touch=UP")
    else:
        x, y = snap.touch.position(pointer)
        parts.append(f"touch=DOWN x={x:.0f} y={y:.0f}")
    if snap.face_event is not None:
        parts.append(f"face_event={snap.face_event.value}")
    if snap.flick is not None:
        parts.append(f"flick={snap.flick.direction.value}")
    if snap.swipe is not None:
        parts.append(f"swipe={snap.swipe.direction.value}")
    return " ".join(parts)


def inspect_lines(trace: Trace, config: SessionConfig | None = None):
    """Per-tick debug dump lines for a whole trace."""
    engine = build_engine(config or SessionConfig())
    for snapshot, _events in iter_ticks(engine, trace):
        yield snapshot_line(snapshot)


def state_line(t: int, engine: FusionEngine, snap: FusedSnapshot) -> str:
    """Gateway STATE line: latest fused values plus per-technique readouts.

    Values always agree with the most recent emitted events (they are read
    from the same state machines that emitted them).
    """
    parts = [f"STATE {t}"]
    if snap.face.present:
        parts.append(
            f"face=PRESENT fx={snap.face.fx:.1f} fy={snap.face.fy:.1f}"
            f" fs={snap.face.fs:.1f} fa={snap.face.fa:.1f} level={snap.face.scale_level}"
        )
    else:
        parts.append("face=ABSENT")
    att = snap.attitude
    if att is None:
        parts.append("tilt=NA roll=NA")
    else:
        parts.append(f"tilt={att.tilt_deg:.1f} roll={att.roll_deg:.1f}")
    parts.append("touch=" + ("DOWN" if snap.touch.is_down() else "UP"))
    techs = engine.techniques
    scroll = techs.get("multi_scale_scroll")
    if scroll is not None:
        parts.append(f"multiplier={scroll.multiplier:g}")
    text = techs.get("text_edit")
    if text is not None:
        parts.append(f"cursor={text.cursor}")
    viewer = techs.get("map_viewer")
    if viewer is not None:
        parts.append(f"view={'ThreeD' if viewer.three_d else 'TwoD'} glimpse={viewer.glimpse}")
    menu = techs.get("touch_free_menu")
    if menu is not None:
        item = menu.highlighted if menu.highlighted is not None else "NA"
        parts.append(f"menu_item={item} dwell_ms={menu.dwell_ms(t)}")
    flick = techs.get("expressive_flick")
    if flick is not None:
        parts.append(f"flick_class={flick.last_class or 'NA'}")
    nav = techs.get("one_hand_navigator")
    if nav is not None:
        parts.append(f"zoom={nav.current_view_zoom:g} rotation={nav.current_view_rotation_deg:g}")
    return " ".join(parts)
