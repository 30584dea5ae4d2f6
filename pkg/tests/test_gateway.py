"""Gateway: streaming/batch equivalence, protocol errors, session isolation."""

import asyncio

from facefuse.config import SessionConfig
from facefuse.gateway import StreamSession, start_tcp_server
from facefuse.replay import replay
from facefuse.scenarios import generate
from facefuse.trace import render


async def _stream_lines(host, port, lines):
    reader, writer = await asyncio.open_connection(host, port)
    writer.write(("\n".join(lines) + "\n").encode())
    await writer.drain()
    writer.write_eof()
    data = await reader.read()
    writer.close()
    await writer.wait_closed()
    return data.decode().splitlines()


def _serve_and_stream(lines, config=None):
    async def main():
        server = await start_tcp_server(config or SessionConfig())
        host, port = server.sockets[0].getsockname()[:2]
        try:
            return await _stream_lines(host, port, lines)
        finally:
            server.close()
            await server.wait_closed()

    return asyncio.run(main())


def test_streamed_menu_dwell_equals_batch_replay():
    trace = generate("menu_dwell")
    batch = replay(trace).splitlines()
    out = _serve_and_stream(render(trace).splitlines())
    evt = [line for line in out if " EVT " in line]
    assert evt == batch
    assert any("SELECTED" in line for line in evt)


def test_state_lines_present_at_20hz():
    trace = generate("tilt_to_3d")
    out = _serve_and_stream(render(trace).splitlines())
    states = [line for line in out if line.startswith("STATE ")]
    # 1500 ms of trace + 600 ms tail at 20 Hz
    assert len(states) == (1500 + 600) // 50 + 1
    times = [int(line.split()[1]) for line in states]
    assert times == sorted(times)
    assert all(t % 50 == 0 for t in times)


def test_state_menu_item_matches_last_highlight():
    trace = generate("menu_dwell")
    out = _serve_and_stream(render(trace).splitlines())
    last_highlight = None
    for line in out:
        parts = line.split()
        if " EVT " in line and "HIGHLIGHT" in line:
            last_highlight = int([p for p in parts if p.startswith("item=")][0][5:])
        elif line.startswith("STATE ") and last_highlight is not None:
            item = [p for p in parts if p.startswith("menu_item=")][0][10:]
            assert item == str(last_highlight)


def _field(line: str, key: str) -> str | None:
    for part in line.split():
        if part.startswith(key + "="):
            return part[len(key) + 1 :]
    return None


def test_state_readouts_track_their_latest_events():
    # view/zoom/multiplier in STATE always equal the last emitted EVT value
    cases = [
        ("tilt_to_3d", "map_viewer", ("VIEW_MODE",), "mode", "view", False),
        ("zoom_in", "one_hand_navigator", ("ZOOM", "COMMIT"), "zoom", "zoom", True),
        ("rotate_device", "one_hand_navigator", ("ROTATE", "COMMIT"), "rotation", "rotation", True),
        ("face_approach", "multi_scale_scroll", ("RATE",), "multiplier", "multiplier", True),
    ]
    for scenario, technique, kinds, payload_key, state_key, numeric in cases:
        out = _serve_and_stream(render(generate(scenario)).splitlines())
        last: str | None = None
        checked = 0
        for line in out:
            tokens = line.split()
            if len(tokens) >= 4 and tokens[1] == "EVT" and tokens[2] == technique and tokens[3] in kinds:
                last = _field(line, payload_key)
            elif line.startswith("STATE ") and last is not None:
                got = _field(line, state_key)
                assert got is not None
                if numeric:
                    assert float(got) == float(last), (
                        f"{scenario}: STATE {state_key}={got} vs last EVT {payload_key}={last}"
                    )
                else:
                    assert got == last
                checked += 1
        assert checked > 0, f"{scenario}: no STATE lines after the first {kinds}"


def test_garbage_line_yields_err_parse_and_close():
    out = _serve_and_stream(["0 IMU 0 0 -1 0 0 0", "hello world"])
    assert any(line.startswith("ERR parse") for line in out)


def test_validation_error_yields_err_validation():
    out = _serve_and_stream(["100 IMU 0 0 -1 0 0 0", "50 IMU 0 0 -1 0 0 0"])
    assert any(line.startswith("ERR validation") for line in out)


def test_end_command_flushes_like_eof():
    trace = generate("phone_swipe")
    lines = render(trace).splitlines() + ["END"]

    async def main():
        server = await start_tcp_server(SessionConfig())
        host, port = server.sockets[0].getsockname()[:2]
        try:
            reader, writer = await asyncio.open_connection(host, port)
            writer.write(("\n".join(lines) + "\n").encode())
            await writer.drain()
            data = await reader.read()  # server closes after END
            writer.close()
            await writer.wait_closed()
            return data.decode().splitlines()
        finally:
            server.close()
            await server.wait_closed()

    out = asyncio.run(main())
    evt = [line for line in out if " EVT " in line]
    assert evt == replay(trace).splitlines()


def test_two_clients_are_isolated():
    good = render(generate("menu_dwell")).splitlines()

    async def main():
        server = await start_tcp_server(SessionConfig())
        host, port = server.sockets[0].getsockname()[:2]
        try:
            bad_task = asyncio.create_task(_stream_lines(host, port, ["garbage"]))
            good_task = asyncio.create_task(_stream_lines(host, port, good))
            bad_out, good_out = await asyncio.gather(bad_task, good_task)
            return bad_out, good_out
        finally:
            server.close()
            await server.wait_closed()

    bad_out, good_out = asyncio.run(main())
    assert any(line.startswith("ERR parse") for line in bad_out)
    assert any("SELECTED" in line for line in good_out)
    assert not any(line.startswith("ERR") for line in good_out)


def test_full_gateway_output_is_deterministic():
    # Not just EVT lines: STATE lines too, byte for byte across runs.
    lines = render(generate("rotate_device")).splitlines()
    first = _serve_and_stream(lines)
    second = _serve_and_stream(lines)
    assert first == second


def test_websocket_bridge_mirrors_the_line_protocol():
    import websockets
    from facefuse.gateway import start_ws_server

    trace = generate("menu_dwell")
    batch = replay(trace).splitlines()

    async def main():
        server = await start_ws_server(SessionConfig(), port=0)
        port = list(server.sockets)[0].getsockname()[1]
        received = []
        try:
            async with websockets.connect(f"ws://127.0.0.1:{port}") as ws:
                for line in render(trace).splitlines():
                    await ws.send(line)
                await ws.send("END")
                try:
                    while True:
                        received.append(await asyncio.wait_for(ws.recv(), timeout=5))
                except (websockets.ConnectionClosed, asyncio.TimeoutError):
                    pass
        finally:
            server.close()
            await server.wait_closed()
        return received

    received = asyncio.run(main())
    assert [l for l in received if " EVT " in l] == batch


def test_stream_session_rejects_header_after_frames():
    session = StreamSession(SessionConfig())
    session.feed_line("0 IMU 0 0 -1 0 0 0")
    import pytest
    from facefuse.gateway import ProtocolError

    with pytest.raises(ProtocolError):
        session.feed_line("HDR screen 640 1136")
