"""Local streaming gateway: live sessions over newline-delimited text.

A client sends trace-format frame lines; the server replies with the same
EVT lines batch replay would produce, plus STATE snapshot lines at the
configured cadence (default 20 Hz). One engine per connection; sessions are
fully isolated. EOF or an `END` line flushes the tick tail. An optional
WebSocket endpoint mirrors the exact line protocol for browser clients.
"""

from __future__ import annotations

import asyncio

from .config import SessionConfig
from .engine import FusionEngine
from .model import SensorFrame, SequenceValidator, ValidationError
from .replay import state_line
from .techniques import build_engine
from .trace import FORMAT_VERSION, ParseError, parse_frame_line


class ProtocolError(ValueError):
    pass


class StreamSession:
    """Incremental replay with the exact tick semantics of batch replay."""

    def __init__(self, config: SessionConfig | None = None) -> None:
        self.config = config or SessionConfig()
        self.engine: FusionEngine = build_engine(self.config)
        self._screen = self.config.screen
        self._camera = self.config.camera
        self._validator: SequenceValidator | None = None
        self._pending: list[SensorFrame] = []
        self._last_frame_t: int | None = None
        self._state_period = max(1, 1000 // self.config.state_hz)
        self._next_state_t = 0
        self._finished = False

    def _run_tick(self) -> list[str]:
        t_tick = self.engine.next_tick_time
        batch = []
        while self._pending and self._pending[0].t <= t_tick:
            batch.append(self._pending.pop(0))
        snapshot, events = self.engine.tick(batch)
        out = [event.render() for event in events]
        if t_tick >= self._next_state_t:
            out.append(state_line(t_tick, self.engine, snapshot))
            while self._next_state_t <= t_tick:
                self._next_state_t += self._state_period
        return out

    def feed_line(self, line: str) -> list[str]:
        """Process one protocol line; returns reply lines.

        Raises ParseError / ValidationError / ProtocolError on bad input.
        """
        if self._finished:
            raise ProtocolError("session already finished")
        line = line.strip()
        if not line or line.startswith("#"):
            return []
        if line.startswith("HDR "):
            if self._validator is not None:
                raise ProtocolError("HDR lines must precede all frames")
            tokens = line.split()
            key = tokens[1] if len(tokens) > 1 else ""
            if key == "version":
                if len(tokens) != 3 or tokens[2] != str(FORMAT_VERSION):
                    raise ProtocolError(f"unsupported version line: {line}")
            elif key in ("screen", "camera"):
                if len(tokens) != 4:
                    raise ProtocolError(f"HDR {key} needs <w> <h>")
                try:
                    dims = (int(tokens[2]), int(tokens[3]))
                except ValueError:
                    raise ProtocolError(f"bad {key} dimensions") from None
                if key == "screen":
                    self._screen = dims
                else:
                    self._camera = dims
            elif key == "config":
                pass  # generator metadata; engine config comes from the server
            else:
                raise ProtocolError(f"unknown HDR key {key!r}")
            return []
        frame = parse_frame_line(line, 0)
        if self._validator is None:
            self._validator = SequenceValidator(self._screen, self._camera)
        self._validator.validate(frame)
        out: list[str] = []
        while self.engine.next_tick_time < frame.t:
            out.extend(self._run_tick())
        self._pending.append(frame)
        self._last_frame_t = frame.t
        return out

    def finish(self) -> list[str]:
        """Flush ticks through the tail; idempotent."""
        if self._finished:
            return []
        self._finished = True
        if self._last_frame_t is None:
            return []
        out: list[str] = []
        end_t = self._last_frame_t + self.config.tail_ms
        while self.engine.next_tick_time <= end_t:
            out.extend(self._run_tick())
        return out


async def _session_loop(config: SessionConfig, read_line, write_lines) -> None:
    """Transport-agnostic session pump: read_line() -> str | None (EOF)."""
    session = StreamSession(config)
    try:
        while True:
            line = await read_line()
            if line is None:
                await write_lines(session.finish())
                return
            line = line.strip()
            if line == "END":
                await write_lines(session.finish())
                return
            try:
                await write_lines(session.feed_line(line))
            except ParseError as exc:
                await write_lines([f"ERR parse {exc}"])
                return
            except ValidationError as exc:
                await write_lines([f"ERR validation {exc}"])
                return
            except ProtocolError as exc:
                await write_lines([f"ERR protocol {exc}"])
                return
    except (ConnectionResetError, BrokenPipeError):
        return


async def _handle_tcp(reader: asyncio.StreamReader, writer: asyncio.StreamWriter,
                      config: SessionConfig) -> None:
    async def read_line() -> str | None:
        data = await reader.readline()
        if not data:
            return None
        return data.decode("utf-8", errors="replace")

    async def write_lines(lines: list[str]) -> None:
        if not lines:
            return
        writer.write(("\n".join(lines) + "\n").encode("utf-8"))
        await writer.drain()

    try:
        await _session_loop(config, read_line, write_lines)
    finally:
        try:
            writer.close()
            await writer.wait_closed()
        except (ConnectionResetError, BrokenPipeError):
            pass


async def start_tcp_server(config: SessionConfig, host: str = "127.0.0.1", port: int = 0):
    async def handler(reader, writer):
        await _handle_tcp(reader, writer, config)

    return await asyncio.start_server(handler, host, port)


async def start_ws_server(config: SessionConfig, host: str = "127.0.0.1", port: int = 0):
    """WebSocket mirror of the line protocol (one text message per line)."""
    import websockets

    async def handler(ws):
        queue: asyncio.Queue[str | None] = asyncio.Queue()

        async def pump():
            try:
                async for message in ws:
                    for raw in str(message).splitlines():
                        await queue.put(raw)
            except websockets.ConnectionClosed:
                pass
            await queue.put(None)

        pump_task = asyncio.ensure_future(pump())

        async def read_line() -> str | None:
            return await queue.get()

        async def write_lines(lines: list[str]) -> None:
            for line in lines:
                await ws.send(line)

        try:
            await _session_loop(config, read_line, write_lines)
        finally:
            pump_task.cancel()
            await ws.close()

    return await websockets.serve(handler, host, port)


async def serve_forever(config: SessionConfig, host: str, port: int,
                        ws_port: int | None = None) -> None:
    server = await start_tcp_server(config, host, port)
    addr = server.sockets[0].getsockname()
    print(f"facefuse gateway listening on {addr[0]}:{addr[1]}", flush=True)
    if ws_port is not None:
        await start_ws_server(config, host, ws_port)
        print(f"facefuse gateway websocket on ws://{host}:{ws_port}", flush=True)
    async with server:
        await server.serve_forever()


def serve(config: SessionConfig, host: str = "127.0.0.1", port: int = 7710,
          ws_port: int | None = None) -> None:
    asyncio.run(serve_forever(config, host, port, ws_port))
