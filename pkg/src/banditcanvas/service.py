"""Live drawing service: session lifecycle, pointer ingestion, state diffs.

The service hosts one drawing session per connected client over a WebSocket
carrying newline-free JSON messages (schema in docs/protocol.md). All
protocol logic lives in :class:`ClientHandler`, a plain synchronous object
that maps one client message to a list of server messages — the aiohttp
layer only moves bytes, so the protocol is unit-testable without sockets
and the server keeps no hidden state beyond the session itself.

Dwell timing uses the pointer samples' own timestamps, never the server
clock, so a recorded pointer trace replays to an identical session.
"""

from __future__ import annotations

import json
import logging
import uuid
from enum import Enum

from aiohttp import WSMsgType, web

from .agent import Palette
from .calibration import (
    CalibrationError,
    PointerSample,
    calibrate,
    calibration_from_fields,
    to_cell,
    z_to_opacity,
)
from .grid import Cell
from .session import (
    DrawingSession,
    SessionConfig,
    SessionEvent,
    session_log_lines,
)

logger = logging.getLogger(__name__)

DEFAULT_PORT = 8787
DEFAULT_DWELL_MS = 2000
DEFAULT_EPSILON = 0.2


class Phase(str, Enum):
    CALIBRATING = "calibrating"
    DRAWING = "drawing"
    COMPLETE = "complete"


def corner_cells(config: SessionConfig) -> list[Cell]:
    """The three calibration panels, by corner index 0..2."""
    dims = config.dims
    return [(0, 0), (dims.width - 1, 0), (0, dims.height - 1)]


class ProtocolError(Exception):
    def __init__(self, code: str, text: str):
        super().__init__(text)
        self.code = code
        self.text = text


class LiveSession:
    """One client's drawing session plus its wire-protocol state machine.

    Phase moves strictly Calibrating -> Drawing -> Complete. A client
    disconnect freezes the object as-is; it stays exportable.
    """

    def __init__(self, config: SessionConfig, calibration=None, dwell_ms: int | None = None):
        self.id = uuid.uuid4().hex
        self.config = config
        self.dwell_ms = config.dwell_ms if dwell_ms is None else dwell_ms
        self.session = DrawingSession(config)
        self.palette = Palette(config.palette_size)
        self.calibration = calibration
        self.phase = Phase.DRAWING if calibration is not None else Phase.CALIBRATING
        self.seq = 0
        self.current_cell: Cell | None = None
        self.last_change_t: float | None = None
        self._corner_samples: dict[int, PointerSample] = {}

    # -- message builders ----------------------------------------------------

    def _emit(self, msg_type: str, **payload) -> dict:
        message = {"type": msg_type, "session_id": self.id, "seq": self.seq}
        message.update(payload)
        self.seq += 1
        return message

    def _paint_payload(self, arm: int, opacity: int) -> dict:
        return {"arm": arm, "opacity": opacity, "color": self.palette.hex(arm)}

    def _stats(self) -> dict:
        return self._emit(
            "session_stats",
            step=len(self.session.events),
            iterations=self.config.iterations,
            mode=self.config.mode.value,
            phase=self.phase.value,
        )

    def _ring(self, msg_type: str, event: SessionEvent) -> dict:
        return self._emit(
            msg_type,
            center=list(event.center),
            paints={
                offset.key(): self._paint_payload(arm, event.opacity)
                for offset, arm in event.proposals.items()
            },
        )

    # -- protocol steps ------------------------------------------------------

    def hello(self) -> list[dict]:
        return [self._stats()]

    def add_calibration_point(self, corner: int, sample: PointerSample) -> list[dict]:
        if self.phase is not Phase.CALIBRATING:
            raise ProtocolError("phase", f"cannot calibrate while {self.phase.value}")
        if corner not in (0, 1, 2):
            raise ProtocolError("calibration", f"corner must be 0..2, got {corner}")
        self._corner_samples[corner] = sample
        if len(self._corner_samples) < 3:
            return []
        pairs = [
            (self._corner_samples[i], cell)
            for i, cell in enumerate(corner_cells(self.config))
        ]
        try:
            self.calibration = calibrate(pairs)
        except CalibrationError as exc:
            self._corner_samples.clear()  # client must redo all three corners
            raise ProtocolError("calibration", str(exc)) from exc
        self.phase = Phase.DRAWING
        return [self._stats()]

    def ingest_pointer(self, sample: PointerSample) -> list[dict]:
        """Debounce a raw sample to cell granularity and step the session.

        A cell change steps the movement path (possible ink + new ring);
        sitting on one cell past the dwell threshold steps the stay path
        (re-roll). Samples inside the current cell below the threshold
        produce no messages.
        """
        if self.phase is not Phase.DRAWING:
            raise ProtocolError("phase", f"cannot draw while {self.phase.value}")
        cell = to_cell(self.calibration, sample, self.config.dims)
        opacity = z_to_opacity(self.calibration, sample.z)

        if self.current_cell is None:
            event = self.session.step(cell, opacity, timestamp=sample.t)
            self.current_cell = cell
            self.last_change_t = sample.t
            return [self._ring("proposals", event), *self._maybe_complete()]

        if cell != self.current_cell:
            event = self.session.step(cell, opacity, timestamp=sample.t)
            self.current_cell = cell
            self.last_change_t = sample.t
            messages = []
            if event.inked is not None:
                messages.append(
                    self._emit(
                        "inked",
                        cell=list(event.inked),
                        paint=self._paint_payload(
                            event.inked_paint.arm, event.inked_paint.opacity
                        ),
                    )
                )
            messages.append(self._ring("proposals", event))
            messages.extend(self._maybe_complete())
            return messages

        if sample.t - self.last_change_t >= self.dwell_ms:
            event = self.session.step(cell, opacity, timestamp=sample.t)
            self.last_change_t = sample.t
            return [self._ring("reroll", event), *self._maybe_complete()]
        return []

    def _maybe_complete(self) -> list[dict]:
        if self.session.done:
            self.phase = Phase.COMPLETE
            return [self._stats()]
        return []

    def export(self) -> tuple[str, str]:
        """(JSONL event log, CSV grid dump); only once the session completed."""
        if self.phase is not Phase.COMPLETE:
            raise ProtocolError("phase", f"cannot export while {self.phase.value}")
        log_text = "\n".join(session_log_lines(self.session)) + "\n"
        return log_text, self.session.canvas.export_csv()


class ClientHandler:
    """Per-connection dispatcher: one client drives at most one session."""

    def __init__(self, service: "DrawingService"):
        self.service = service
        self.live: LiveSession | None = None

    def handle(self, message: dict) -> list[dict]:
        try:
            msg_type = message.get("type")
            if msg_type == "start_session":
                return self._start_session(message)
            if self.live is None:
                raise ProtocolError("protocol", "no session started")
            if msg_type == "calibration_point":
                return self.live.add_calibration_point(
                    message.get("corner", -1),
                    PointerSample.from_json(message["sample"]),
                )
            if msg_type == "pointer_move":
                return self.live.ingest_pointer(PointerSample.from_json(message["sample"]))
            raise ProtocolError("protocol", f"unknown message type {msg_type!r}")
        except ProtocolError as exc:
            return [self._error(exc.code, exc.text)]
        except (KeyError, TypeError, ValueError) as exc:
            return [self._error("bad_message", f"{type(exc).__name__}: {exc}")]

    def _start_session(self, message: dict) -> list[dict]:
        if self.live is not None:
            raise ProtocolError("protocol", "session already started on this connection")
        try:
            config = self.service.build_config(message.get("config") or {})
        except (TypeError, ValueError) as exc:
            raise ProtocolError("bad_config", str(exc)) from exc
        calibration = None
        if message.get("calibration"):
            try:
                calibration = calibration_from_fields(message["calibration"])
            except (KeyError, ValueError) as exc:
                raise ProtocolError("bad_config", f"bad calibration: {exc}") from exc
        self.live = LiveSession(config, calibration=calibration)
        self.service.sessions[self.live.id] = self.live
        return self.live.hello()

    def _error(self, code: str, text: str) -> dict:
        if self.live is not None:
            return self.live._emit("error", code=code, text=text)
        return {"type": "error", "session_id": None, "seq": 0, "code": code, "text": text}


class DrawingService:
    """aiohttp application hosting concurrent, isolated drawing sessions.

    Routes: GET /health, GET /ws (the session socket), and
    GET /sessions/{id}/log, GET /sessions/{id}/grid for export downloads.
    """

    def __init__(self, dwell_ms: int = DEFAULT_DWELL_MS, epsilon: float = DEFAULT_EPSILON):
        self.dwell_ms = dwell_ms
        self.epsilon = epsilon
        self.sessions: dict[str, LiveSession] = {}

    def build_config(self, fields: dict) -> SessionConfig:
        """Fill client-omitted config fields from the service defaults."""
        merged = {"dwell_ms": self.dwell_ms, "epsilon": self.epsilon}
        merged.update(fields)
        return SessionConfig(**merged)

    def build_app(self) -> web.Application:
        app = web.Application()
        app.router.add_get("/health", self.handle_health)
        app.router.add_get("/ws", self.handle_ws)
        app.router.add_get("/sessions/{session_id}/log", self.handle_export_log)
        app.router.add_get("/sessions/{session_id}/grid", self.handle_export_grid)
        return app

    async def handle_health(self, request: web.Request) -> web.Response:
        by_phase: dict[str, int] = {}
        for live in self.sessions.values():
            by_phase[live.phase.value] = by_phase.get(live.phase.value, 0) + 1
        return web.json_response({"status": "ok", "sessions": by_phase})

    async def handle_ws(self, request: web.Request) -> web.WebSocketResponse:
        ws = web.WebSocketResponse()
        await ws.prepare(request)
        handler = ClientHandler(self)
        try:
            async for raw in ws:
                if raw.type != WSMsgType.TEXT:
                    continue
                try:
                    message = json.loads(raw.data)
                except json.JSONDecodeError:
                    message = {"type": "invalid"}
                for reply in handler.handle(message):
                    await ws.send_str(json.dumps(reply, separators=(",", ":")))
        finally:
            # Disconnects freeze the session; it stays available for export.
            if handler.live is not None:
                logger.info(
                    "client left session %s at step %d (%s)",
                    handler.live.id,
                    len(handler.live.session.events),
                    handler.live.phase.value,
                )
        return ws

    def _get_session(self, request: web.Request) -> LiveSession:
        live = self.sessions.get(request.match_info["session_id"])
        if live is None:
            raise web.HTTPNotFound(text="unknown session")
        return live

    async def handle_export_log(self, request: web.Request) -> web.Response:
        live = self._get_session(request)
        try:
            log_text, _ = live.export()
        except ProtocolError as exc:
            raise web.HTTPConflict(text=exc.text)
        return web.Response(text=log_text, content_type="application/jsonl")

    async def handle_export_grid(self, request: web.Request) -> web.Response:
        live = self._get_session(request)
        try:
            _, grid_csv = live.export()
        except ProtocolError as exc:
            raise web.HTTPConflict(text=exc.text)
        return web.Response(text=grid_csv, content_type="text/csv")


def run_service(
    port: int = DEFAULT_PORT,
    dwell_ms: int = DEFAULT_DWELL_MS,
    epsilon: float = DEFAULT_EPSILON,
) -> None:
    """Run the drawing service until interrupted."""
    service = DrawingService(dwell_ms=dwell_ms, epsilon=epsilon)
    web.run_app(service.build_app(), port=port)
