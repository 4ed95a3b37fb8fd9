"""TCP evaluation service speaking newline-delimited JSON.

One JSON object per line, UTF-8, LF-terminated, "v": 1 in every message.
The protocol itself is stateless: each request carries everything needed
to route it, and sessions are addressed by the integer-string identifiers
handed out by create.  Identifiers strictly increase for the lifetime of
a server and are never reused.

Requests:  {"v":1, "op":..., "id":?, "suite":?, "index":?, "seed":?,
            "X":?, "n":?}
Replies:   {"v":1, "id":..., "status":"ok"|"error", "error_code":?, ...}

Ops: create, evaluate, sample, pareto_front, settings, close.  Incoming
genotype rows are clamped into range and invalid rows are replaced by a
per-row deterministic redraw, so generic integer-vector optimizers can
submit raw matrices; the repaired rows are echoed back alongside F.
Error codes: "parse", "unsupported", "no-session", "shape".
"""

from __future__ import annotations

import json
import socket
import socketserver
import threading
import time
from pathlib import Path

import numpy as np

from .core import DimensionError
from .evaluators import evaluate_batch, repair_genotypes
from .store import data_root as default_data_root
from .suite import instantiate, registry_entry, true_pareto_front

PROTOCOL_VERSION = 1
DEFAULT_PORT = 9911


class _Session:
    def __init__(self, identifier: str, suite: str, index: int, instance):
        self.identifier = identifier
        self.suite = suite
        self.index = index
        self.instance = instance
        self.rng: np.random.Generator | None = None
        self.created_at = time.time()
        self.lock = threading.Lock()  # one evaluate at a time per session


class EvaluationServer(socketserver.ThreadingTCPServer):
    """Threaded line-oriented JSON server over the suite registry."""

    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, host: str = "127.0.0.1", port: int = DEFAULT_PORT,
                 data_root: str | Path | None = None):
        self.data_root = Path(data_root) if data_root is not None else default_data_root()
        self._sessions: dict[str, _Session] = {}
        self._registry_lock = threading.Lock()
        self._next_id = 1
        super().__init__((host, port), _Handler)

    @property
    def address(self) -> tuple[str, int]:
        return self.server_address[0], self.server_address[1]

    # -- session registry ------------------------------------------------

    def create_session(self, suite: str, index: int, seed: int) -> _Session:
        instance = instantiate(suite, index, self.data_root)
        with self._registry_lock:
            identifier = str(self._next_id)
            self._next_id += 1
            session = _Session(identifier, suite, index, instance)
            session.rng = np.random.default_rng(seed)
            self._sessions[identifier] = session
        return session

    def get_session(self, identifier) -> _Session | None:
        with self._registry_lock:
            return self._sessions.get(identifier)

    def close_session(self, identifier) -> bool:
        with self._registry_lock:
            return self._sessions.pop(identifier, None) is not None


def _error(req_id, code: str, message: str) -> dict:
    return {
        "v": PROTOCOL_VERSION,
        "id": req_id,
        "status": "error",
        "error_code": code,
        "message": message,
    }


def _ok(req_id, **fields) -> dict:
    return {"v": PROTOCOL_VERSION, "id": req_id, "status": "ok", **fields}


def _int_matrix(X, n_var: int) -> np.ndarray:
    arr = np.asarray(X)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] != n_var:
        raise DimensionError(
            f"X must be a non-empty matrix with {n_var} columns"
        )
    if not np.issubdtype(arr.dtype, np.integer):
        rounded = np.rint(arr)
        if not np.all(np.isfinite(arr)) or np.any(rounded != arr):
            raise DimensionError("X entries must be integers")
        arr = rounded.astype(int)
    return arr


def handle_request(server: EvaluationServer, msg: dict) -> dict:
    """One request dict in, one reply dict out; never raises on bad input."""
    op = msg.get("op")
    req_id = msg.get("id")
    if isinstance(req_id, int):  # forgive clients sending the id unquoted
        req_id = str(req_id)
    if op == "create":
        suite = msg.get("suite")
        index = msg.get("index")
        seed = msg.get("seed", 0)
        if not isinstance(suite, str) or not isinstance(index, int) \
                or not isinstance(seed, int):
            return _error(None, "shape", "create needs suite:str, index:int, seed:int")
        try:
            session = server.create_session(suite, index, seed)
        except (KeyError, IndexError, FileNotFoundError) as e:
            return _error(None, "unsupported", str(e))
        inst = session.instance
        cards = inst.space.cardinalities
        return _ok(
            session.identifier,
            n_var=inst.space.dimension,
            n_obj=inst.objective_dim,
            lower=[0] * len(cards),
            upper=[c - 1 for c in cards],
            ref_point=list(inst.reference_point),
        )

    if op not in ("evaluate", "sample", "pareto_front", "settings", "close"):
        return _error(req_id, "unsupported", f"unknown op {op!r}")

    session = server.get_session(req_id)
    if session is None:
        return _error(req_id, "no-session", f"no session {req_id!r}")
    inst = session.instance

    if op == "close":
        server.close_session(req_id)
        return _ok(req_id)

    if op == "settings":
        entry = registry_entry(session.suite, session.index)
        return _ok(
            req_id,
            suite=session.suite,
            index=session.index,
            name=inst.name,
            space=inst.space.name,
            n_var=inst.space.dimension,
            n_obj=inst.objective_dim,
            objectives=[d.name for d in inst.objectives],
            properties=sorted(entry.properties),
            ref_point=list(inst.reference_point),
            pf_available=inst.pf_available,
            normalized=inst.normalized,
        )

    if op == "pareto_front":
        if not inst.pf_available:
            return _ok(req_id, unavailable=True)
        pf = true_pareto_front(inst)
        return _ok(req_id, F=pf.tolist())

    if op == "sample":
        n = msg.get("n", 1)
        if not isinstance(n, int) or n < 1:
            return _error(req_id, "shape", "n must be a positive integer")
        with session.lock:
            X = inst.space.sample(session.rng, n)
        return _ok(req_id, X=[list(x) for x in X])

    # evaluate
    if "X" not in msg:
        return _error(req_id, "shape", "evaluate needs X")
    try:
        arr = _int_matrix(msg["X"], inst.space.dimension)
    except (DimensionError, ValueError, TypeError) as e:
        return _error(req_id, "shape", str(e))
    rows = repair_genotypes(inst.space, [tuple(int(v) for v in r) for r in arr])
    with session.lock:
        F = evaluate_batch(inst, rows, session.rng)
    return _ok(req_id, F=F.tolist(), X=[list(x) for x in rows])


class _Handler(socketserver.StreamRequestHandler):
    def handle(self) -> None:
        while True:
            try:
                line = self.rfile.readline()
            except (ConnectionError, OSError):
                return
            if not line:
                return
            if not line.strip():
                continue
            try:
                msg = json.loads(line.decode("utf-8"))
                if not isinstance(msg, dict):
                    raise ValueError("message must be a JSON object")
            except (ValueError, UnicodeDecodeError) as e:
                reply = _error(None, "parse", f"bad message: {e}")
            else:
                try:
                    reply = handle_request(self.server, msg)
                except Exception as e:  # a bad session must not kill the others
                    reply = _error(msg.get("id"), "internal", f"{type(e).__name__}: {e}")
            try:
                self.wfile.write(json.dumps(reply).encode("utf-8") + b"\n")
            except (ConnectionError, OSError):
                return


def serve(host: str = "127.0.0.1", port: int = DEFAULT_PORT,
          data_root: str | Path | None = None) -> EvaluationServer:
    """Create a server bound to (host, port); port 0 picks a free one."""
    return EvaluationServer(host, port, data_root)


def serve_forever(host: str = "127.0.0.1", port: int = DEFAULT_PORT,
                  data_root: str | Path | None = None) -> None:
    with serve(host, port, data_root) as server:
        addr = server.address
        print(f"listening on {addr[0]}:{addr[1]}", flush=True)
        server.serve_forever()


def start_background(host: str = "127.0.0.1", port: int = 0,
                     data_root: str | Path | None = None) -> EvaluationServer:
    """Server on a daemon thread, for tests and in-process use."""
    server = serve(host, port, data_root)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return server


def request_once(host: str, port: int, msg: dict, timeout: float = 10.0) -> dict:
    """One request/reply round trip on a fresh connection (debug helper)."""
    with socket.create_connection((host, port), timeout=timeout) as sock:
        sock.sendall(json.dumps(msg).encode("utf-8") + b"\n")
        buf = b""
        while not buf.endswith(b"\n"):
            chunk = sock.recv(65536)
            if not chunk:
                raise ConnectionError("server closed the connection")
            buf += chunk
    return json.loads(buf.decode("utf-8"))
