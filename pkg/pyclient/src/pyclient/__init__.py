"""Minimal TCP client for the naxbench evaluation service.

Speaks the line-delimited JSON wire schema (one object per line, UTF-8,
"v": 1) over a plain socket.  The client does no numeric work of its
own: matrices come back exactly as the server serialized them, so F
values are bit-identical to an in-process evaluation with the same
session seed.

    client = connect("127.0.0.1", 9911)
    inst = create(client, "c10mop", 5, seed=0)
    X = sample(inst, 10)
    F = evaluate(inst, X)
    close(inst)
    client.shutdown()

One client per connection; a client must not be shared across threads.
"""

import json
import socket

__all__ = [
    "ServerError",
    "Client",
    "RemoteInstance",
    "connect",
    "create",
    "evaluate",
    "sample",
    "settings",
    "pareto_front",
    "close",
]

PROTOCOL_VERSION = 1
DEFAULT_PORT = 9911


class ServerError(Exception):
    """Raised when a reply carries status="error".

    error_code is the machine-readable code from the wire ("parse",
    "unsupported", "no-session", "shape" or "internal").
    """

    def __init__(self, error_code, message):
        super().__init__(f"{error_code}: {message}")
        self.error_code = error_code
        self.message = message


class Client:
    """One socket plus a line buffer."""

    def __init__(self, sock):
        self.sock = sock
        self._buf = b""

    def request(self, msg):
        """Send one request object, return the reply object.

        Raises ServerError on status="error" and ConnectionError if the
        server hangs up mid-reply.
        """
        msg.setdefault("v", PROTOCOL_VERSION)
        self.sock.sendall(json.dumps(msg).encode("utf-8") + b"\n")
        line = self._read_line()
        reply = json.loads(line)
        if reply.get("status") == "error":
            raise ServerError(reply.get("error_code", "internal"),
                              reply.get("message", ""))
        return reply

    def _read_line(self):
        while b"\n" not in self._buf:
            chunk = self.sock.recv(65536)
            if not chunk:
                raise ConnectionError("server closed the connection")
            self._buf += chunk
        line, self._buf = self._buf.split(b"\n", 1)
        return line

    def shutdown(self):
        self.sock.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.shutdown()
        return False


class RemoteInstance:
    """Handle for one server-side problem session."""

    def __init__(self, client, ident, info):
        self.client = client
        self.id = ident
        self.n_var = info["n_var"]
        self.n_obj = info["n_obj"]
        self.lower = info["lower"]
        self.upper = info["upper"]
        self.ref_point = info["ref_point"]


def connect(host="127.0.0.1", port=DEFAULT_PORT, timeout=None):
    return Client(socket.create_connection((host, port), timeout=timeout))


def create(client, suite, index, seed=0):
    reply = client.request({"op": "create", "suite": suite,
                            "index": index, "seed": seed})
    return RemoteInstance(client, reply["id"], reply)


def evaluate(inst, X):
    """Evaluate rows of genotypes; returns the F matrix untouched.

    The server repairs out-of-range or invalid rows before evaluating;
    F corresponds row for row to the repaired input.
    """
    reply = inst.client.request({"op": "evaluate", "id": inst.id,
                                 "X": [list(row) for row in X]})
    return reply["F"]


def sample(inst, n):
    reply = inst.client.request({"op": "sample", "id": inst.id, "n": n})
    return reply["X"]


def settings(inst):
    return inst.client.request({"op": "settings", "id": inst.id})


def pareto_front(inst):
    """True front rows, or None when the problem has no catalog."""
    reply = inst.client.request({"op": "pareto_front", "id": inst.id})
    if reply.get("unavailable"):
        return None
    return reply["F"]


def close(inst):
    inst.client.request({"op": "close", "id": inst.id})
