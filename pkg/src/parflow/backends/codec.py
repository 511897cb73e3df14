from __future__ import annotations

import pickle
import struct
import threading

from ..errors import DecodeError
from ..futures import RemoteHandle

_HANDLE = struct.Struct(">IQ")
_TAG_VALUE = b"\x00"
_TAG_HANDLE = b"\x01"


class HandleCodec:
    """Fixed 12-byte encoding of a remote handle: owner id and slot id."""

    size = _HANDLE.size

    def encode(self, h: RemoteHandle) -> bytes:
        return _HANDLE.pack(h.owner, h.slot)

    def decode(self, data: bytes) -> RemoteHandle:
        try:
            owner, slot = _HANDLE.unpack(data)
        except struct.error as exc:
            raise DecodeError(f"bad handle encoding: {exc}") from exc
        return RemoteHandle(owner, slot)


HANDLE_CODEC = HandleCodec()


class PickleCodec:
    """Default codec: a one-byte tag, then either a compact handle or a pickle."""

    def encode(self, x) -> bytes:
        if type(x) is RemoteHandle:
            return _TAG_HANDLE + HANDLE_CODEC.encode(x)
        return _TAG_VALUE + pickle.dumps(x, protocol=pickle.HIGHEST_PROTOCOL)

    def decode(self, data: bytes):
        tag, body = data[:1], data[1:]
        if tag == _TAG_HANDLE:
            return HANDLE_CODEC.decode(body)
        if tag != _TAG_VALUE:
            raise DecodeError(f"unknown codec tag {tag!r}")
        try:
            return pickle.loads(body)
        except Exception as exc:
            raise DecodeError(str(exc)) from exc


class CountingCodec:
    """Wraps a codec and counts calls; used to check that every crossing is encoded."""

    def __init__(self, inner=None):
        self.inner = inner or PickleCodec()
        self.encodes = 0
        self.decodes = 0
        self._lock = threading.Lock()

    def encode(self, x):
        with self._lock:
            self.encodes += 1
        return self.inner.encode(x)

    def decode(self, data):
        with self._lock:
            self.decodes += 1
        return self.inner.decode(data)

    def reset(self):
        with self._lock:
            self.encodes = self.decodes = 0
