"""Fixed-width packed integer vectors, little-endian at bit and byte level."""
from __future__ import annotations

import struct
from typing import Sequence

import numpy as np


def width_of(values: Sequence[int]) -> int:
    return int(max(values)).bit_length() if len(values) else 0


def packed_bits(values: Sequence[int]) -> int:
    return width_of(values) * len(values)


def pack(values: Sequence[int]) -> bytes:
    """count (u64) | width (u8) | ceil(count * width / 8) payload bytes."""
    arr = np.asarray(values, dtype=np.uint64)
    if arr.size and int(arr.min()) < 0:
        raise ValueError("packed vectors hold unsigned values")
    width = width_of(values)
    head = struct.pack("<QB", arr.size, width)
    if not width or not arr.size:
        return head
    shifts = np.arange(width, dtype=np.uint64)
    bits = ((arr[:, None] >> shifts) & np.uint64(1)).astype(np.uint8)
    return head + np.packbits(bits.ravel(), bitorder="little").tobytes()


def unpack(buf: bytes, pos: int = 0) -> tuple[list[int], int]:
    """Decode one vector at ``pos``; returns (values, next position)."""
    if pos + 9 > len(buf):
        raise ValueError("truncated packed vector header")
    count, width = struct.unpack_from("<QB", buf, pos)
    pos += 9
    if not width or not count:
        return [0] * count, pos
    nbytes = (count * width + 7) // 8
    if pos + nbytes > len(buf):
        raise ValueError("truncated packed vector payload")
    raw = np.frombuffer(buf, dtype=np.uint8, count=nbytes, offset=pos)
    bits = np.unpackbits(raw, bitorder="little")[:count * width].reshape(count, width)
    weights = np.uint64(1) << np.arange(width, dtype=np.uint64)
    values = (bits.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
    return values.tolist(), pos + nbytes


def pack_bits(bits: np.ndarray) -> bytes:
    """A 0/1 array as a width-1 vector."""
    bits = np.asarray(bits, dtype=np.uint8)
    head = struct.pack("<QB", bits.size, 1 if bits.size else 0)
    return head + (np.packbits(bits, bitorder="little").tobytes() if bits.size else b"")


def unpack_bits(buf: bytes, pos: int = 0) -> tuple[np.ndarray, int]:
    count, width = struct.unpack_from("<QB", buf, pos)
    pos += 9
    if not count:
        return np.zeros(0, dtype=np.uint8), pos
    if width != 1:
        raise ValueError("expected a bit vector")
    nbytes = (count + 7) // 8
    if pos + nbytes > len(buf):
        raise ValueError("truncated bit vector payload")
    raw = np.frombuffer(buf, dtype=np.uint8, count=nbytes, offset=pos)
    return np.unpackbits(raw, bitorder="little")[:count].copy(), pos + nbytes
