"""Index file format.

Layout: magic ``BTCST01`` | header | section table | sections.  The header
is ``<QIIIII`` (n, sigma, r, mll, s_A, s_T) followed by a u32 section
count; each table entry is an 8-byte name and u64 offset and length.  All
integers are little-endian and every section is a run of packed vectors
(see :mod:`btcst.packed`).
"""
from __future__ import annotations

import struct
from pathlib import Path

from .btct import BTCT
from .csa import CsaIndex
from .cst import BtCst
from .packed import pack, pack_bits, unpack, unpack_bits
from .suffix import HBitvector

MAGIC = b"BTCST01"
_HEADER = struct.Struct("<QIIIIII")
_ENTRY = struct.Struct("<8sQQ")
SECTIONS = ("alpha", "btct", "csa", "h")


def _btct_section(t: BTCT) -> bytes:
    out = [pack([t.p, t.r, t.mll, t.padded]), pack([lv.blen for lv in t.levels])]
    out += [pack(values) for _, values in t.field_arrays()]
    out.append(pack_bits(t.leaf_bits()))
    return b"".join(out)


def _read_btct(buf: bytes) -> BTCT:
    (p, r, mll, padded), pos = unpack(buf)
    blens, pos = unpack(buf, pos)
    names = []
    for d in range(len(blens)):
        names += [f"L{d}.{f}" for f in ("kind", "rank1", "lrank", "lbreaker", "mexcess", "target",
                                         "off", "fb_rank1", "fb_lrank", "fb_lbreaker", "m_fb", "xmexcess")]
    names += ["root.cum_rank1", "root.cum_lrank"]
    arrays = {}
    for name in names:
        arrays[name], pos = unpack(buf, pos)
    leaves, pos = unpack_bits(buf, pos)
    t = BTCT.from_parts(p, r, mll, padded, blens, arrays, leaves)
    if t._cum_rank1 != arrays["root.cum_rank1"] or t._cum_lrank != arrays["root.cum_lrank"]:
        raise ValueError("corrupt index: root directory disagrees with the levels")
    return t


def _csa_section(c: CsaIndex) -> bytes:
    ranks = sorted(c.sa_samples)
    return b"".join([
        pack([c.n, c.s_A, c.s_T]),
        pack(c.bucket_starts),
        pack(c.run_starts),
        pack(c.run_values),
        pack(ranks),
        pack([(c.sa_samples[k] - 1) // c.s_A for k in ranks]),
        pack(c.isa_samples),
    ])


def _read_csa(buf: bytes, alphabet: bytes) -> CsaIndex:
    (n, s_A, s_T), pos = unpack(buf)
    vecs = []
    for _ in range(6):
        v, pos = unpack(buf, pos)
        vecs.append(v)
    buckets, run_starts, run_values, ranks, slots, isa = vecs
    samples = {k: 1 + q * s_A for k, q in zip(ranks, slots)}
    return CsaIndex(n, alphabet, buckets, run_starts, run_values, samples, isa, s_A, s_T)


def to_bytes(cst: BtCst) -> bytes:
    t, c = cst.topology, cst.csa
    bodies = {
        "alpha": pack(list(cst.alphabet)),
        "btct": _btct_section(t),
        "csa": _csa_section(c),
        "h": pack([cst.h.sample]) + pack(cst.h.zeros) + pack(cst.h.ones),
    }
    head = MAGIC + _HEADER.pack(cst.n, cst.sigma, t.r, t.mll, c.s_A, c.s_T, len(SECTIONS))
    offset = len(head) + _ENTRY.size * len(SECTIONS)
    table, payload = [], []
    for name in SECTIONS:
        body = bodies[name]
        table.append(_ENTRY.pack(name.encode(), offset, len(body)))
        payload.append(body)
        offset += len(body)
    return head + b"".join(table) + b"".join(payload)


def from_bytes(buf: bytes) -> BtCst:
    if buf[:len(MAGIC)] != MAGIC:
        raise ValueError("not an index file (bad magic)")
    pos = len(MAGIC)
    if len(buf) < pos + _HEADER.size:
        raise ValueError("corrupt index: truncated header")
    n, sigma, r, mll, s_A, s_T, count = _HEADER.unpack_from(buf, pos)
    pos += _HEADER.size
    if len(buf) < pos + count * _ENTRY.size:
        raise ValueError("corrupt index: truncated section table")
    sections = {}
    floor = pos + count * _ENTRY.size
    for k in range(count):
        raw, off, length = _ENTRY.unpack_from(buf, pos + k * _ENTRY.size)
        name = raw.rstrip(b"\0").decode("ascii", "replace")
        if off < floor or off + length > len(buf):
            raise ValueError(f"corrupt index: section {name!r} at [{off}, {off + length}) "
                             f"outside [{floor}, {len(buf)}]")
        floor = off + length
        sections[name] = buf[off:off + length]
    missing = [s for s in SECTIONS if s not in sections]
    if missing:
        raise ValueError(f"corrupt index: missing sections {missing}")
    alphabet = bytes(unpack(sections["alpha"])[0])
    if len(alphabet) != sigma + 1:
        raise ValueError("corrupt index: alphabet size disagrees with header")
    topo = _read_btct(sections["btct"])
    csa = _read_csa(sections["csa"], alphabet)
    if csa.n != n or (topo.r, topo.mll, csa.s_A, csa.s_T) != (r, mll, s_A, s_T):
        raise ValueError("corrupt index: section parameters disagree with header")
    (sample,), pos = unpack(sections["h"])
    zeros, pos = unpack(sections["h"], pos)
    ones, _ = unpack(sections["h"], pos)
    params = {"r": r, "mll": mll, "sa_rate": s_A, "isa_rate": s_T}
    return BtCst(topo, csa, HBitvector(zeros, ones, sample), params)


def save(cst: BtCst, path: str | Path) -> int:
    data = to_bytes(cst)
    Path(path).write_bytes(data)
    return len(data)


def load(path: str | Path) -> BtCst:
    return from_bytes(Path(path).read_bytes())
