"""Bit-exact codec for the network coding header and coded-packet framing.

Layout (all big-endian), total 4 + 5n + 7 bytes:

    src_port(2) dst_port(2) | base(4) n(1)
    | entry 1:  start_1 absolute(4)       end_1 - start_1 (2)      coeff(1)
    | entry i>1: start_i - end_{i-1} (2)  end_i - start_i (2)      coeff(1)

The 5n+7 part excludes the ports, which are carried up front.  Relative
offsets larger than 65535 cannot be encoded and are rejected.  The payload
length is carried by the enclosing simulator frame, not this header.

This byte layout is the module's wire contract; golden hex vectors live in
tests/golden/ and must match bit for bit.
"""

import struct
from dataclasses import dataclass

from .packets import FRAME_CODED, FRAME_CONTROL, Segment, pack_segment, unpack_segment

PORTS_LEN = 4


class WireError(Exception):
    """Base class for header codec failures."""


class EncodeError(WireError):
    """Header meta violates the encodable invariants."""


class ParseError(WireError):
    """Byte buffer does not hold a valid header."""


@dataclass(frozen=True)
class HeaderEntry:
    """One packet of the combination: absolute byte range plus coefficient."""

    start: int
    end: int
    coeff: int


@dataclass(frozen=True)
class CodingHeader:
    src_port: int
    dst_port: int
    base: int
    entries: tuple[HeaderEntry, ...]

    @property
    def n(self) -> int:
        return len(self.entries)


@dataclass
class CodedPacket:
    """A coded combination, or an uncoded control segment on the bypass path."""

    header: CodingHeader | None
    payload: bytes = b""
    control: Segment | None = None

    @property
    def is_control(self) -> bool:
        return self.control is not None


def header_overhead(n: int) -> int:
    """Coding-header bytes beyond the port information: 5n + 7."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 5 * n + 7


def _check_meta(meta: CodingHeader) -> None:
    if not 1 <= meta.n <= 255:
        raise EncodeError(f"n out of range: {meta.n}")
    if not 0 <= meta.src_port <= 0xFFFF or not 0 <= meta.dst_port <= 0xFFFF:
        raise EncodeError("port out of range")
    if not 0 <= meta.base <= 0xFFFFFFFF:
        raise EncodeError("base out of range")
    prev_end = None
    for e in meta.entries:
        if not 0 <= e.start <= e.end <= 0xFFFFFFFF:
            raise EncodeError(f"bad range ({e.start}, {e.end})")
        if not 0 <= e.coeff <= 0xFF:
            raise EncodeError(f"bad coefficient {e.coeff}")
        if e.end - e.start > 0xFFFF:
            raise EncodeError(f"range longer than 65535: ({e.start}, {e.end})")
        if prev_end is not None:
            gap = e.start - prev_end
            if gap < 1:
                raise EncodeError("entries must be ordered and disjoint")
            if gap > 0xFFFF:
                raise EncodeError(f"start offset overflow: {gap}")
        prev_end = e.end


def encode_header(meta: CodingHeader) -> bytes:
    _check_meta(meta)
    first = meta.entries[0]
    out = bytearray()
    out += struct.pack("!HHIB", meta.src_port, meta.dst_port, meta.base, meta.n)
    out += struct.pack("!IHB", first.start, first.end - first.start, first.coeff)
    prev_end = first.end
    for e in meta.entries[1:]:
        out += struct.pack("!HHB", e.start - prev_end, e.end - e.start, e.coeff)
        prev_end = e.end
    return bytes(out)


def decode_header(buf: bytes) -> tuple[CodingHeader, int]:
    """Parse a header, returning (meta, offset where the payload begins)."""
    if len(buf) < 9:
        raise ParseError("buffer too short for fixed header fields")
    src_port, dst_port, base, n = struct.unpack_from("!HHIB", buf, 0)
    if n == 0:
        raise ParseError("n must be >= 1")
    need = PORTS_LEN + header_overhead(n)
    if len(buf) < need:
        raise ParseError(f"buffer shorter than declared: {len(buf)} < {need}")
    off = 9
    start, length, coeff = struct.unpack_from("!IHB", buf, off)
    off += 7
    entries = [HeaderEntry(start, start + length, coeff)]
    prev_end = start + length
    for _ in range(n - 1):
        gap, length, coeff = struct.unpack_from("!HHB", buf, off)
        off += 5
        if gap < 1:
            raise ParseError("entries overlap")
        start = prev_end + gap
        end = start + length
        if end > 0xFFFFFFFF:
            raise ParseError("range beyond 32-bit sequence space")
        entries.append(HeaderEntry(start, end, coeff))
        prev_end = end
    return CodingHeader(src_port, dst_port, base, tuple(entries)), off


def pack_coded(pkt: CodedPacket) -> bytes:
    """Serialize a CodedPacket into a simulator frame."""
    if pkt.is_control:
        # control frames wrap the raw segment; ports ride in the segment frame
        return pack_segment(pkt.control, 0, 0, frame_type=FRAME_CONTROL)
    return bytes([FRAME_CODED]) + encode_header(pkt.header) + pkt.payload


def unpack_coded(buf: bytes) -> CodedPacket:
    if not buf:
        raise ParseError("empty frame")
    if buf[0] == FRAME_CONTROL:
        return CodedPacket(header=None, control=unpack_segment(buf))
    if buf[0] != FRAME_CODED:
        raise ParseError(f"not a coded frame: type {buf[0]}")
    meta, off = decode_header(buf[1:])
    return CodedPacket(header=meta, payload=buf[1 + off :])
