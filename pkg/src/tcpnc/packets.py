"""Transport-level packet types and simulator frame codecs.

Segments and Acks are the events exchanged between the TCP models and either
the network directly (plain TCP mode) or the coding shims.  The frame codecs
turn them into the byte strings that travel over the simulated links; frame
sizes drive link serialization, so the fixed header parts mirror a 20-byte
TCP header plus one frame-type byte.
"""

import struct
from dataclasses import dataclass, field

FLAG_SYN = 0x01
FLAG_RST = 0x02
FLAG_FIN = 0x04
FLAG_PUSH = 0x08
FLAG_ACK = 0x10

FRAME_SEGMENT = 0x01
FRAME_CONTROL = 0x02
FRAME_ACK = 0x03
FRAME_CODED = 0x04

# type(1) ports(4) seq(4) ack(4) flags(1) window(4) length(2) = 20 bytes
_SEG_HDR = struct.Struct("!BHHIIBIH")


@dataclass
class Segment:
    """A contiguous byte range of the stream plus control flags."""

    seq: int
    data: bytes = b""
    syn: bool = False
    rst: bool = False
    fin: bool = False
    push: bool = False

    @property
    def end(self) -> int:
        """Sequence number of the last byte (inclusive); seq-1 if empty."""
        return self.seq + len(self.data) - 1

    @property
    def flags(self) -> int:
        return (
            (FLAG_SYN if self.syn else 0)
            | (FLAG_RST if self.rst else 0)
            | (FLAG_FIN if self.fin else 0)
            | (FLAG_PUSH if self.push else 0)
        )

    @property
    def is_control(self) -> bool:
        return self.syn or self.rst


@dataclass
class Ack:
    """Cumulative acknowledgment: next expected byte plus advertised window."""

    ack: int
    rwnd: int


def _flags_to_segment(seq: int, data: bytes, flags: int) -> Segment:
    return Segment(
        seq=seq,
        data=data,
        syn=bool(flags & FLAG_SYN),
        rst=bool(flags & FLAG_RST),
        fin=bool(flags & FLAG_FIN),
        push=bool(flags & FLAG_PUSH),
    )


def pack_segment(seg: Segment, src_port: int, dst_port: int, frame_type: int = FRAME_SEGMENT) -> bytes:
    hdr = _SEG_HDR.pack(frame_type, src_port, dst_port, seg.seq, 0, seg.flags, 0, len(seg.data))
    return hdr + seg.data


def unpack_segment(buf: bytes) -> Segment:
    ftype, _sp, _dp, seq, _ack, flags, _wnd, length = _SEG_HDR.unpack_from(buf)
    if ftype not in (FRAME_SEGMENT, FRAME_CONTROL):
        raise ValueError(f"not a segment frame: type {ftype}")
    data = buf[_SEG_HDR.size : _SEG_HDR.size + length]
    if len(data) != length:
        raise ValueError("truncated segment frame")
    return _flags_to_segment(seq, data, flags)


def pack_ack(ack: Ack, src_port: int, dst_port: int) -> bytes:
    return _SEG_HDR.pack(FRAME_ACK, src_port, dst_port, 0, ack.ack, FLAG_ACK, ack.rwnd, 0)


def unpack_ack(buf: bytes) -> Ack:
    ftype, _sp, _dp, _seq, ackno, _flags, wnd, _length = _SEG_HDR.unpack_from(buf)
    if ftype != FRAME_ACK:
        raise ValueError(f"not an ack frame: type {ftype}")
    return Ack(ack=ackno, rwnd=wnd)


def frame_type(buf: bytes) -> int:
    if not buf:
        raise ValueError("empty frame")
    return buf[0]
