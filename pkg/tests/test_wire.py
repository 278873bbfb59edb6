import pathlib
import random

import pytest

from tcpnc import wire
from tcpnc.packets import Segment
from tcpnc.wire import CodedPacket, CodingHeader, HeaderEntry

GOLDEN = pathlib.Path(__file__).parent / "golden" / "coding_headers.txt"

GOLDEN_METAS = {
    "n1_basic": CodingHeader(0x1234, 80, 0, (HeaderEntry(0, 999, 0x01),)),
    "n3_contiguous": CodingHeader(
        8080,
        443,
        1000,
        (
            HeaderEntry(1000, 2459, 0x05),
            HeaderEntry(2460, 2987, 0xB2),
            HeaderEntry(2988, 4447, 0xFF),
        ),
    ),
    "n2_extremes": CodingHeader(
        65535,
        1,
        99999,
        (HeaderEntry(100000, 165535, 0x80), HeaderEntry(231070, 231070, 0xFE)),
    ),
}


def load_golden():
    vectors = {}
    for line in GOLDEN.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, hexbytes = line.split()
        vectors[name] = bytes.fromhex(hexbytes)
    return vectors


def test_header_overhead_formula():
    assert wire.header_overhead(1) == 12
    assert wire.header_overhead(3) == 22
    assert wire.header_overhead(10) == 57
    with pytest.raises(ValueError):
        wire.header_overhead(0)


def test_encode_layout_n1():
    # direct field layout, assembled by hand
    got = wire.encode_header(GOLDEN_METAS["n1_basic"])
    assert got.hex() == "1234005000000000010000000003e701"
    assert len(got) == 4 + wire.header_overhead(1)


def test_golden_vectors_bit_exact():
    vectors = load_golden()
    assert set(vectors) == set(GOLDEN_METAS)
    for name, raw in vectors.items():
        meta = GOLDEN_METAS[name]
        assert wire.encode_header(meta) == raw, name
        decoded, off = wire.decode_header(raw)
        assert decoded == meta, name
        assert off == len(raw), name


def random_meta(rng: random.Random) -> CodingHeader:
    n = rng.randint(1, 12)
    entries = []
    pos = rng.randrange(0, 2**20)
    for _ in range(n):
        start = pos
        end = start + rng.randint(0, 0xFFFF)
        entries.append(HeaderEntry(start, end, rng.randrange(256)))
        pos = end + rng.randint(1, 0xFFFF)
    return CodingHeader(rng.randrange(2**16), rng.randrange(2**16), rng.randrange(2**32), tuple(entries))


def test_roundtrip_property():
    rng = random.Random(0xC0DE)
    for _ in range(10_000):
        meta = random_meta(rng)
        raw = wire.encode_header(meta)
        assert len(raw) == 4 + wire.header_overhead(meta.n)
        decoded, off = wire.decode_header(raw)
        assert decoded == meta
        assert off == len(raw)
        starts = [e.start for e in decoded.entries]
        assert starts == sorted(starts)
        for prev, cur in zip(decoded.entries, decoded.entries[1:]):
            assert cur.start > prev.end


def test_decode_with_payload_offset():
    raw = wire.encode_header(GOLDEN_METAS["n1_basic"]) + b"payload"
    meta, off = wire.decode_header(raw)
    assert raw[off:] == b"payload"
    assert meta == GOLDEN_METAS["n1_basic"]


def test_truncated_buffer_rejected():
    raw = wire.encode_header(GOLDEN_METAS["n3_contiguous"])
    for cut in (0, 3, 8, 12, len(raw) - 1):
        with pytest.raises(wire.ParseError):
            wire.decode_header(raw[:cut])


def test_zero_n_rejected():
    raw = bytearray(wire.encode_header(GOLDEN_METAS["n1_basic"]))
    raw[8] = 0  # n field
    with pytest.raises(wire.ParseError):
        wire.decode_header(bytes(raw))


def test_encode_rejects_offset_overflow():
    meta = CodingHeader(1, 2, 0, (HeaderEntry(0, 70_000, 1),))
    with pytest.raises(wire.EncodeError):
        wire.encode_header(meta)
    meta = CodingHeader(1, 2, 0, (HeaderEntry(0, 10, 1), HeaderEntry(80_000, 80_010, 1)))
    with pytest.raises(wire.EncodeError):
        wire.encode_header(meta)


def test_encode_rejects_overlap_and_disorder():
    with pytest.raises(wire.EncodeError):
        wire.encode_header(CodingHeader(1, 2, 0, (HeaderEntry(0, 10, 1), HeaderEntry(10, 20, 1))))
    with pytest.raises(wire.EncodeError):
        wire.encode_header(CodingHeader(1, 2, 0, (HeaderEntry(100, 110, 1), HeaderEntry(0, 10, 1))))
    with pytest.raises(wire.EncodeError):
        wire.encode_header(CodingHeader(1, 2, 0, ()))


def test_coded_frame_roundtrip():
    pkt = CodedPacket(header=GOLDEN_METAS["n3_contiguous"], payload=b"\x01\x02\x03")
    raw = wire.pack_coded(pkt)
    back = wire.unpack_coded(raw)
    assert back.header == pkt.header
    assert back.payload == pkt.payload
    assert not back.is_control


def test_control_frame_roundtrip():
    seg = Segment(seq=0, syn=True)
    raw = wire.pack_coded(CodedPacket(header=None, control=seg))
    back = wire.unpack_coded(raw)
    assert back.is_control
    assert back.control.syn
    assert back.control.seq == 0
