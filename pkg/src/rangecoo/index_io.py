"""Binary index file format.

Layout (all integers little-endian):

    magic   4 bytes  b"RCOI"
    version u16      1
    flags   u16      0
    TEXT    u64 length, then the raw text bytes
    SEGS    optional; tag byte 0x01, u32 path-group count, then per path
            (in canonical path order) a u32 segment count followed by that
            many (l, r, y, i, j) u32 tuples

Only the text (and optionally the extracted segments, which lets the loader
skip re-extraction) is persisted; query structures are rebuilt on load so
there is a single source of truth for them.
"""

from __future__ import annotations

import struct

import numpy as np

MAGIC = b"RCOI"
VERSION = 1
SEGS_TAG = 0x01


class IndexFileError(Exception):
    """Raised for unreadable, truncated or mismatched index files."""


def write_index(path, text: bytes, segments=None) -> None:
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<HH", VERSION, 0))
        fh.write(struct.pack("<Q", len(text)))
        fh.write(text)
        if segments is not None:
            fh.write(bytes([SEGS_TAG]))
            num_paths = segments.hld.num_paths
            fh.write(struct.pack("<I", num_paths))
            off = segments.off
            cols = np.empty((len(segments.path), 5), dtype="<u4")
            cols[:, 0] = segments.l
            cols[:, 1] = segments.r
            cols[:, 2] = segments.y
            cols[:, 3] = segments.i
            cols[:, 4] = segments.j
            for p in range(num_paths):
                s, e = int(off[p]), int(off[p + 1])
                fh.write(struct.pack("<I", e - s))
                fh.write(cols[s:e].tobytes())


def read_index(path):
    """Return (text, raw_segments) where raw_segments is None or the tuple
    (num_paths, path, l, r, y, i, j) of numpy arrays."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < 16 or blob[:4] != MAGIC:
        raise IndexFileError("not an index file (bad magic)")
    version, flags = struct.unpack_from("<HH", blob, 4)
    if version != VERSION:
        raise IndexFileError(f"unsupported index version {version}")
    if flags != 0:
        raise IndexFileError(f"unknown flags {flags:#x}")
    (text_len,) = struct.unpack_from("<Q", blob, 8)
    pos = 16
    if pos + text_len > len(blob):
        raise IndexFileError("truncated text section")
    text = blob[pos : pos + text_len]
    pos += text_len
    if pos == len(blob):
        return text, None
    if blob[pos] != SEGS_TAG:
        raise IndexFileError(f"unknown section tag {blob[pos]:#x}")
    pos += 1
    if pos + 4 > len(blob):
        raise IndexFileError("truncated segment section")
    (num_paths,) = struct.unpack_from("<I", blob, pos)
    pos += 4
    counts = np.empty(num_paths, dtype=np.int64)
    chunks = []
    for p in range(num_paths):
        if pos + 4 > len(blob):
            raise IndexFileError("truncated segment section")
        (cnt,) = struct.unpack_from("<I", blob, pos)
        pos += 4
        nbytes = cnt * 20
        if pos + nbytes > len(blob):
            raise IndexFileError("truncated segment section")
        counts[p] = cnt
        chunks.append(np.frombuffer(blob, dtype="<u4", count=cnt * 5, offset=pos))
        pos += nbytes
    if pos != len(blob):
        raise IndexFileError("trailing bytes after segment section")
    flat = (
        np.concatenate(chunks).reshape(-1, 5).astype(np.int32)
        if chunks
        else np.empty((0, 5), dtype=np.int32)
    )
    seg_path = np.repeat(
        np.arange(num_paths, dtype=np.int32), counts
    )
    return text, (
        num_paths,
        seg_path,
        flat[:, 0].copy(),
        flat[:, 1].copy(),
        flat[:, 2].copy(),
        flat[:, 3].copy(),
        flat[:, 4].copy(),
    )
