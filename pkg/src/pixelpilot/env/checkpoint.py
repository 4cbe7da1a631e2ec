"""Versioned binary world checkpoints (magic ``P2PC``).

``restore(save(state))`` is byte-exact: saving the restored state reproduces
the identical blob, and identical action sequences then produce bitwise
identical frames.
"""

from __future__ import annotations

import struct

import numpy as np

from ..errors import FormatError
from .world import COLOR_NAMES, ENTITY_KINDS, Entity, WorldState

MAGIC = b"P2PC"
VERSION = 1


def save(state: WorldState) -> bytes:
    parts = [MAGIC, struct.pack("<I", VERSION)]
    gh, gw = state.grid.shape
    parts.append(struct.pack("<HH", gh, gw))
    parts.append(state.grid.astype(np.uint8).tobytes(order="C"))
    parts.append(struct.pack("<dddI", state.x, state.y, state.heading, state.tick))
    parts.append(struct.pack("<H", len(state.entities)))
    for e in state.entities:
        parts.append(
            struct.pack(
                "<BBHHB",
                ENTITY_KINDS.index(e.kind),
                COLOR_NAMES.index(e.color),
                e.cell[0],
                e.cell[1],
                1 if e.active else 0,
            )
        )
    rng_state = state.rng.bit_generator.state
    inner = rng_state["state"]
    parts.append(inner["state"].to_bytes(16, "little"))
    parts.append(inner["inc"].to_bytes(16, "little"))
    parts.append(struct.pack("<II", int(rng_state["has_uint32"]), int(rng_state["uinteger"])))
    return b"".join(parts)


def restore(blob: bytes) -> WorldState:
    try:
        return _restore(blob)
    except (struct.error, IndexError, ValueError) as exc:
        raise FormatError(f"corrupt checkpoint blob: {exc}") from exc


def _restore(blob: bytes) -> WorldState:
    if blob[:4] != MAGIC:
        raise FormatError(f"bad checkpoint magic {blob[:4]!r}")
    (version,) = struct.unpack_from("<I", blob, 4)
    if version != VERSION:
        raise FormatError(f"unsupported checkpoint version {version}")
    off = 8
    gh, gw = struct.unpack_from("<HH", blob, off)
    off += 4
    grid = np.frombuffer(blob[off : off + gh * gw], dtype=np.uint8).reshape(gh, gw).copy()
    if grid.size != gh * gw:
        raise FormatError("truncated grid")
    off += gh * gw
    x, y, heading, tick = struct.unpack_from("<dddI", blob, off)
    off += 28
    (n_ent,) = struct.unpack_from("<H", blob, off)
    off += 2
    entities = []
    for _ in range(n_ent):
        kind_i, color_i, cx, cy, active = struct.unpack_from("<BBHHB", blob, off)
        off += 7
        entities.append(
            Entity(
                kind=ENTITY_KINDS[kind_i],
                color=COLOR_NAMES[color_i],
                cell=(cx, cy),
                active=bool(active),
            )
        )
    inner_state = int.from_bytes(blob[off : off + 16], "little")
    inner_inc = int.from_bytes(blob[off + 16 : off + 32], "little")
    off += 32
    has_uint32, uinteger = struct.unpack_from("<II", blob, off)
    off += 8
    if off != len(blob):
        raise FormatError(f"trailing bytes in checkpoint ({len(blob) - off})")

    rng = np.random.default_rng(0)
    rng.bit_generator.state = {
        "bit_generator": "PCG64",
        "state": {"state": inner_state, "inc": inner_inc},
        "has_uint32": has_uint32,
        "uinteger": uinteger,
    }
    return WorldState(grid=grid, x=x, y=y, heading=heading, entities=entities, tick=tick, rng=rng)
