"""The control-output type shared by environment, model, datasets and server.

An action is: a set of up to 4 held keys, two mouse buttons, and a quantized
2-d mouse delta. Mouse deltas use 11 bins per axis with mu-law companded
magnitudes; bin 5 is exactly zero motion.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import ValidationError

KEY_NAMES = ("W", "A", "S", "D", "SPACE", "SHIFT", "E", "Q")
KEY_IDS = {name: i for i, name in enumerate(KEY_NAMES)}
MAX_KEYS_HELD = 4

N_MOUSE_BINS = 11
ZERO_BIN = N_MOUSE_BINS // 2

# mu-law companding for the mouse delta (radians per tick for the x axis).
MU = 15.0
MAX_TURN_PER_TICK = 0.18


def bin_to_delta(binned: int, n_bins: int = N_MOUSE_BINS, max_delta: float = MAX_TURN_PER_TICK) -> float:
    """Expand a mouse bin to a signed continuous delta."""
    half = n_bins // 2
    x = (binned - half) / half
    if x == 0.0:
        return 0.0
    return math.copysign(max_delta * ((1.0 + MU) ** abs(x) - 1.0) / MU, x)


def delta_to_bin(delta: float, n_bins: int = N_MOUSE_BINS, max_delta: float = MAX_TURN_PER_TICK) -> int:
    """Compress a continuous delta to the nearest mouse bin."""
    half = n_bins // 2
    mag = min(abs(delta) / max_delta, 1.0)
    y = math.log1p(MU * mag) / math.log1p(MU)
    b = half + int(math.copysign(round(half * y), delta))
    return max(0, min(n_bins - 1, b))


BIN_DELTAS = tuple(bin_to_delta(b) for b in range(N_MOUSE_BINS))


@dataclass(frozen=True)
class Action:
    keys: frozenset[str] = field(default_factory=frozenset)
    lmb: bool = False
    rmb: bool = False
    dx_bin: int = ZERO_BIN
    dy_bin: int = ZERO_BIN

    def __post_init__(self):
        unknown = set(self.keys) - set(KEY_NAMES)
        if unknown:
            raise ValidationError(f"unknown keys {sorted(unknown)}")
        if len(self.keys) > MAX_KEYS_HELD:
            raise ValidationError(f"at most {MAX_KEYS_HELD} keys may be held, got {len(self.keys)}")
        for name, b in (("dx_bin", self.dx_bin), ("dy_bin", self.dy_bin)):
            if not (0 <= b < N_MOUSE_BINS):
                raise ValidationError(f"{name}={b} outside [0, {N_MOUSE_BINS})")
        object.__setattr__(self, "keys", frozenset(self.keys))

    @property
    def key_ids(self) -> tuple[int, ...]:
        """Held keys as ascending integer ids."""
        return tuple(sorted(KEY_IDS[k] for k in self.keys))

    def is_noop(self) -> bool:
        return (
            not self.keys
            and not self.lmb
            and not self.rmb
            and self.dx_bin == ZERO_BIN
            and self.dy_bin == ZERO_BIN
        )

    def to_dict(self) -> dict:
        return {
            "keys": sorted(self.keys, key=lambda k: KEY_IDS[k]),
            "lmb": self.lmb,
            "rmb": self.rmb,
            "dx_bin": self.dx_bin,
            "dy_bin": self.dy_bin,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Action":
        # Accept the wire aliases dx/dy alongside the canonical field names.
        dx = d.get("dx_bin", d.get("dx", ZERO_BIN))
        dy = d.get("dy_bin", d.get("dy", ZERO_BIN))
        return cls(
            keys=frozenset(d.get("keys", ())),
            lmb=bool(d.get("lmb", False)),
            rmb=bool(d.get("rmb", False)),
            dx_bin=int(dx),
            dy_bin=int(dy),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json(cls, s: str) -> "Action":
        return cls.from_dict(json.loads(s))


NOOP = Action()


def from_ids(key_ids: tuple[int, ...], lmb: bool, rmb: bool, dx_bin: int, dy_bin: int) -> Action:
    return Action(
        keys=frozenset(KEY_NAMES[i] for i in key_ids),
        lmb=lmb,
        rmb=rmb,
        dx_bin=dx_bin,
        dy_bin=dy_bin,
    )
