"""Egocentric maze world: occupancy grid, colored entities, 20 Hz physics.

The world is a 2-d grid rendered first-person by a column raycaster
(`render.py`). Physics are fully deterministic: a state plus an action
sequence determines every subsequent frame bitwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..actions import Action, bin_to_delta

FPS = 20
FRAME_W = 64
FRAME_H = 48

MOVE_SPEED = 0.09          # cells per tick
SPRINT_MULT = 1.5
AGENT_RADIUS = 0.25
INTERACT_RANGE = 1.2

ENTITY_KINDS = ("pillar", "pickup", "button", "door")
COLOR_NAMES = ("red", "green", "blue", "yellow")

COLOR_RGB = {
    "red": (204, 44, 44),
    "green": (44, 176, 72),
    "blue": (52, 94, 216),
    "yellow": (228, 200, 52),
}

TWO_PI = 2.0 * math.pi


@dataclass
class Entity:
    kind: str
    color: str
    cell: tuple[int, int]  # (cx, cy)
    active: bool = True

    @property
    def center(self) -> tuple[float, float]:
        return (self.cell[0] + 0.5, self.cell[1] + 0.5)

    def blocks(self) -> bool:
        # Pillars always block; doors block while closed (active).
        return self.kind == "pillar" or (self.kind == "door" and self.active)


@dataclass
class WorldState:
    grid: np.ndarray                 # (h, w) uint8, 1 = wall
    x: float
    y: float
    heading: float
    entities: list[Entity] = field(default_factory=list)
    tick: int = 0
    rng: np.random.Generator = field(default_factory=lambda: np.random.default_rng(0))

    @property
    def grid_h(self) -> int:
        return self.grid.shape[0]

    @property
    def grid_w(self) -> int:
        return self.grid.shape[1]

    def blocked_grid(self) -> np.ndarray:
        """Walls plus blocking entities, rebuilt per call (entities toggle)."""
        g = self.grid.copy()
        for e in self.entities:
            if e.active and e.blocks():
                g[e.cell[1], e.cell[0]] = 1
        return g

    def find_entities(self, kind: str | None = None, color: str | None = None) -> list[Entity]:
        out = []
        for e in self.entities:
            if kind is not None and e.kind != kind:
                continue
            if color is not None and e.color != color:
                continue
            out.append(e)
        return out


def wrap_angle(a: float) -> float:
    a = math.fmod(a, TWO_PI)
    return a + TWO_PI if a < 0 else a


def signed_angle(a: float) -> float:
    """Map to [-pi, pi)."""
    a = math.fmod(a + math.pi, TWO_PI)
    if a < 0:
        a += TWO_PI
    return a - math.pi


def _circle_blocked(grid: np.ndarray, x: float, y: float, r: float) -> bool:
    h, w = grid.shape
    x0, x1 = int(math.floor(x - r)), int(math.floor(x + r))
    y0, y1 = int(math.floor(y - r)), int(math.floor(y + r))
    for cy in range(y0, y1 + 1):
        for cx in range(x0, x1 + 1):
            if cx < 0 or cy < 0 or cx >= w or cy >= h:
                return True
            if grid[cy, cx]:
                # Closest point of the cell to the circle center.
                px = min(max(x, cx), cx + 1.0)
                py = min(max(y, cy), cy + 1.0)
                if (px - x) ** 2 + (py - y) ** 2 < r * r:
                    return True
    return False


def step(state: WorldState, action: Action) -> tuple[WorldState, np.ndarray]:
    """Advance one 20 Hz tick and render the resulting frame.

    Motion: W/S along heading, A/D strafe, dx_bin turns, SHIFT sprints,
    SPACE/E interact with the nearest adjacent pickup/button. Walls and
    blocking entities stop movement; all actions are legal.
    """
    from .render import render  # local import to avoid a cycle

    keys = action.keys
    state.heading = wrap_angle(state.heading + bin_to_delta(action.dx_bin))

    fwd = (1.0 if "W" in keys else 0.0) - (1.0 if "S" in keys else 0.0)
    strafe = (1.0 if "D" in keys else 0.0) - (1.0 if "A" in keys else 0.0)
    if fwd != 0.0 or strafe != 0.0:
        speed = MOVE_SPEED * (SPRINT_MULT if "SHIFT" in keys else 1.0)
        dir_x, dir_y = math.cos(state.heading), math.sin(state.heading)
        # Right-hand strafe direction in a y-down grid.
        right_x, right_y = -dir_y, dir_x
        mx = fwd * dir_x + strafe * right_x
        my = fwd * dir_y + strafe * right_y
        norm = math.hypot(mx, my)
        mx, my = mx / norm * speed, my / norm * speed
        blocked = state.blocked_grid()
        nx = state.x + mx
        if not _circle_blocked(blocked, nx, state.y, AGENT_RADIUS):
            state.x = nx
        ny = state.y + my
        if not _circle_blocked(blocked, state.x, ny, AGENT_RADIUS):
            state.y = ny

    if "E" in keys or "SPACE" in keys:
        _interact(state)

    state.tick += 1
    return state, render(state)


def _interact(state: WorldState) -> None:
    best = None
    best_d = INTERACT_RANGE
    for e in state.entities:
        if not e.active or e.kind not in ("pickup", "button"):
            continue
        d = math.hypot(e.center[0] - state.x, e.center[1] - state.y)
        if d <= best_d:
            best, best_d = e, d
    if best is None:
        return
    best.active = False
    if best.kind == "button":
        for door in state.find_entities(kind="door", color=best.color):
            door.active = False  # open
