"""Scripted expert policies: shortest-path navigation with styled control.

The expert stands in for competent human play: it navigates to entities via
BFS waypoints, steers heading through the mouse bins, interacts on arrival,
and exposes style knobs (sprint, turn sharpness, interact key) so different
styles produce different action sequences for the same task.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ..actions import MAX_TURN_PER_TICK, Action, delta_to_bin
from .annotate import Intent
from .world import WorldState, signed_angle


@dataclass(frozen=True)
class ExpertStyle:
    sprint: bool = False
    max_turn_bin: int = 5          # cap on |dx_bin - 5|, 1..5
    align_threshold: float = 0.55  # radians before moving forward
    interact_key: str = "E"
    strafe_corrections: bool = False

    @classmethod
    def presets(cls) -> tuple["ExpertStyle", ...]:
        return (
            cls(sprint=False, max_turn_bin=5, align_threshold=0.55, interact_key="E"),
            cls(sprint=True, max_turn_bin=3, align_threshold=0.75, interact_key="SPACE",
                strafe_corrections=True),
            cls(sprint=False, max_turn_bin=4, align_threshold=0.45, interact_key="E",
                strafe_corrections=True),
        )


def bfs_path(blocked: np.ndarray, start: tuple[int, int], goal: tuple[int, int]) -> list[tuple[int, int]] | None:
    """4-neighbor shortest path of cells from start to goal, or None."""
    h, w = blocked.shape
    if blocked[start[1], start[0]] or blocked[goal[1], goal[0]]:
        return None
    prev: dict[tuple[int, int], tuple[int, int] | None] = {start: None}
    q = deque([start])
    while q:
        cur = q.popleft()
        if cur == goal:
            path = [cur]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        cx, cy = cur
        for nx, ny in ((cx + 1, cy), (cx - 1, cy), (cx, cy + 1), (cx, cy - 1)):
            if 0 <= nx < w and 0 <= ny < h and not blocked[ny, nx] and (nx, ny) not in prev:
                prev[(nx, ny)] = cur
                q.append((nx, ny))
    return None


def _target_cell(state: WorldState, intent: Intent) -> tuple[int, int] | None:
    matches = state.find_entities(kind=intent.entity_kind, color=intent.color)
    if not matches:
        return None
    entity = matches[0]
    cx, cy = entity.cell
    if not entity.blocks():
        return (cx, cy)
    # Blocking target: stand on the nearest reachable adjacent floor cell.
    blocked = state.blocked_grid()
    agent = (int(state.x), int(state.y))
    best = None
    for nx, ny in ((cx + 1, cy), (cx - 1, cy), (cx, cy + 1), (cx, cy - 1)):
        if 0 <= nx < state.grid_w and 0 <= ny < state.grid_h and not blocked[ny, nx]:
            p = bfs_path(blocked, agent, (nx, ny))
            if p is not None and (best is None or len(p) < len(best[1])):
                best = ((nx, ny), p)
    return best[0] if best else None


@dataclass
class ExpertController:
    """Per-intent stateful controller; call `act(state)` once per tick."""

    intent: Intent
    style: ExpertStyle
    rng: np.random.Generator
    path: list[tuple[int, int]] = field(default_factory=list)
    ticks: int = 0
    done: bool = False
    failed: bool = False
    _wander_target: tuple[float, float] | None = None

    def act(self, state: WorldState) -> Action:
        self.ticks += 1
        if self.done or self.failed:
            return Action()
        if self.intent.kind == "wander":
            return self._wander(state)
        return self._pursue(state)

    # -- goal pursuit ------------------------------------------------------

    def _entity(self, state: WorldState):
        matches = state.find_entities(kind=self.intent.entity_kind, color=self.intent.color)
        return matches[0] if matches else None

    def _check_done(self, state: WorldState) -> bool:
        e = self._entity(state)
        if e is None:
            self.failed = True
            return True
        if self.intent.kind in ("pickup", "press"):
            if not e.active:
                self.done = True
        else:  # goto
            d = math.hypot(e.center[0] - state.x, e.center[1] - state.y)
            if d <= 1.05:
                self.done = True
        return self.done

    def _ensure_path(self, state: WorldState) -> bool:
        agent = (int(state.x), int(state.y))
        if self.path and self.path[0] != agent:
            # Keep the path while we're still near its head.
            hx, hy = self.path[0]
            if math.hypot(hx + 0.5 - state.x, hy + 0.5 - state.y) > 1.4:
                self.path = []
        if not self.path:
            goal = _target_cell(state, self.intent)
            if goal is None:
                self.failed = True
                return False
            path = bfs_path(state.blocked_grid(), agent, goal)
            if path is None:
                self.failed = True
                return False
            self.path = path
        return True

    def _pursue(self, state: WorldState) -> Action:
        if self._check_done(state):
            return Action()
        if not self._ensure_path(state):
            return Action()

        # Pop waypoints we've reached.
        while self.path:
            wx, wy = self.path[0]
            if math.hypot(wx + 0.5 - state.x, wy + 0.5 - state.y) < 0.30:
                self.path.pop(0)
            else:
                break

        e = self._entity(state)
        if self.path:
            tx, ty = self.path[0][0] + 0.5, self.path[0][1] + 0.5
        else:
            tx, ty = e.center

        dist_to_entity = math.hypot(e.center[0] - state.x, e.center[1] - state.y)
        err_entity = signed_angle(
            math.atan2(e.center[1] - state.y, e.center[0] - state.x) - state.heading
        )
        # Interact when adjacent and facing the target.
        if (
            self.intent.kind in ("pickup", "press")
            and dist_to_entity <= 1.1
            and abs(err_entity) < 0.6
        ):
            return self._steer(err_entity, forward=False, extra={self.style.interact_key})

        err = signed_angle(math.atan2(ty - state.y, tx - state.x) - state.heading)
        remaining = len(self.path) + dist_to_entity
        return self._steer(err, forward=abs(err) < self.style.align_threshold, remaining=remaining)

    def _steer(self, err: float, forward: bool, remaining: float = 0.0, extra: set | None = None) -> Action:
        turn = max(-MAX_TURN_PER_TICK, min(MAX_TURN_PER_TICK, err))
        b = delta_to_bin(turn)
        cap = self.style.max_turn_bin
        b = max(5 - cap, min(5 + cap, b))
        keys = set(extra or ())
        if forward:
            keys.add("W")
            if self.style.sprint and remaining > 2.0:
                keys.add("SHIFT")
            if self.style.strafe_corrections and abs(err) > 0.35:
                keys.add("D" if err > 0 else "A")
        return Action(keys=frozenset(keys), dx_bin=b)

    # -- wander filler -----------------------------------------------------

    def _wander(self, state: WorldState) -> Action:
        if self.ticks >= self.intent.duration:
            self.done = True
            return Action()
        if self._wander_target is None or self.ticks % 30 == 0:
            ang = float(self.rng.uniform(0, 2 * math.pi))
            self._wander_target = (state.x + 1.5 * math.cos(ang), state.y + 1.5 * math.sin(ang))
        tx, ty = self._wander_target
        err = signed_angle(math.atan2(ty - state.y, tx - state.x) - state.heading)
        # Turn-heavy, short forward nudges: filler that stays near its spot.
        forward = abs(err) < 0.4 and self.ticks % 5 < 2
        return self._steer(err, forward=forward)
