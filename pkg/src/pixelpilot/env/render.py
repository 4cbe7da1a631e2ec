"""Column raycaster: 64x48 RGB egocentric view of the grid world.

Walls, pillars and closed doors are raycast as full-height flat-colored
columns (vectorized DDA over all screen columns); pickups and buttons are
depth-tested billboard blocks so they stay visible without blocking rays.
"""

from __future__ import annotations

import math

import numpy as np

from .world import COLOR_RGB, FRAME_H, FRAME_W, WorldState

FOV_PLANE = 0.66          # tan(fov/2); ~66 degree horizontal field of view
WALL_RGB = (132, 132, 132)
FLOOR_RGB = (58, 58, 58)
CEIL_RGB = (38, 38, 44)
FOG = 0.13                # per-cell distance dimming
MAX_DEPTH = 64

SPRITE_SHAPE = {
    # kind -> (height fraction of a wall column, vertical center offset from
    # screen middle, in half-column units; +1 sits on the floor)
    "pickup": (0.40, 0.55),
    "button": (0.30, 0.00),
}


def _shade(rgb: tuple[int, int, int], dist: np.ndarray, side_dim: np.ndarray) -> np.ndarray:
    base = np.array(rgb, dtype=np.float64)
    fade = 1.0 / (1.0 + FOG * dist)
    return base[None, :] * (fade * side_dim)[:, None]


def render(state: WorldState) -> np.ndarray:
    w, h = FRAME_W, FRAME_H
    grid = state.blocked_grid()
    gh, gw = grid.shape

    # Per-cell color id: 0 wall, otherwise 1+entity index for blocking entities.
    cell_color = np.zeros((gh, gw), dtype=np.int32)
    palette = [WALL_RGB]
    for e in state.entities:
        if e.active and e.blocks():
            palette.append(COLOR_RGB[e.color])
            cell_color[e.cell[1], e.cell[0]] = len(palette) - 1

    dir_x, dir_y = math.cos(state.heading), math.sin(state.heading)
    plane_x, plane_y = -dir_y * FOV_PLANE, dir_x * FOV_PLANE

    cam = 2.0 * (np.arange(w) + 0.5) / w - 1.0
    ray_x = dir_x + plane_x * cam
    ray_y = dir_y + plane_y * cam

    map_x = np.full(w, int(state.x), dtype=np.int64)
    map_y = np.full(w, int(state.y), dtype=np.int64)
    with np.errstate(divide="ignore"):
        delta_x = np.abs(1.0 / ray_x)
        delta_y = np.abs(1.0 / ray_y)
    step_x = np.where(ray_x < 0, -1, 1)
    step_y = np.where(ray_y < 0, -1, 1)
    side_x = np.where(ray_x < 0, (state.x - map_x) * delta_x, (map_x + 1.0 - state.x) * delta_x)
    side_y = np.where(ray_y < 0, (state.y - map_y) * delta_y, (map_y + 1.0 - state.y) * delta_y)

    hit_side = np.zeros(w, dtype=np.int64)     # 0 = x side, 1 = y side
    active = np.ones(w, dtype=bool)
    for _ in range(MAX_DEPTH):
        take_x = (side_x < side_y) & active
        take_y = ~take_x & active
        side_x = np.where(take_x, side_x + delta_x, side_x)
        map_x = np.where(take_x, map_x + step_x, map_x)
        side_y = np.where(take_y, side_y + delta_y, side_y)
        map_y = np.where(take_y, map_y + step_y, map_y)
        hit_side = np.where(take_x, 0, np.where(take_y, 1, hit_side))
        inside = (map_x >= 0) & (map_x < gw) & (map_y >= 0) & (map_y < gh)
        solid = np.zeros(w, dtype=bool)
        solid[inside] = grid[map_y[inside], map_x[inside]] > 0
        active &= ~solid
        if not active.any():
            break

    with np.errstate(divide="ignore", invalid="ignore"):
        dist = np.where(
            hit_side == 0,
            (map_x - state.x + (1 - step_x) / 2.0) / ray_x,
            (map_y - state.y + (1 - step_y) / 2.0) / ray_y,
        )
    dist = np.where(np.isfinite(dist) & (dist > 1e-6), dist, 1e-6)
    dist = np.minimum(dist, MAX_DEPTH)

    frame = np.empty((h, w, 3), dtype=np.float64)
    frame[: h // 2, :, :] = CEIL_RGB
    frame[h // 2 :, :, :] = FLOOR_RGB

    inside = (map_x >= 0) & (map_x < gw) & (map_y >= 0) & (map_y < gh)
    cidx = np.zeros(w, dtype=np.int32)
    cidx[inside] = cell_color[map_y[inside], map_x[inside]]
    colors = np.array(palette, dtype=np.float64)[cidx]
    side_dim = np.where(hit_side == 1, 0.72, 1.0)
    fade = 1.0 / (1.0 + FOG * dist)
    col_rgb = colors * (fade * side_dim)[:, None]

    line_h = (h / dist).astype(np.int64)
    top = np.maximum(h // 2 - line_h // 2, 0)
    bot = np.minimum(h // 2 + line_h // 2, h - 1)
    rows = np.arange(h)[:, None]
    wall_mask = (rows >= top[None, :]) & (rows <= bot[None, :])
    frame[wall_mask] = np.broadcast_to(col_rgb[None, :, :], (h, w, 3))[wall_mask]

    _draw_sprites(state, frame, dist)

    return np.clip(np.rint(frame), 0, 255).astype(np.uint8)


def _draw_sprites(state: WorldState, frame: np.ndarray, zbuf: np.ndarray) -> None:
    w, h = FRAME_W, FRAME_H
    dir_x, dir_y = math.cos(state.heading), math.sin(state.heading)
    plane_x, plane_y = -dir_y * FOV_PLANE, dir_x * FOV_PLANE
    inv_det = 1.0 / (plane_x * dir_y - dir_x * plane_y)

    sprites = [
        e for e in state.entities if e.active and e.kind in SPRITE_SHAPE
    ]
    # Far to near so close sprites overdraw distant ones.
    sprites.sort(key=lambda e: -((e.center[0] - state.x) ** 2 + (e.center[1] - state.y) ** 2))

    for e in sprites:
        rel_x = e.center[0] - state.x
        rel_y = e.center[1] - state.y
        trans_x = inv_det * (dir_y * rel_x - dir_x * rel_y)
        trans_y = inv_det * (-plane_y * rel_x + plane_x * rel_y)
        if trans_y <= 0.05:
            continue
        screen_x = int((w / 2.0) * (1.0 + trans_x / trans_y))
        frac, v_off = SPRITE_SHAPE[e.kind]
        full = int(h / trans_y)
        sp_h = max(int(full * frac), 1)
        sp_w = max(int(full * frac * 0.9), 1)
        center_y = int(h / 2 + v_off * full / 2)
        y0, y1 = max(center_y - sp_h // 2, 0), min(center_y + sp_h // 2, h - 1)
        x0, x1 = max(screen_x - sp_w // 2, 0), min(screen_x + sp_w // 2, w - 1)
        if x1 < x0 or y1 < y0:
            continue
        cols = np.arange(x0, x1 + 1)
        visible = trans_y < zbuf[cols]
        if not visible.any():
            continue
        rgb = np.array(COLOR_RGB[e.color], dtype=np.float64) / (1.0 + FOG * trans_y)
        sub = frame[y0 : y1 + 1, x0 : x1 + 1, :]
        sub[:, visible, :] = rgb[None, None, :]
