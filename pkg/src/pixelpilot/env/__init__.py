from .annotate import VOCABULARY, Intent, annotate_episode, instruction_spans
from .checkpoint import restore, save
from .episodes import EpisodeLog, run_episode
from .expert import ExpertController, ExpertStyle, bfs_path
from .render import render
from .scenarios import SCENARIOS, build_arena_world, build_maze_world
from .world import (
    COLOR_NAMES,
    COLOR_RGB,
    ENTITY_KINDS,
    FPS,
    FRAME_H,
    FRAME_W,
    Entity,
    WorldState,
    step,
)

__all__ = [
    "VOCABULARY", "Intent", "annotate_episode", "instruction_spans",
    "restore", "save", "EpisodeLog", "run_episode",
    "ExpertController", "ExpertStyle", "bfs_path", "render",
    "SCENARIOS", "build_arena_world", "build_maze_world",
    "COLOR_NAMES", "COLOR_RGB", "ENTITY_KINDS", "FPS", "FRAME_H", "FRAME_W",
    "Entity", "WorldState", "step",
]
