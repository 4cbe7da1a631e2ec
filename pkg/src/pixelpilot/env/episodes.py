"""Run scripted-expert episodes and record (frame, action) trajectories."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..actions import Action
from .annotate import Intent, annotate_episode
from .expert import ExpertController, ExpertStyle
from .world import WorldState, step
from .render import render

INTENT_TIMEOUT_TICKS = 400


@dataclass
class EpisodeLog:
    frames: list[np.ndarray] = field(default_factory=list)
    actions: list[Action] = field(default_factory=list)
    intent_spans: list[tuple[int, int, Intent]] = field(default_factory=list)
    failed_intents: list[Intent] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.actions)

    def annotation_doc(self) -> dict:
        return annotate_episode(self.intent_spans)


def run_episode(
    state: WorldState,
    script: list[Intent],
    style: ExpertStyle,
    rng: np.random.Generator,
    dwell_range: tuple[int, int] = (2, 8),
) -> EpisodeLog:
    """Execute a list of intents with one expert style; returns the log.

    Each intent records its [start, end) tick span; a short no-op dwell
    separates intents. Unreachable targets mark the intent failed and move on.
    """
    log = EpisodeLog()
    frame = render(state)

    for intent in script:
        ctrl = ExpertController(intent=intent, style=style, rng=rng)
        start = log.length
        while not (ctrl.done or ctrl.failed):
            action = ctrl.act(state)
            if ctrl.done or ctrl.failed:
                break
            log.frames.append(frame)
            log.actions.append(action)
            state, frame = step(state, action)
            if ctrl.ticks >= INTENT_TIMEOUT_TICKS:
                ctrl.failed = True
        log.intent_spans.append((start, log.length, intent))
        if ctrl.failed:
            log.failed_intents.append(intent)
        for _ in range(int(rng.integers(*dwell_range))):
            log.frames.append(frame)
            log.actions.append(Action())
            state, frame = step(state, Action())
    return log
