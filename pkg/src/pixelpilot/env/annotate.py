"""Text annotation of episodes: intent timeline -> instruction document.

The output document has a narrative string plus an instruction list with
start/end timestamps (seconds, two decimals). Instruction text comes from
descriptive templates over a closed vocabulary, so every annotation is
guaranteed encodable by the text encoder.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .world import FPS


@dataclass(frozen=True)
class Intent:
    kind: str                      # goto | pickup | press | wander
    color: str | None = None
    entity_kind: str | None = None  # pillar | door | pickup | button
    duration: int = 0              # wander only, ticks

    def text(self) -> str | None:
        """Instruction string, or None for unannotated filler behavior."""
        if self.kind == "goto":
            return f"go to the {self.color} {self.entity_kind}"
        if self.kind == "pickup":
            return f"pick up the {self.color} pickup"
        if self.kind == "press":
            return f"press the {self.color} button"
        return None

    def phrase(self) -> str:
        t = self.text()
        return t[0].lower() + t[1:] if t else "looks around"


def build_vocabulary() -> tuple[str, ...]:
    words: set[str] = set()
    from .world import COLOR_NAMES, ENTITY_KINDS

    for color in COLOR_NAMES:
        for ek in ENTITY_KINDS:
            for intent in (
                Intent("goto", color, ek),
                Intent("pickup", color, "pickup"),
                Intent("press", color, "button"),
            ):
                words.update(intent.text().split())
    return tuple(sorted(words))


VOCABULARY = build_vocabulary()


def tick_to_timestamp(tick: int) -> str:
    return f"{tick / FPS:.2f}"


def timestamp_to_tick(ts: str) -> int:
    return round(float(ts) * FPS)


def annotate_episode(intent_spans: list[tuple[int, int, Intent]]) -> dict:
    """Emit the annotation document for an episode's intent timeline.

    `intent_spans` are (start_tick, end_tick_exclusive, intent), in order.
    Wander intents produce no instruction (they are deliberate unannotated
    filler); everything else becomes one instruction entry.
    """
    instructions = []
    phrases = []
    for start, end, intent in intent_spans:
        phrases.append(intent.phrase())
        text = intent.text()
        if text is None:
            continue
        instructions.append(
            {
                "start": tick_to_timestamp(start),
                "end": tick_to_timestamp(max(end - 1, start)),
                "instruction": text,
            }
        )
    narrative = "the player " + ", then ".join(phrases) if phrases else "the player idles"
    return {"narrative": narrative, "instructions": instructions}


def annotation_to_json(doc: dict) -> str:
    return json.dumps(doc, indent=1)


def instruction_spans(doc: dict) -> list[tuple[int, int, str]]:
    """Parse instruction entries back to (start_tick, end_tick_inclusive, text)."""
    out = []
    for ins in doc["instructions"]:
        out.append((timestamp_to_tick(ins["start"]), timestamp_to_tick(ins["end"]), ins["instruction"]))
    return out
