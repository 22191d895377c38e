"""Seeded synthetic conversations with planted talk-share regimes."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .model import Conversation, Utterance

REGIMES = ("PrimaryLed", "SecondaryLed", "Balanced", "Silent")
SHARE_TOLERANCE = 0.03
MAX_ATTEMPTS = 10


class SynthesisError(RuntimeError):
    pass


@dataclass(frozen=True)
class Segment:
    length: float
    regime: str
    share: float = 0.5

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise ValueError(f"unknown regime {self.regime!r}; expected one of {REGIMES}")
        if not self.length > 0:
            raise ValueError("segment length must be positive")
        if self.regime in ("PrimaryLed", "SecondaryLed") and not (0.5 < self.share <= 1):
            raise ValueError(f"led segment share must be in (0.5, 1], got {self.share}")


def primary_led(length: float, share: float) -> Segment:
    return Segment(length, "PrimaryLed", share)


def secondary_led(length: float, share: float) -> Segment:
    return Segment(length, "SecondaryLed", share)


def balanced(length: float) -> Segment:
    return Segment(length, "Balanced", 0.5)


def silent(length: float) -> Segment:
    return Segment(length, "Silent", 0.0)


@dataclass(frozen=True)
class Blueprint:
    segments: tuple[Segment, ...]
    turn_seconds: float = 5.0
    seed: int = 0
    speakers: tuple[str, str] = ("A", "B")
    id: str = "synthetic"

    @property
    def length(self) -> float:
        return sum(s.length for s in self.segments)

    @classmethod
    def from_dict(cls, doc: Mapping) -> "Blueprint":
        segs = tuple(
            Segment(float(s["length"]), s["regime"], float(s.get("share", 0.5)))
            for s in doc["segments"]
        )
        return cls(
            segments=segs,
            turn_seconds=float(doc.get("turn_seconds", 5.0)),
            seed=int(doc.get("seed", 0)),
            speakers=tuple(doc.get("speakers", ("A", "B"))),
            id=str(doc.get("id", "synthetic")),
        )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "segments": [
                {"length": s.length, "regime": s.regime, "share": s.share} for s in self.segments
            ],
            "turn_seconds": self.turn_seconds,
            "seed": self.seed,
            "speakers": list(self.speakers),
        }


def load_blueprint(path: str | Path) -> Blueprint:
    return Blueprint.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def _segment_turns(
    rng: random.Random, t0: float, length: float, leader: str, follower: str,
    share: float, turn_seconds: float,
) -> list[Utterance]:
    # Raw jittered turns alternate between the two speakers, starting at random.
    first_is_leader = rng.random() < 0.5
    raw: list[tuple[bool, float]] = []
    total = 0.0
    i = 0
    while total < length or len(raw) < 2:
        d = rng.uniform(0.5 * turn_seconds, 1.5 * turn_seconds)
        raw.append(((i % 2 == 0) == first_is_leader, d))
        total += d
        i += 1
    lead_raw = sum(d for is_lead, d in raw if is_lead)
    follow_raw = total - lead_raw
    lead_scale = share * length / lead_raw
    follow_scale = (1 - share) * length / follow_raw

    utts = []
    seg_end = t0 + length
    cursor = t0
    for k, (is_lead, d) in enumerate(raw):
        d *= lead_scale if is_lead else follow_scale
        start = cursor
        end = seg_end if k == len(raw) - 1 else min(cursor + d, seg_end)
        cursor = end
        if end - start <= 1e-9:
            continue
        speaker = leader if is_lead else follower
        utts.append(Utterance(speaker, start, end, f"{speaker.lower()}{k}"))
    return utts


def _realized_share(utts: Sequence[Utterance], speaker: str) -> float:
    total = sum(u.duration for u in utts)
    return sum(u.duration for u in utts if u.speaker == speaker) / total if total else 0.0


def synthesize(bp: Blueprint) -> Conversation:
    """Generate a conversation following ``bp``.

    Within each segment the two speakers alternate turns with jittered
    lengths; the leading speaker's turns are rescaled so its talk share over
    the segment hits the target. Speech never overlaps.
    """
    primary, secondary = bp.speakers
    rng = random.Random(bp.seed)
    utts: list[Utterance] = []
    t0 = 0.0
    for seg in bp.segments:
        if seg.regime == "Silent":
            t0 += seg.length
            continue
        if seg.regime == "SecondaryLed":
            leader, follower, share = secondary, primary, seg.share
        else:
            leader, follower, share = primary, secondary, seg.share
        for _ in range(MAX_ATTEMPTS):
            part = _segment_turns(rng, t0, seg.length, leader, follower, share, bp.turn_seconds)
            if abs(_realized_share(part, leader) - share) <= SHARE_TOLERANCE:
                break
        else:
            raise SynthesisError(
                f"could not reach share {share} for {seg.regime} segment at {t0}s "
                f"after {MAX_ATTEMPTS} attempts"
            )
        utts.extend(part)
        t0 += seg.length
    return Conversation.build(bp.id, utts, duration=t0, parties=bp.speakers)
