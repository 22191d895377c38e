"""Domain types shared across the package.

All times are seconds stored as Python floats. Instances are immutable once
built; ``Conversation.build`` is the canonical constructor and takes care of
sorting utterances and filling in defaults.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

DEFAULT_MAX_ENJOYMENT = 9


class Regime(str, Enum):
    """Dominance label of a single conversation window."""

    BLUE = "blue"
    RED = "red"
    GRAY = "gray"

    @property
    def letter(self) -> str:
        return self.value[0].upper()


class Stereotype(str, Enum):
    DOMINATING_THROUGHOUT = "DominatingThroughout"
    BACK_AND_FORTH = "BackAndForth"
    ALTERNATING_DOMINANCE = "AlternatingDominance"
    OTHER = "Other"


@dataclass(frozen=True)
class Utterance:
    speaker: str
    start: float
    end: float
    text: Optional[str] = None

    @property
    def duration(self) -> float:
        return self.end - self.start


def _utterance_key(u: Utterance):
    return (u.start, u.speaker, u.end, u.text or "")


@dataclass(frozen=True)
class Finding:
    severity: str  # "error" or "warning"
    message: str
    index: Optional[int] = None  # utterance index, None for conversation-level

    def __str__(self) -> str:
        where = f" (utterance {self.index})" if self.index is not None else ""
        return f"{self.severity}: {self.message}{where}"


@dataclass(frozen=True, eq=True)
class Conversation:
    id: str
    utterances: tuple[Utterance, ...]
    duration: float
    parties: tuple[str, ...]
    party_of: Mapping[str, str] = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "party_of", MappingProxyType(dict(self.party_of)))

    def __eq__(self, other):
        if not isinstance(other, Conversation):
            return NotImplemented
        return (
            self.id == other.id
            and self.utterances == other.utterances
            and self.duration == other.duration
            and self.parties == other.parties
            and dict(self.party_of) == dict(other.party_of)
        )

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def build(
        cls,
        id: str,
        utterances: Iterable[Utterance],
        duration: Optional[float] = None,
        party_of: Optional[Mapping[str, str]] = None,
        parties: Optional[Iterable[str]] = None,
    ) -> "Conversation":
        """Build a conversation with canonical ordering and defaults.

        ``party_of`` defaults to identity over the utterance speakers and
        ``duration`` to the latest utterance end. ``parties`` may name
        parties that never speak (e.g. a silent participant).
        """
        utts = canonical_order(utterances)
        mapping = {u.speaker: u.speaker for u in utts}
        if party_of:
            mapping.update(party_of)
        all_parties = set(mapping[u.speaker] for u in utts)
        if party_of:
            all_parties.update(party_of.values())
        if parties:
            all_parties.update(parties)
        if duration is None:
            duration = max((u.end for u in utts), default=0.0)
        return cls(
            id=id,
            utterances=utts,
            duration=float(duration),
            parties=tuple(sorted(all_parties)),
            party_of=mapping,
        )

    def speakers(self) -> list[str]:
        return sorted({u.speaker for u in self.utterances})

    def with_party_map(self, party_of: Mapping[str, str]) -> "Conversation":
        """Return a copy whose speakers are grouped into parties by ``party_of``.

        Speakers absent from the map keep being their own party.
        """
        mapping = {s: party_of.get(s, s) for s in self.party_of}
        for s, p in party_of.items():
            mapping.setdefault(s, p)
        parties = {mapping[u.speaker] for u in self.utterances}
        parties.update(party_of.values())
        return Conversation(
            id=self.id,
            utterances=self.utterances,
            duration=self.duration,
            parties=tuple(sorted(parties)),
            party_of=mapping,
        )


def canonical_order(utterances: Iterable[Utterance]) -> tuple[Utterance, ...]:
    """Sort utterances by start, then speaker id."""
    return tuple(sorted(utterances, key=_utterance_key))


def validate_conversation(conv: Conversation) -> list[Finding]:
    """Check every structural invariant of a conversation.

    Returns an empty list when the conversation is well formed. Problems are
    reported as findings rather than raised so callers can decide what is
    fatal.
    """
    findings: list[Finding] = []
    max_end = -math.inf
    for i, u in enumerate(conv.utterances):
        if not (math.isfinite(u.start) and math.isfinite(u.end)):
            findings.append(Finding("error", "non-finite timestamp", i))
            continue
        if u.start < 0:
            findings.append(Finding("error", "negative start time", i))
        if u.end <= u.start:
            findings.append(Finding("error", "non-positive duration", i))
        if u.speaker not in conv.party_of:
            findings.append(Finding("error", f"speaker {u.speaker!r} has no party", i))
        max_end = max(max_end, u.end)
    if conv.utterances and conv.duration < max_end:
        findings.append(
            Finding("error", f"duration {conv.duration} shorter than last utterance end {max_end}")
        )
    if list(conv.utterances) != list(canonical_order(conv.utterances)):
        findings.append(Finding("warning", "utterances not in canonical order"))
    if len(set(conv.parties)) < 2:
        findings.append(Finding("error", "fewer than 2 distinct parties"))
    return findings


@dataclass(frozen=True)
class WindowConfig:
    """Sliding-window parameters.

    ``m`` is the symmetric dominance threshold; ``dominance_thresholds``
    overrides it per party (the asymmetric, role-adapted case).
    """

    k_seconds: float = 150.0
    l_seconds: float = 30.0
    m: float = 0.6
    dominance_thresholds: Mapping[str, float] = field(default_factory=dict)
    silence_floor_seconds: float = 1.0

    def __post_init__(self):
        object.__setattr__(
            self, "dominance_thresholds", MappingProxyType(dict(self.dominance_thresholds))
        )
        if not (self.k_seconds > 0 and self.l_seconds > 0):
            raise ValueError("window length and stride must be positive")
        if self.l_seconds > self.k_seconds:
            raise ValueError(
                f"stride L={self.l_seconds} exceeds window length K={self.k_seconds}"
            )
        for party, thr in [("*", self.m), *self.dominance_thresholds.items()]:
            if not (0 < thr <= 1):
                raise ValueError(f"dominance threshold for {party!r} must be in (0, 1], got {thr}")
        if self.silence_floor_seconds < 0:
            raise ValueError("silence floor must be non-negative")

    def threshold(self, party: str) -> float:
        return self.dominance_thresholds.get(party, self.m)

    def to_dict(self) -> dict:
        return {
            "k_seconds": self.k_seconds,
            "l_seconds": self.l_seconds,
            "m": self.m,
            "dominance_thresholds": dict(sorted(self.dominance_thresholds.items())),
            "silence_floor_seconds": self.silence_floor_seconds,
        }


@dataclass(frozen=True)
class WindowResult:
    start: float
    end: float
    talk_by_party: Mapping[str, float]
    label: Regime
    dominant_party: Optional[str]
    dominance_fraction: float


@dataclass(frozen=True)
class Composition:
    blue_frac: float
    red_frac: float
    gray_frac: float

    def __post_init__(self):
        for v in (self.blue_frac, self.red_frac, self.gray_frac):
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"composition fraction out of range: {v}")
        if abs(self.blue_frac + self.red_frac + self.gray_frac - 1.0) > 1e-12:
            raise ValueError("composition fractions must sum to 1")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.blue_frac, self.red_frac, self.gray_frac)


@dataclass(frozen=True)
class StereotypeThresholds:
    gray_min: float = 0.60
    red_min: float = 0.25
    blue_min: float = 0.75

    def __post_init__(self):
        for name in ("gray_min", "red_min", "blue_min"):
            v = getattr(self, name)
            if not (0 < v < 1):
                raise ValueError(f"{name} must be in (0, 1), got {v}")


@dataclass(frozen=True)
class SurveyRecord:
    conversation_id: str
    speaker: str
    enjoyment: int
    gender: Optional[str] = None
    age: Optional[int] = None
    comment_positive: Optional[str] = None
    comment_negative: Optional[str] = None
    outcome: Optional[str] = None


@dataclass(frozen=True)
class ImbalanceResult:
    """Conversation-level imbalance.

    ``secondary`` is the second-ranked party; ``ranking`` lists every party
    from most to least talkative (useful with more than two parties).
    """

    value: float
    primary: str
    secondary: str
    ranking: tuple[str, ...] = ()
    talk_by_party: Mapping[str, float] = field(default_factory=dict)
