"""Talk-time sharing dynamics: imbalance, windows, regimes, and stereotypes."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Optional, Sequence, Union

from .config import AnalysisConfig, RoleMap
from .model import (
    Composition,
    Conversation,
    ImbalanceResult,
    Regime,
    Stereotype,
    StereotypeThresholds,
    WindowConfig,
    WindowResult,
    validate_conversation,
)

log = logging.getLogger(__name__)

Span = tuple[float, float]


class AnalysisError(ValueError):
    """A conversation cannot be analyzed under the requested configuration."""


@dataclass(frozen=True)
class RegimeSequence:
    windows: tuple[WindowResult, ...]
    config_used: WindowConfig
    primary_party: str
    secondary_party: str

    @property
    def labels(self) -> list[Regime]:
        return [w.label for w in self.windows]

    def __len__(self) -> int:
        return len(self.windows)


@dataclass(frozen=True)
class MixedResult:
    first: Stereotype
    last: Stereotype
    transition: bool


@dataclass(frozen=True)
class DynamicsReport:
    id: str
    imbalance: ImbalanceResult
    regimes: RegimeSequence
    composition: Composition
    stereotype: Stereotype
    flips: int
    mixed: Optional[MixedResult] = None
    duration: float = 0.0

    def to_dict(self) -> dict:
        cfg = self.regimes.config_used
        return {
            "id": self.id,
            "duration": self.duration,
            "imbalance": {
                "value": self.imbalance.value,
                "primary": self.regimes.primary_party,
                "secondary": self.regimes.secondary_party,
            },
            "windows": [
                {
                    "start": w.start,
                    "end": w.end,
                    "label": w.label.value,
                    "dominant": w.dominant_party,
                    "fraction": w.dominance_fraction,
                    "talk": dict(sorted(w.talk_by_party.items())),
                }
                for w in self.regimes.windows
            ],
            "composition": {
                "blue": self.composition.blue_frac,
                "red": self.composition.red_frac,
                "gray": self.composition.gray_frac,
            },
            "stereotype": self.stereotype.value,
            "flips": self.flips,
            "mixed": None
            if self.mixed is None
            else {
                "first": self.mixed.first.value,
                "last": self.mixed.last.value,
                "transition": self.mixed.transition,
            },
            "config": cfg.to_dict(),
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "DynamicsReport":
        c = doc.get("config", {})
        cfg = WindowConfig(
            k_seconds=c.get("k_seconds", 150.0),
            l_seconds=c.get("l_seconds", 30.0),
            m=c.get("m", 0.6),
            dominance_thresholds=c.get("dominance_thresholds", {}),
            silence_floor_seconds=c.get("silence_floor_seconds", 1.0),
        )
        windows = tuple(
            WindowResult(
                start=w["start"],
                end=w["end"],
                talk_by_party=w.get("talk", {}),
                label=Regime(w["label"]),
                dominant_party=w.get("dominant"),
                dominance_fraction=w["fraction"],
            )
            for w in doc["windows"]
        )
        imb = doc["imbalance"]
        seq = RegimeSequence(windows, cfg, imb["primary"], imb["secondary"])
        comp = doc["composition"]
        mixed = doc.get("mixed")
        return cls(
            id=doc["id"],
            imbalance=ImbalanceResult(imb["value"], imb["primary"], imb["secondary"]),
            regimes=seq,
            composition=Composition(comp["blue"], comp["red"], comp["gray"]),
            stereotype=Stereotype(doc["stereotype"]),
            flips=doc["flips"],
            mixed=None
            if mixed is None
            else MixedResult(Stereotype(mixed["first"]), Stereotype(mixed["last"]), mixed["transition"]),
            duration=doc.get("duration", 0.0),
        )


def _overlap(start: float, end: float, span: Span) -> float:
    lo = start if start > span[0] else span[0]
    hi = end if end < span[1] else span[1]
    return hi - lo if hi > lo else 0.0


def _check_span(conv: Conversation, span: Optional[Span]) -> Span:
    if span is None:
        return (0.0, conv.duration)
    a, b = span
    if not (0 <= a <= b <= conv.duration):
        raise ValueError(f"span {span} outside [0, {conv.duration}]")
    return (a, b)


def talk_time(conv: Conversation, party: str, span: Optional[Span] = None) -> float:
    """Seconds of speech by ``party``, clipped to ``span`` when given.

    Simultaneous speech is not deduplicated: overlapping utterances by
    different speakers each count in full.
    """
    if party not in conv.parties:
        raise KeyError(f"unknown party {party!r} in conversation {conv.id!r}")
    return party_talk(conv, span)[party]


def party_talk(conv: Conversation, span: Optional[Span] = None) -> dict[str, float]:
    """Talk seconds for every party of ``conv`` inside ``span``."""
    a, b = _check_span(conv, span)
    return party_talk_window(conv, a, b)


def rank_parties(talk: Mapping[str, float]) -> list[str]:
    """Parties from most to least talkative; ties go to the smaller id."""
    return sorted(talk, key=lambda p: (-talk[p], p))


def conversation_imbalance(conv: Conversation) -> ImbalanceResult:
    """Share of total talk-time held by the most talkative party."""
    talk = party_talk(conv)
    total = sum(talk[p] for p in sorted(talk))
    if total <= 0:
        raise AnalysisError(f"silent conversation {conv.id!r}")
    ranking = rank_parties(talk)
    if len(ranking) > 1 and talk[ranking[0]] == talk[ranking[1]]:
        log.warning(
            "conversation %r: primary tie between %r and %r, using %r",
            conv.id, ranking[0], ranking[1], ranking[0],
        )
    return ImbalanceResult(
        value=talk[ranking[0]] / total,
        primary=ranking[0],
        secondary=ranking[1] if len(ranking) > 1 else ranking[0],
        ranking=tuple(ranking),
        talk_by_party=talk,
    )


def label_window(
    talk: Mapping[str, float], cfg: WindowConfig, primary: str
) -> tuple[Regime, Optional[str], float]:
    """Label one window from per-party talk seconds.

    A party dominates when its share strictly exceeds its own threshold.
    With several such parties the widest margin wins and an exact margin
    tie leaves the window gray. Returns ``(label, dominant_party, fraction)``
    where ``fraction`` is the dominant (or, for gray windows, the largest)
    share, and 0 for silent windows.
    """
    parties = sorted(talk)
    total = sum(talk[p] for p in parties)
    if total <= 0 or total < cfg.silence_floor_seconds:
        return Regime.GRAY, None, 0.0
    shares = {p: talk[p] / total for p in parties}
    candidates = [p for p in parties if shares[p] > cfg.threshold(p)]
    if not candidates:
        return Regime.GRAY, None, max(shares.values())
    if len(candidates) > 1:
        margins = sorted(
            ((shares[p] - cfg.threshold(p), p) for p in candidates), reverse=True
        )
        if margins[0][0] == margins[1][0]:
            return Regime.GRAY, None, max(shares.values())
        winner = margins[0][1]
    else:
        winner = candidates[0]
    label = Regime.BLUE if winner == primary else Regime.RED
    return label, winner, shares[winner]


def window_count(duration: float, k: float, l: float) -> int:
    if duration < k:
        return 0
    return math.floor((duration - k) / l) + 1


def make_windows(
    conv: Conversation,
    cfg: WindowConfig,
    primary: Optional[str] = None,
    secondary: Optional[str] = None,
    span: Optional[Span] = None,
) -> RegimeSequence:
    """Slide full K-second windows in steps of L over the conversation.

    Windows start at ``span[0] + i*L`` and only full windows are kept, so a
    tail shorter than L after the last window is left uncovered. Roles
    default to the conversation-level ranking.
    """
    a, b = _check_span(conv, span)
    n = window_count(b - a, cfg.k_seconds, cfg.l_seconds)
    if n == 0:
        raise AnalysisError(
            f"conversation {conv.id!r} shorter than one window "
            f"({b - a:g}s < K={cfg.k_seconds:g}s)"
        )
    if primary is None or secondary is None:
        imb = conversation_imbalance(conv)
        primary = imb.primary if primary is None else primary
        if secondary is None:
            rest = [p for p in imb.ranking if p != primary]
            secondary = rest[0] if rest else primary
    windows = []
    for i in range(n):
        ws = a + i * cfg.l_seconds
        we = ws + cfg.k_seconds
        talk = party_talk_window(conv, ws, we)
        label, dom, frac = label_window(talk, cfg, primary)
        windows.append(WindowResult(ws, we, talk, label, dom, frac))
    return RegimeSequence(tuple(windows), cfg, primary, secondary)


def party_talk_window(conv: Conversation, start: float, end: float) -> dict[str, float]:
    # No bounds check: the last window may poke past duration by an ulp.
    out = {p: 0.0 for p in conv.parties}
    for u in conv.utterances:
        if u.end <= start or u.start >= end:
            continue
        out[conv.party_of[u.speaker]] += _overlap(u.start, u.end, (start, end))
    return out


def composition(seq: Union[RegimeSequence, Sequence[Regime]]) -> Composition:
    labels = seq.labels if isinstance(seq, RegimeSequence) else list(seq)
    if not labels:
        raise AnalysisError("cannot compute composition of an empty window sequence")
    n = len(labels)
    blue = sum(1 for x in labels if x == Regime.BLUE)
    red = sum(1 for x in labels if x == Regime.RED)
    gray = n - blue - red
    return Composition(blue / n, red / n, gray / n)


def classify(c: Composition, t: StereotypeThresholds = StereotypeThresholds()) -> Stereotype:
    """Map a composition to its stereotype.

    Checked in order dominating-throughout, alternating-dominance,
    back-and-forth; the first strict exceedance wins.
    """
    if c.blue_frac > t.blue_min:
        return Stereotype.DOMINATING_THROUGHOUT
    if c.red_frac > t.red_min:
        return Stereotype.ALTERNATING_DOMINANCE
    if c.gray_frac > t.gray_min:
        return Stereotype.BACK_AND_FORTH
    return Stereotype.OTHER


def count_flips(seq: Union[RegimeSequence, Iterable[Regime]]) -> int:
    """Number of blue/red alternations once gray windows are dropped."""
    labels = seq.labels if isinstance(seq, RegimeSequence) else seq
    runs = 0
    prev = None
    for lab in labels:
        if lab == Regime.GRAY:
            continue
        if lab != prev:
            runs += 1
            prev = lab
    return max(runs - 1, 0)


def mixed_dynamics(
    conv: Conversation,
    cfg: WindowConfig,
    t: StereotypeThresholds = StereotypeThresholds(),
    frac: float = 0.6,
    primary: Optional[str] = None,
    secondary: Optional[str] = None,
) -> MixedResult:
    """Classify the leading and trailing ``frac`` of a conversation separately.

    The two segments overlap when ``frac > 0.5``. Roles stay fixed at the
    conversation level so colors mean the same thing in both segments.
    """
    if not (0.5 < frac < 1):
        raise ValueError("segment fraction must be in (0.5, 1)")
    d = conv.duration
    cut = frac * d
    if cut < cfg.k_seconds:
        raise AnalysisError(
            f"conversation {conv.id!r}: {frac:.0%} segment ({cut:g}s) shorter than K={cfg.k_seconds:g}s"
        )
    first_seq = make_windows(conv, cfg, primary, secondary, span=(0.0, cut))
    last_seq = make_windows(
        conv, cfg, first_seq.primary_party, first_seq.secondary_party, span=(d - cut, d)
    )
    first = classify(composition(first_seq), t)
    last = classify(composition(last_seq), t)
    transition = first != last and Stereotype.OTHER not in (first, last)
    return MixedResult(first, last, transition)


def apply_roles(conv: Conversation, cfg: WindowConfig, roles: Optional[RoleMap]):
    """Group speakers into parties and merge per-party thresholds."""
    if roles is None:
        return conv, cfg
    if roles.parties:
        conv = conv.with_party_map(roles.parties)
    if roles.thresholds:
        merged = {**cfg.dominance_thresholds, **roles.thresholds}
        cfg = replace(cfg, dominance_thresholds=merged)
    return conv, cfg


def analyze(
    conv: Conversation, cfg: AnalysisConfig = AnalysisConfig(), roles: Optional[RoleMap] = None
) -> DynamicsReport:
    """Run the full dynamics pipeline on one conversation.

    Without a role map the primary party is the conversation-level most
    talkative one; a role map's ``expected_primary`` overrides it. ``mixed``
    is None when the conversation is too short for both segments to hold a
    full window.
    """
    conv, wcfg = apply_roles(conv, cfg.window, roles)
    errors = [f for f in validate_conversation(conv) if f.severity == "error"]
    if errors:
        raise AnalysisError(f"conversation {conv.id!r} invalid: " + "; ".join(map(str, errors)))
    if len(conv.parties) != 2:
        raise AnalysisError(
            f"conversation {conv.id!r} has {len(conv.parties)} parties; "
            "supply a role map grouping speakers into two sides"
        )
    imb = conversation_imbalance(conv)
    primary = imb.primary
    if roles is not None and roles.expected_primary is not None:
        if roles.expected_primary not in conv.parties:
            raise AnalysisError(
                f"expected primary {roles.expected_primary!r} not a party of {conv.id!r}"
            )
        primary = roles.expected_primary
    secondary = next(p for p in conv.parties if p != primary)
    seq = make_windows(conv, wcfg, primary, secondary)
    comp = composition(seq)
    try:
        mixed = mixed_dynamics(
            conv, wcfg, cfg.stereotypes, cfg.mixed_segment_fraction, primary, secondary
        )
    except AnalysisError as exc:
        log.info("%s; mixed dynamics not computed", exc)
        mixed = None
    imb = ImbalanceResult(
        imb.value, primary, secondary, imb.ranking, imb.talk_by_party
    )
    return DynamicsReport(
        id=conv.id,
        imbalance=imb,
        regimes=seq,
        composition=comp,
        stereotype=classify(comp, cfg.stereotypes),
        flips=count_flips(seq),
        mixed=mixed,
        duration=conv.duration,
    )
