"""Analysis configuration and role maps, with strict JSON loading."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from types import MappingProxyType
from typing import Any, Mapping, Optional

from .model import StereotypeThresholds, WindowConfig


class ConfigError(ValueError):
    """Raised for unknown keys, type mismatches, or invalid values."""


class QuartileDirection(str, Enum):
    LOW_IS_BALANCED = "LowIsBalanced"
    HIGH_IS_BALANCED = "HighIsBalanced"


@dataclass(frozen=True)
class FightinWordsConfig:
    ngram_max: int = 3
    alpha: float = 0.01


@dataclass(frozen=True)
class AnalysisConfig:
    window: WindowConfig = field(default_factory=WindowConfig)
    stereotypes: StereotypeThresholds = field(default_factory=StereotypeThresholds)
    mixed_segment_fraction: float = 0.60
    quartile_direction: QuartileDirection = QuartileDirection.LOW_IS_BALANCED
    fightin_words: FightinWordsConfig = field(default_factory=FightinWordsConfig)
    rng_seed: int = 0

    def __post_init__(self):
        if not (0.5 < self.mixed_segment_fraction < 1):
            raise ConfigError("mixed_segment_fraction must be in (0.5, 1)")
        if self.fightin_words.ngram_max < 1:
            raise ConfigError("fightin_words.ngram_max must be >= 1")
        if not self.fightin_words.alpha > 0:
            raise ConfigError("fightin_words.alpha must be positive")
        if not (0 <= self.rng_seed < 2**64):
            raise ConfigError("rng_seed must be an unsigned 64-bit integer")

    def to_dict(self) -> dict:
        return {
            "window": self.window.to_dict(),
            "stereotypes": {
                "gray_min": self.stereotypes.gray_min,
                "red_min": self.stereotypes.red_min,
                "blue_min": self.stereotypes.blue_min,
            },
            "mixed_segment_fraction": self.mixed_segment_fraction,
            "quartile_direction": self.quartile_direction.value,
            "fightin_words": {
                "ngram_max": self.fightin_words.ngram_max,
                "alpha": self.fightin_words.alpha,
            },
            "rng_seed": self.rng_seed,
        }


@dataclass(frozen=True)
class RoleMap:
    """Speaker grouping and per-party thresholds for asymmetric settings."""

    parties: Mapping[str, str] = field(default_factory=dict)
    thresholds: Mapping[str, float] = field(default_factory=dict)
    expected_primary: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "parties", MappingProxyType(dict(self.parties)))
        object.__setattr__(self, "thresholds", MappingProxyType(dict(self.thresholds)))


# Schema: key -> (python types accepted, nested schema or None)
_NUM = (int, float)
_SCHEMA: dict[str, Any] = {
    "window": {
        "k_seconds": _NUM,
        "l_seconds": _NUM,
        "m": _NUM,
        "dominance_thresholds": "threshold_map",
        "silence_floor_seconds": _NUM,
    },
    "stereotypes": {"gray_min": _NUM, "red_min": _NUM, "blue_min": _NUM},
    "mixed_segment_fraction": _NUM,
    "quartile_direction": (str,),
    "fightin_words": {"ngram_max": (int,), "alpha": _NUM},
    "rng_seed": (int,),
}


def _check(doc: Any, schema: Any, path: str) -> None:
    if isinstance(schema, dict):
        if not isinstance(doc, dict):
            raise ConfigError(f"{path or '<root>'}: expected an object")
        for key, value in doc.items():
            sub = f"{path}.{key}" if path else key
            if key not in schema:
                raise ConfigError(f"{sub}: unknown key")
            _check(value, schema[key], sub)
    elif schema == "threshold_map":
        if not isinstance(doc, dict):
            raise ConfigError(f"{path}: expected an object of party -> fraction")
        for party, v in doc.items():
            if isinstance(v, bool) or not isinstance(v, _NUM):
                raise ConfigError(f"{path}.{party}: expected a number")
    else:
        # bool is an int subclass; never accept it for numeric fields
        if isinstance(doc, bool) or not isinstance(doc, schema):
            names = "/".join(t.__name__ for t in schema)
            raise ConfigError(f"{path}: expected {names}, got {type(doc).__name__}")


def config_from_dict(doc: Mapping[str, Any]) -> AnalysisConfig:
    """Build an :class:`AnalysisConfig` from a parsed JSON document.

    Missing keys take their defaults; unknown keys and type mismatches raise
    :class:`ConfigError` naming the offending key path.
    """
    _check(doc, _SCHEMA, "")
    w = doc.get("window", {})
    try:
        window = WindowConfig(
            k_seconds=float(w.get("k_seconds", 150.0)),
            l_seconds=float(w.get("l_seconds", 30.0)),
            m=float(w.get("m", 0.6)),
            dominance_thresholds={k: float(v) for k, v in w.get("dominance_thresholds", {}).items()},
            silence_floor_seconds=float(w.get("silence_floor_seconds", 1.0)),
        )
    except ValueError as exc:
        raise ConfigError(f"window: {exc}") from None
    s = doc.get("stereotypes", {})
    try:
        stereotypes = StereotypeThresholds(**{k: float(v) for k, v in s.items()})
    except ValueError as exc:
        raise ConfigError(f"stereotypes: {exc}") from None
    try:
        direction = QuartileDirection(doc.get("quartile_direction", "LowIsBalanced"))
    except ValueError:
        raise ConfigError(
            f"quartile_direction: expected LowIsBalanced or HighIsBalanced, "
            f"got {doc['quartile_direction']!r}"
        ) from None
    fw = doc.get("fightin_words", {})
    return AnalysisConfig(
        window=window,
        stereotypes=stereotypes,
        mixed_segment_fraction=float(doc.get("mixed_segment_fraction", 0.60)),
        quartile_direction=direction,
        fightin_words=FightinWordsConfig(
            ngram_max=fw.get("ngram_max", 3), alpha=float(fw.get("alpha", 0.01))
        ),
        rng_seed=doc.get("rng_seed", 0),
    )


def load_config(path: str | Path) -> AnalysisConfig:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return config_from_dict(doc)


def with_overrides(
    cfg: AnalysisConfig,
    k: Optional[float] = None,
    l: Optional[float] = None,
    m: Optional[float] = None,
) -> AnalysisConfig:
    """Apply individual command-line overrides on top of a loaded config."""
    w = cfg.window
    try:
        window = WindowConfig(
            k_seconds=w.k_seconds if k is None else float(k),
            l_seconds=w.l_seconds if l is None else float(l),
            m=w.m if m is None else float(m),
            dominance_thresholds=w.dominance_thresholds,
            silence_floor_seconds=w.silence_floor_seconds,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return replace(cfg, window=window)


def load_roles(path: str | Path) -> RoleMap:
    """Read a role map: ``{"parties": {...}, "thresholds": {...}, "expected_primary": ...}``."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return roles_from_dict(doc)


def roles_from_dict(doc: Mapping[str, Any]) -> RoleMap:
    if not isinstance(doc, dict):
        raise ConfigError("role map must be an object")
    for key in doc:
        if key not in ("parties", "thresholds", "expected_primary"):
            raise ConfigError(f"{key}: unknown key")
    parties = doc.get("parties", {})
    if not isinstance(parties, dict) or not all(isinstance(v, str) for v in parties.values()):
        raise ConfigError("parties: expected an object of speaker -> party")
    thresholds = doc.get("thresholds", {})
    if not isinstance(thresholds, dict):
        raise ConfigError("thresholds: expected an object of party -> fraction")
    for party, v in thresholds.items():
        if isinstance(v, bool) or not isinstance(v, _NUM):
            raise ConfigError(f"thresholds.{party}: expected a number")
        if not (0 < v <= 1):
            raise ConfigError(f"thresholds.{party}: must be in (0, 1]")
    primary = doc.get("expected_primary")
    if primary is not None and not isinstance(primary, str):
        raise ConfigError("expected_primary: expected a string")
    return RoleMap(
        parties=parties, thresholds={k: float(v) for k, v in thresholds.items()},
        expected_primary=primary,
    )
