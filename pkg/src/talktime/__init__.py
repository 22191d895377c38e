"""Talk-time sharing dynamics for timestamped conversations."""

__version__ = "0.1.0"

from .config import AnalysisConfig, RoleMap, load_config, load_roles  # noqa: E402
from .dynamics import (  # noqa: E402
    DynamicsReport,
    analyze,
    classify,
    composition,
    conversation_imbalance,
    count_flips,
    label_window,
    make_windows,
    mixed_dynamics,
    talk_time,
)
from .model import (  # noqa: E402
    Composition,
    Conversation,
    Regime,
    Stereotype,
    StereotypeThresholds,
    Utterance,
    WindowConfig,
    validate_conversation,
)

__all__ = [
    "AnalysisConfig", "Composition", "Conversation", "DynamicsReport", "Regime", "RoleMap",
    "Stereotype", "StereotypeThresholds", "Utterance", "WindowConfig", "analyze", "classify",
    "composition", "conversation_imbalance", "count_flips", "label_window", "load_config",
    "load_roles", "make_windows", "mixed_dynamics", "talk_time", "validate_conversation",
]
