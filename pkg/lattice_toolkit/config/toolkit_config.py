"""
Configuration parameters for the finite lattice toolkit.
"""

import os
from dataclasses import dataclass, fields, replace
from typing import Optional

from dotenv import load_dotenv

ENV_PREFIX = "LATTICE_TOOLKIT_"


@dataclass(frozen=True)
class ToolkitConfig:
    """Limits and defaults shared by every computation."""

    # Table materialisation
    MAX_ELEMENTS: int = 5000  # meet/join tables are quadratic in this
    MAX_PRIME: int = 255  # GF(p) arithmetic on small integers

    # Enumeration caps
    MAX_CONGRUENCES: int = 2 ** 20
    IDENTITY_BUDGET: int = 10 ** 8  # term evaluations per identity check
    FILTER_SUBSET_LIMIT: int = 12  # close every nonempty subset up to this size
    ORACLE_MAX_ELEMENTS: int = 8  # brute-force partition oracle
    ELEMENT_ORDER_LIMIT: int = 16  # element-order profiles of permutation groups
    RIGID_SEARCH_MAX_SIZE: int = 9

    # Verification suite
    RANDOM_SEED: int = 42
    CORPUS_SIZE: int = 60
    CORPUS_MAX_ELEMENTS: int = 10
    CORPUS_PAIRS: int = 200
    TOWER_STAGES: int = 6

    @classmethod
    def from_env(cls, dotenv_path: Optional[str] = None) -> "ToolkitConfig":
        """Build a config from defaults overridden by LATTICE_TOOLKIT_* variables."""
        load_dotenv(dotenv_path)
        overrides = {}
        for f in fields(cls):
            raw = os.environ.get(ENV_PREFIX + f.name)
            if raw is not None:
                overrides[f.name] = int(raw)
        return cls(**overrides)

    def with_overrides(self, **overrides) -> "ToolkitConfig":
        """Return a copy with some fields replaced (None values are ignored)."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


_active = ToolkitConfig()


def get_config(config: Optional[ToolkitConfig] = None) -> ToolkitConfig:
    """Return `config` if given, otherwise the process-wide config."""
    return config if config is not None else _active


def set_config(config: ToolkitConfig) -> None:
    """Replace the process-wide config."""
    global _active
    _active = config
