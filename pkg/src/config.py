"""
Centralized configuration for the Waldschmidt bound engine
"""

from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Dict, Union

import gmpy2

from .exceptions import ConfigError


def _largest_prime_below_2_62() -> int:
    return int(gmpy2.prev_prime(1 << 62))


@dataclass
class EngineConfig:
    """Configuration settings for the bound engine and its oracle"""

    # Oracle settings
    DEFAULT_PRIME: int = field(default_factory=_largest_prime_below_2_62)
    DEFAULT_SEED: int = 20240229
    COLUMN_CAP: int = 3000

    # Derivation settings
    MAX_STEPS: int = 50
    SEARCH_DEPTH: int = 3
    SEARCH_SPLIT_CAP: int = 2000

    # Batch settings
    JOBS: int = 1

    # Certificate format
    CERT_VERSION: int = 1

    # Config-file keys and the fields they set
    FILE_KEYS: Dict[str, str] = field(
        default_factory=lambda: {
            "prime": "DEFAULT_PRIME",
            "seed": "DEFAULT_SEED",
            "jobs": "JOBS",
            "column_cap": "COLUMN_CAP",
            "max_steps": "MAX_STEPS",
            "search_depth": "SEARCH_DEPTH",
        },
        compare=False,
        repr=False,
    )

    def with_overrides(self, **overrides: int) -> "EngineConfig":
        """Return a copy with the given fields replaced"""
        known = {f.name for f in fields(self)}
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise ConfigError(f"Unknown configuration field(s): {', '.join(unknown)}")
        return replace(self, **overrides)

    def adopt(self, other: "EngineConfig") -> None:
        """Copy every setting from ``other`` into this instance"""
        for f in fields(self):
            setattr(self, f.name, getattr(other, f.name))


def load_config_file(
    path: Union[str, Path], base: "EngineConfig | None" = None
) -> EngineConfig:
    """Read a key=value configuration file on top of ``base``"""
    base = base or config
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Config file '{path}' not found")

    overrides: Dict[str, int] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got '{raw}'")

        key, value = (part.strip() for part in line.split("=", 1))
        attr = base.FILE_KEYS.get(key.lower())
        if attr is None:
            raise ConfigError(f"{path}:{lineno}: unknown key '{key}'")

        if attr == "DEFAULT_PRIME" and value.lower() == "auto":
            overrides[attr] = _largest_prime_below_2_62()
            continue
        try:
            overrides[attr] = int(value)
        except ValueError:
            raise ConfigError(
                f"{path}:{lineno}: '{key}' needs an integer, got '{value}'"
            )

    prime = overrides.get("DEFAULT_PRIME")
    if prime is not None and not gmpy2.is_prime(prime):
        raise ConfigError(f"{path}: prime={prime} is not prime")
    if overrides.get("JOBS", 1) < 1:
        raise ConfigError(f"{path}: jobs must be at least 1")

    return base.with_overrides(**overrides)


# Global configuration instance
config = EngineConfig()
