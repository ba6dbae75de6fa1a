"""
Configuration management and catalog registry.
Loads search defaults and the catalog registry from YAML files under config/.
"""

import yaml
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from pydantic import Field
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource

from knotball.models.errors import UnknownName


ROOT_DIR = Path(__file__).resolve().parent.parent
CONFIG_DIR = ROOT_DIR / "config"
DATA_DIR = Path(__file__).resolve().parent / "data"


def _read_yaml(path: Path) -> Dict[str, Any]:
    if not path.exists():
        raise FileNotFoundError(f"Config file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


class Settings(BaseSettings):
    """
    Search budgets, annealing schedule and runtime options.

    Values come from config/settings.yaml and from explicit keyword arguments
    (CLI flags). The environment is not a source.
    """

    # Bistellar reduction
    flip_budget: int = Field(100_000, ge=1, description="Accepted flips per reduction run")
    reduce_max_proposals: int = Field(2_000_000, ge=1)
    anneal_t0: float = Field(1.0, gt=0.0)
    anneal_cooling: float = Field(0.99, gt=0.0, lt=1.0)
    anneal_t_min: float = Field(0.02, gt=0.0)
    anneal_stall: int = Field(400, ge=1, description="Proposals without progress before reheating")
    subdivision_moves: bool = False
    checkpoint_every: int = Field(500, ge=1)
    seeds: List[int] = Field(default_factory=lambda: [1, 2, 3])

    # Collapses and searches
    collapse_backtrack_depth: int = Field(0, ge=0)
    collapse_step_limit: int = Field(100_000, ge=1)
    shelling_budget: int = Field(200_000, ge=1)
    constructible_budget: int = Field(20_000, ge=1)

    # Knot certificates
    hom_generator_cap: int = Field(8, ge=1)
    tietze_max_relator_length: int = Field(60, ge=2)
    knot_groups: List[str] = Field(default_factory=lambda: ["S3", "A4", "D4"])

    # Runtime
    jobs: int = Field(1, ge=1)
    log_level: str = "WARNING"
    log_json: bool = True

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)

    @classmethod
    def from_yaml(cls, path: Optional[Path] = None, **overrides: Any) -> "Settings":
        """Build settings from a YAML file, letting explicit overrides win."""
        values = _read_yaml(path or CONFIG_DIR / "settings.yaml")
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_overrides(self, **overrides: Any) -> "Settings":
        values = self.model_dump()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return type(self)(**values)


class CatalogRegistry:
    """Catalog registry: names, descriptions and documented expectations."""

    def __init__(self, config_path: Optional[Path] = None):
        self.config_path = Path(config_path or CONFIG_DIR / "catalog.yaml")
        self.entries: Dict[str, Dict[str, Any]] = {}
        self._load_config()

    def _load_config(self):
        """Load catalog entries from YAML file."""
        config = _read_yaml(self.config_path)
        self.entries = config.get("entries", {})
        for name, entry in self.entries.items():
            if "kind" not in entry:
                raise ValueError(f"Catalog entry {name} has no kind")

    def get_entry(self, name: str) -> Dict[str, Any]:
        entry = self.entries.get(name)
        if entry is None:
            raise UnknownName(
                f"Unknown catalog entry: {name}. Available: {', '.join(self.entries)}"
            )
        return entry

    def list_names(self) -> List[str]:
        return list(self.entries)

    def is_valid_name(self, name: str) -> bool:
        return name in self.entries

    def expected(self, name: str, key: str, default: Any = None) -> Any:
        """Documented expectation (facets, vertices, f_vector) of an entry."""
        return self.get_entry(name).get("expect", {}).get(key, default)


# Global instances
settings = Settings.from_yaml()
catalog_registry = CatalogRegistry()


def apply_overrides(**overrides: Any) -> Settings:
    """Validate overrides and apply them to the shared settings instance."""
    updated = settings.with_overrides(**overrides)
    for name in Settings.model_fields:
        setattr(settings, name, getattr(updated, name))
    return settings
